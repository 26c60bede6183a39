"""Rydberg-Landau states of hydrogen-like atoms in strong magnetic fields."""

__version__ = "0.1.0"
