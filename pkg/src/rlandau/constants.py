"""Unit conversions between Hartree atomic units and laboratory units."""

from scipy import constants as _c

_pc = _c.physical_constants

HARTREE_J = _pc["Hartree energy"][0]
HARTREE_GHZ = HARTREE_J / _c.h / 1e9
RYDBERG_HARTREE = 0.5
BOHR_M = _pc["Bohr radius"][0]
BOHR_UM = BOHR_M * 1e6
TESLA_PER_AU = _pc["atomic unit of mag. flux density"][0]
AU_TIME_S = _pc["atomic unit of time"][0]
ALPHA = _c.fine_structure
C_AU = 1.0 / ALPHA
E_CHARGE = _c.e
HBAR = _c.hbar
K_B = _c.k
FREE_SPACE_IMPEDANCE = _pc["characteristic impedance of vacuum"][0]

# C3 in Hartree * a0^3 -> GHz * um^3
C3_AU_TO_GHZ_UM3 = HARTREE_GHZ * BOHR_UM**3


def hartree_to_ghz(energy):
    return energy * HARTREE_GHZ


def ghz_to_hartree(freq):
    return freq / HARTREE_GHZ


def hartree_to_rad_s(energy):
    """Angular frequency of a photon carrying ``energy`` Hartree."""
    return energy / AU_TIME_S
