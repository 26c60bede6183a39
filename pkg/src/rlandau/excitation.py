"""Laser and microwave excitation: beam fields, two-photon Rabi frequencies,
intermediate-state scattering, and the sigma-driven M ladder."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field as dc_field

import numpy as np
from scipy.constants import c as SPEED_OF_LIGHT

from .axial import DEFAULT_GRID, EXACT, AxialGridSpec, RLQuantumNumbers, total_energy
from .constants import BOHR_M, E_CHARGE, FREE_SPACE_IMPEDANCE, HBAR
from .errors import AdiabaticityWarning, LadderTruncationError, ResonantIntermediateError
from .landau import POLARIZATIONS, SIGMA_PLUS, FieldConfig

ADIABATIC_RATIO = 0.3
TRUNCATION_TOL = 1e-12
STEPS_PER_PERIOD = 50
MAX_LADDER = 4096
MIN_WAVELENGTH_M = 0.04  # the ladder drive is a millimetre wave of at least 40 mm


@dataclass(frozen=True)
class BeamSpec:
    """Gaussian beam: power in W, waist radius in m, polarization, wavelength in m."""

    power: float
    waist: float
    polarization: str = SIGMA_PLUS
    wavelength: float = 1.0e-6

    def __post_init__(self):
        if not self.power >= 0:
            raise ValueError(f"beam power must be >= 0, got {self.power}")
        if not self.waist > 0:
            raise ValueError(f"beam waist must be > 0, got {self.waist}")
        if self.polarization not in POLARIZATIONS:
            raise ValueError(f"unknown polarization {self.polarization!r}")


def beam_field(beam: BeamSpec, impedance: float = FREE_SPACE_IMPEDANCE) -> float:
    """Peak field E0 in V/m from P = (E0^2 / 2 eta) (pi w^2 / 2)."""
    return math.sqrt(4.0 * impedance * beam.power / (math.pi * beam.waist**2))


def rabi_frequency(e_field: float, dipole_a0: float) -> float:
    """Single-photon Rabi frequency |e| E d / hbar in rad/s for a dipole in a0."""
    return E_CHARGE * e_field * dipole_a0 * BOHR_M / HBAR


def effective_rabi(omega1: float, omega2: float, delta: float) -> float:
    """Two-photon Rabi frequency Omega1 Omega2 / (2 Delta) in rad/s.

    Warns with ``AdiabaticityWarning`` when |Omega1/Delta| or |Omega2/Delta|
    exceeds 0.3, where adiabatic elimination of the intermediate state fails.
    """
    if delta == 0:
        raise ResonantIntermediateError("the intermediate-state detuning must be nonzero")
    if max(abs(omega1), abs(omega2)) > ADIABATIC_RATIO * abs(delta):
        warnings.warn(f"|Omega/Delta| exceeds {ADIABATIC_RATIO}: the intermediate state is "
                      "not adiabatically eliminated", AdiabaticityWarning, stacklevel=2)
    return omega1 * omega2 / (2.0 * delta)


def scattering_probability(omega1: float, omega2: float, delta: float, tau_p: float) -> float:
    """Intermediate-state emission probability during a two-photon pi pulse.

    P = pi / (4 |Delta| tau_p) (q + 1/q) with q = |Omega1 / Omega2|.
    """
    if delta == 0:
        raise ResonantIntermediateError("the intermediate-state detuning must be nonzero")
    if not tau_p > 0:
        raise ValueError("the intermediate lifetime must be positive")
    q = abs(omega1 / omega2)
    return math.pi / (4.0 * abs(delta) * tau_p) * (q + 1.0 / q)


# ---------------------------------------------------------------- M ladder


@dataclass
class LadderAmplitudes:
    """Amplitudes c_M, M = 0..M_max, after evolving for ``time`` seconds."""

    time: float
    amplitudes: np.ndarray
    steps: int = 0
    meta: dict = dc_field(default_factory=dict)

    @property
    def M_max(self) -> int:
        return len(self.amplitudes) - 1

    @property
    def populations(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    @property
    def norm_error(self) -> float:
        return abs(float(np.sum(self.populations)) - 1.0)


def coherent_populations(omega_t: float, M_max: int) -> np.ndarray:
    """Poissonian weights exp(-x^2) x^(2M) / M! with x = Omega t."""
    M = np.arange(M_max + 1)
    x2 = omega_t * omega_t
    if x2 == 0:
        return (M == 0).astype(float)
    logp = -x2 + M * math.log(x2) - np.array([math.lgamma(m + 1) for m in M])
    return np.exp(logp)


def coherent_amplitudes(omega_t: float, M_max: int) -> np.ndarray:
    """Amplitudes (-i x)^M / sqrt(M! exp(x^2)) of the resonantly driven ladder."""
    M = np.arange(M_max + 1)
    return np.sqrt(coherent_populations(omega_t, M_max)) * (-1j) ** M


def _apply(c, coup, det, sign):
    # -i H c with H tridiagonal: H[M+1, M] = H[M, M+1] = sign * coup[M], H[M, M] = det[M]
    hc = det * c
    hc[1:] += sign * coup * c[:-1]
    hc[:-1] += sign * coup * c[1:]
    return -1j * hc


def _rk4(c, coup, det, sign, t, omega_max):
    if t == 0:
        return c, 0
    n = max(1, math.ceil(abs(t) * STEPS_PER_PERIOD * omega_max))
    h = t / n
    for _ in range(n):
        k1 = _apply(c, coup, det, sign)
        k2 = _apply(c + 0.5 * h * k1, coup, det, sign)
        k3 = _apply(c + 0.5 * h * k2, coup, det, sign)
        k4 = _apply(c + h * k3, coup, det, sign)
        c = c + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
    return c, n


def _initial_size(omega_t: float) -> int:
    return max(8, math.ceil(omega_t**2 + 12 * omega_t + 12))


def ladder_evolve(omega: float, t: float, detunings=None, M_max: int | None = None,
                  initial: LadderAmplitudes | np.ndarray | None = None,
                  reverse: bool = False, auto_extend: bool = True) -> LadderAmplitudes:
    """Propagate the sigma-driven M ladder within N_l = 0.

    Parameters
    ----------
    omega : float
        Ladder Rabi frequency in rad/s; the coupling M <-> M+1 is omega sqrt(M+1).
    t : float
        Duration in seconds.
    detunings : array_like or callable, optional
        Rotating-frame detuning of level M in rad/s, as an array indexed by M
        or a function of an integer array.  Zero when omitted.
    M_max : int, optional
        Highest level kept; chosen from omega t when omitted.
    initial : LadderAmplitudes or array, optional
        Starting amplitudes; |M = 0> when omitted.
    reverse : bool
        Drive with the opposite circular polarization, which enters the ladder
        Hamiltonian as a pi phase on every coupling.
    auto_extend : bool
        Double M_max until the top population stays below 1e-12.

    Returns
    -------
    LadderAmplitudes

    Notes
    -----
    Fixed-step fourth-order Runge-Kutta with step at most 1/(50 W), where W is
    the largest coupling or detuning.  The state is never renormalized; the
    residual norm error is available as ``norm_error``.
    """
    if t < 0:
        raise ValueError("evolution time must be >= 0")
    c0 = initial.amplitudes if isinstance(initial, LadderAmplitudes) else initial
    t0 = initial.time if isinstance(initial, LadderAmplitudes) else 0.0
    n0 = 0 if c0 is None else len(c0) - 1
    size = M_max if M_max is not None else max(_initial_size(abs(omega) * t), 2 * n0)
    size = max(size, n0, 1)
    while True:
        c = np.zeros(size + 1, dtype=complex)
        if c0 is None:
            c[0] = 1.0
        else:
            c[: len(c0)] = c0
        M = np.arange(size + 1)
        if detunings is None:
            det = np.zeros(size + 1)
        elif callable(detunings):
            det = np.asarray(detunings(M), dtype=float)
        else:
            d = np.asarray(detunings, dtype=float)
            if len(d) < size + 1:
                raise LadderTruncationError(
                    f"detunings cover M <= {len(d) - 1} but the ladder needs M <= {size}")
            det = d[: size + 1]
        coup = omega * np.sqrt(M[1:].astype(float))
        w_max = max(abs(omega) * math.sqrt(size), float(np.max(np.abs(det))), 1e-300)
        sign = -1.0 if reverse else 1.0
        out, steps = _rk4(c, coup, det, sign, t, w_max)
        top = abs(out[-1]) ** 2
        if top < TRUNCATION_TOL:
            return LadderAmplitudes(t0 + t, out, steps,
                                    {"omega": omega, "reverse": reverse, "M_max": size})
        if not auto_extend or 2 * size > MAX_LADDER:
            raise LadderTruncationError(
                f"population {top:.3g} reaches the ladder top M = {size}")
        size *= 2


def ladder_detunings(N_z: int, drive_ghz: float, M_max: int,
                     field: FieldConfig = FieldConfig(), P: int = 0, mode: str = EXACT,
                     grid: AxialGridSpec = DEFAULT_GRID) -> np.ndarray:
    """Rotating-frame detunings 2 pi (E_M - E_0 - M f_drive) in rad/s for |N_z, P, 0, M>."""
    e0 = total_energy(RLQuantumNumbers(N_z, P, 0, 0), field, mode, grid=grid)
    out = np.zeros(M_max + 1)
    for m in range(1, M_max + 1):
        e = total_energy(RLQuantumNumbers(N_z, P, 0, m), field, mode, grid=grid)
        out[m] = 2.0 * math.pi * 1e9 * (e - e0 - m * drive_ghz)
    return out


def drive_wavelength(drive_ghz: float) -> float:
    """Free-space wavelength in m of a drive at ``drive_ghz``."""
    return SPEED_OF_LIGHT / (drive_ghz * 1e9)


def fidelity(a: np.ndarray, b: np.ndarray) -> float:
    """|<a|b>|^2 for amplitude vectors padded to a common length."""
    n = max(len(a), len(b))
    pa = np.zeros(n, dtype=complex)
    pb = np.zeros(n, dtype=complex)
    pa[: len(a)] = a
    pb[: len(b)] = b
    return float(abs(np.vdot(pa, pb)) ** 2)
