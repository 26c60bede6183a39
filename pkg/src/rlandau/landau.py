"""Transverse Landau sector: field scales, Landau wavefunctions and sigma matrix elements."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.special import gammaln

from .constants import ALPHA, AU_TIME_S, HARTREE_GHZ, TESLA_PER_AU
from .errors import ConfigMismatchError, InvalidFieldError, InvalidQuantumNumberError
from .numerics import assoc_laguerre

SIGMA_PLUS = "sigma+"
SIGMA_MINUS = "sigma-"
PI = "pi"
POLARIZATIONS = (PI, SIGMA_PLUS, SIGMA_MINUS)


def _check_field(B: float) -> float:
    if not (isinstance(B, (int, float)) and math.isfinite(B) and B > 0):
        raise InvalidFieldError(f"magnetic field must be positive and finite, got {B!r}")
    return float(B)


def field_au(B: float) -> float:
    """Field strength in atomic units."""
    return _check_field(B) / TESLA_PER_AU


def cyclotron_radius(B: float) -> float:
    """Magnetic length sqrt(hbar/eB) in Bohr radii."""
    return 1.0 / math.sqrt(field_au(B))


def cyclotron_frequency(B: float) -> float:
    """omega_c / 2 pi in GHz."""
    return field_au(B) * HARTREE_GHZ


def landau_energy(N_l: int, B: float) -> float:
    """hbar omega_c (N_l + 1/2) in GHz."""
    if N_l < 0:
        raise InvalidQuantumNumberError(f"Landau index must be >= 0, got {N_l}")
    return cyclotron_frequency(B) * (N_l + 0.5)


@dataclass(frozen=True)
class FieldConfig:
    B: float = 2.5

    def __post_init__(self):
        _check_field(self.B)

    @property
    def B_au(self) -> float:
        return field_au(self.B)

    @property
    def rc(self) -> float:
        return cyclotron_radius(self.B)

    @property
    def omega_c(self) -> float:
        """Cyclotron angular frequency in rad/s."""
        return self.B_au / AU_TIME_S


@dataclass(frozen=True)
class TransverseState:
    """Landau-plane state Q_{N_l, M}."""

    N_l: int
    M: int
    field: FieldConfig = FieldConfig()

    def __post_init__(self):
        if self.N_l < 0:
            raise InvalidQuantumNumberError(f"N_l must be >= 0, got {self.N_l}")
        if self.M < -self.N_l:
            raise InvalidQuantumNumberError(f"M must be >= -N_l, got M={self.M}, N_l={self.N_l}")

    @property
    def radial_order(self) -> int:
        return self.N_l - (abs(self.M) - self.M) // 2

    @property
    def energy_ghz(self) -> float:
        return landau_energy(self.N_l, self.field.B)

    @cached_property
    def density_coefficients(self) -> np.ndarray:
        """Coefficients c_k with |Q|^2 2 pi rc^2 = exp(-u) sum_k c_k u^k, u = rho^2 / 2 rc^2.

        The density integrates to one against du.
        """
        n, a = self.radial_order, abs(self.M)
        # L_n^a(u) = sum_j b_j u^j
        j = np.arange(n + 1)
        logb = gammaln(n + a + 1) - gammaln(n - j + 1) - gammaln(a + j + 1) - gammaln(j + 1)
        b = np.exp(logb) * (-1.0) ** j
        sq = np.convolve(b, b)
        norm = math.exp(gammaln(n + 1) - gammaln(n + a + 1))
        c = np.zeros(2 * n + a + 1)
        c[a:] = norm * sq
        return c


def _phase(M: int) -> int:
    # makes the positive Laguerre-form prefactors agree with ladder-built states for M < 0
    return -1 if (M < 0 and (-M) % 2) else 1


def radial_profile(state: TransverseState, rho) -> np.ndarray:
    """Real radial factor g(rho) with Q = g(rho) exp(i M phi), including the phase sign."""
    rc = state.field.rc
    n, a = state.radial_order, abs(state.M)
    u = np.asarray(rho, dtype=float) ** 2 / (2 * rc * rc)
    lognorm = 0.5 * (gammaln(n + 1) - gammaln(n + a + 1)) - 0.5 * math.log(2 * math.pi) - math.log(rc)
    with np.errstate(divide="ignore"):
        logpow = np.where(u > 0, 0.5 * a * np.log(np.where(u > 0, u, 1.0)), 0.0 if a == 0 else -np.inf)
    g = np.exp(lognorm + logpow - 0.5 * u) * assoc_laguerre(n, a, u)
    return _phase(state.M) * g


def transverse_amplitude(state: TransverseState, rho, phi) -> np.ndarray:
    """Q_{N_l,M}(rho, phi) normalized to one over the plane."""
    rho = np.asarray(rho, dtype=float)
    if np.any(rho < 0):
        raise ValueError("rho must be non-negative")
    return radial_profile(state, rho) * np.exp(1j * state.M * np.asarray(phi, dtype=float))


def radial_node_count(state: TransverseState) -> int:
    return state.N_l - (abs(state.M) - state.M) // 2


def mean_rho_squared(state: TransverseState) -> float:
    return 2 * state.field.rc**2 * (2 * state.N_l + state.M + 1)


def sigma_matrix_element(frm: TransverseState, to: TransverseState, pol: str) -> float:
    """<to| x +/- i y |frm> in Bohr radii.

    With ``N_a = N_l`` and ``N_b = N_l + M``, x + iy = sqrt2 rc (b^dag - a) and
    x - iy = sqrt2 rc (b - a^dag).  Any other change of (N_l, M) gives zero.
    """
    if frm.field != to.field:
        raise ConfigMismatchError("transverse states belong to different field configurations")
    rc = frm.field.rc
    na, nb = frm.N_l, frm.N_l + frm.M
    dn, dm = to.N_l - frm.N_l, to.M - frm.M
    s2 = math.sqrt(2.0) * rc
    if pol == SIGMA_PLUS and dm == 1:
        if dn == 0:
            return s2 * math.sqrt(nb + 1)
        if dn == -1:
            return -s2 * math.sqrt(na)
    elif pol == SIGMA_MINUS and dm == -1:
        if dn == 0:
            return s2 * math.sqrt(nb)
        if dn == 1:
            return -s2 * math.sqrt(na + 1)
    elif pol not in (SIGMA_PLUS, SIGMA_MINUS):
        raise ValueError(f"unknown polarization {pol!r}")
    return 0.0


@dataclass(frozen=True)
class RegimeReport:
    n: int
    B: float
    diamagnetic_over_linear: float
    linear_over_coulomb: float
    diamagnetic_over_coulomb: float
    diamagnetic_over_soc: float
    n4B: float
    classification: str

    @property
    def diamagnetic_dominates_soc(self) -> bool:
        return self.diamagnetic_over_soc > 1.0


def regime_report(n: int, B: float) -> RegimeReport:
    """Order-of-magnitude ratios of the Coulomb, paramagnetic, diamagnetic and spin-orbit scales.

    Uses E_C ~ 1/n^2, E_lin ~ B/2, E_dia ~ B^2 n^4 / 8 and E_SOC ~ alpha^2 Ry / n^3
    (atomic units, orbital magnetic quantum number of order one).
    """
    if n < 1:
        raise InvalidQuantumNumberError("n must be >= 1")
    b = field_au(B)
    e_c = 1.0 / n**2
    e_lin = b / 2
    e_dia = b * b * n**4 / 8
    e_soc = ALPHA**2 * 0.5 / n**3
    lin_c, dia_c = e_lin / e_c, e_dia / e_c
    if max(lin_c, dia_c) < 0.1:
        label = "Coulomb-dominated"
    elif dia_c > 1.0:
        label = "diamagnetic-dominated"
    elif lin_c > 1.0:
        label = "paramagnetic-dominated"
    else:
        label = "mixed"
    return RegimeReport(n, B, e_dia / e_lin, lin_c, dia_c, e_dia / e_soc, n**4 * b, label)
