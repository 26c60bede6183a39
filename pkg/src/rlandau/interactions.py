"""Dipole-dipole interactions of rLandau atom pairs.

Conventions
-----------
* Single-atom dipoles are the ``DipoleElement.value`` of ``dipoles``: z for pi
  and x +/- iy for sigma.  C3 of a channel is the angular weight times the
  product of the two single-atom elements, converted to GHz um^3.
* The energy defect is delta = E_i + E_j - 2 E_chi in GHz and C6 = C3^2 / delta.
* Two-level shift: U = delta/2 - sign(delta) sqrt(delta^2/4 + C3^2/R^6).  Its
  large-R limit is -C6/R^6, its small-R limit -sign(delta)|C3|/R^3.
* A channel is one coupled pair for one polarization combination.  Swapping
  the two atoms of a pi-pi (or sigma+sigma+, sigma-sigma-) pair gives the same
  channel; sigma+sigma- and sigma-sigma+ are distinct channels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from itertools import product

import numpy as np

from .axial import (
    DEFAULT_GRID,
    EXACT,
    AxialGridSpec,
    RLQuantumNumbers,
    ground_state,
    label_offset,
    solve_axial,
    total_energy_from,
)
from .constants import C3_AU_TO_GHZ_UM3
from .dipoles import axial_overlap, dipole_rl_to_rl
from .errors import InvalidQuantumNumberError, InvalidSeparationError, NoEigenvalueFound
from .landau import PI, SIGMA_MINUS, SIGMA_PLUS, FieldConfig, TransverseState, sigma_matrix_element

PP = "pi-pi"
SPSP = "sigma+sigma+"
SMSM = "sigma-sigma-"
SPSM = "sigma+sigma-"
SMSP = "sigma-sigma+"
COMBO_OF = {
    (PI, PI): PP, (SIGMA_PLUS, SIGMA_PLUS): SPSP, (SIGMA_MINUS, SIGMA_MINUS): SMSM,
    (SIGMA_PLUS, SIGMA_MINUS): SPSM, (SIGMA_MINUS, SIGMA_PLUS): SMSP,
    (PI, SIGMA_PLUS): "pi-sigma+", (PI, SIGMA_MINUS): "pi-sigma-",
    (SIGMA_PLUS, PI): "sigma+-pi", (SIGMA_MINUS, PI): "sigma--pi",
}
_SYMMETRIC = (PP, SPSP, SMSM)

CIRCULAR_FIT = (0.55, 0.37, 0.28)  # GHz um^3: a M + b sqrt(M(M+1)) + c


def angular_weight(theta: float, combo: str) -> float:
    """Angular prefactor of a polarization combination at angle theta to the field.

    (1 - 3 cos^2) for pi-pi and sigma+-sigma-+, 3 sin cos for mixed pi/sigma,
    (3/2) sin^2 for sigma+sigma+ and sigma-sigma-.
    """
    c, s = math.cos(theta), math.sin(theta)
    if combo in (PP, SPSM, SMSP):
        return 1.0 - 3.0 * c * c
    if combo in (SPSP, SMSM):
        return 1.5 * s * s
    if combo in COMBO_OF.values():
        return 3.0 * s * c
    raise ValueError(f"unknown polarization combination {combo!r}")


@dataclass(frozen=True)
class PairChannel:
    """One dipole-coupled pair |i>|j> of the initial pair |a>|a>.

    ``c3`` is in GHz um^3, ``delta`` in GHz, ``c6`` in GHz um^6 and ``r_cr``
    in um.  Resonant channels have ``delta = 0`` and ``c6 = r_cr = None``.
    """

    chi: RLQuantumNumbers
    psi: tuple[RLQuantumNumbers, RLQuantumNumbers]
    combo: str
    d1: float
    d2: float
    weight: float
    c3: float
    delta: float
    c6: float | None
    r_cr: float | None

    @property
    def resonant(self) -> bool:
        return self.delta == 0.0

    @classmethod
    def build(cls, chi, psi, combo, d1, d2, weight, delta):
        c3 = weight * d1 * d2 * C3_AU_TO_GHZ_UM3
        if delta == 0.0:
            return cls(chi, psi, combo, d1, d2, weight, c3, 0.0, None, None)
        return cls(chi, psi, combo, d1, d2, weight, c3, delta, c3 * c3 / delta,
                   abs(c3 / delta) ** (1.0 / 3.0))


class _Solver:
    def __init__(self, field, mode, grid):
        self.field, self.mode, self.grid = field, mode, grid
        self._e = {}

    def energy(self, qn) -> float | None:
        if qn not in self._e:
            try:
                sol = solve_axial(qn, self.field, self.mode, grid=self.grid, require_bound=False)
                e = total_energy_from(sol, self.field)
                self._e[qn] = e if e < 0 else None
            except (NoEigenvalueFound, InvalidQuantumNumberError):
                self._e[qn] = None
        return self._e[qn]


def _single_targets(s: _Solver, a: RLQuantumNumbers, dnz_max: int):
    """(polarization, target, element <target| op |a>) for all dipole partners of a."""
    out = []
    P = 1 - a.P
    try:
        first = label_offset(P, a.N_l, a.M, s.field, s.mode, None, s.grid).offset
    except NoEigenvalueFound:
        first = None
    if first is not None:
        for nz in range(max(first, a.N_z - dnz_max), a.N_z + dnz_max + 1):
            t = RLQuantumNumbers(nz, P, a.N_l, a.M)
            if s.energy(t) is not None:
                out.append((PI, t, dipole_rl_to_rl(a, t, PI, s.field, s.mode, s.grid).value))
    for q, nl, m in ((SIGMA_PLUS, a.N_l, a.M + 1), (SIGMA_PLUS, a.N_l - 1, a.M + 1),
                     (SIGMA_MINUS, a.N_l, a.M - 1), (SIGMA_MINUS, a.N_l + 1, a.M - 1)):
        if nl < 0 or m < -nl:
            continue
        t = RLQuantumNumbers(a.N_z, a.P, nl, m)
        if s.energy(t) is None:
            continue
        val = dipole_rl_to_rl(a, t, q, s.field, s.mode, s.grid).value
        if val != 0.0:
            out.append((q, t, val))
    return out


def _landau_degenerate(a: RLQuantumNumbers, i: RLQuantumNumbers, j: RLQuantumNumbers) -> bool:
    return i.N_z == j.N_z == a.N_z and i.P == j.P == a.P and i.N_l + j.N_l == 2 * a.N_l


def enumerate_channels(chi: RLQuantumNumbers | tuple, field: FieldConfig = FieldConfig(),
                       max_defect: float = 20.0, theta: float = math.pi / 2,
                       dnz_max: int = 4, resonance: str = "landau", mode: str = EXACT,
                       grid: AxialGridSpec = DEFAULT_GRID) -> list[PairChannel]:
    """Dipole-coupled pair channels of the identical pair |a>|a>.

    Parameters
    ----------
    chi : RLQuantumNumbers or (RLQuantumNumbers, RLQuantumNumbers)
        The single-atom state, or the pair with both members equal.
    max_defect : float
        Largest |delta| in GHz kept in the list.
    theta : float
        Angle between the interatomic axis and the field.
    dnz_max : int
        Largest |dN_z| of pi partners.
    resonance : {"landau", "exact"}
        ``landau`` treats sigma-sigma channels that keep (N_z, P) and the
        total Landau index as exactly degenerate (delta = 0);
        ``exact`` uses the solved energies for every channel.

    Returns
    -------
    list of PairChannel
        Sorted by polarization combination and pair labels; channels whose
        angular weight vanishes are omitted.
    """
    if isinstance(chi, tuple):
        if chi[0] != chi[1]:
            raise ValueError("the initial pair must consist of identical states")
        chi = chi[0]
    if resonance not in ("landau", "exact"):
        raise ValueError(f"unknown resonance mode {resonance!r}")
    s = _Solver(field, mode, grid)
    e_a = s.energy(chi)
    if e_a is None:
        raise NoEigenvalueFound(f"{chi} is not a bound state")
    singles = _single_targets(s, chi, dnz_max)
    seen = set()
    out = []
    for (q1, i, d1), (q2, j, d2) in product(singles, singles):
        combo = COMBO_OF[(q1, q2)]
        w = angular_weight(theta, combo)
        if abs(w) < 1e-12:
            continue
        key = (combo, frozenset((i, j))) if combo in _SYMMETRIC else (combo, i, j)
        if key in seen:
            continue
        seen.add(key)
        if resonance == "landau" and q1 != PI and q2 != PI and _landau_degenerate(chi, i, j):
            delta = 0.0
        else:
            delta = s.energy(i) + s.energy(j) - 2.0 * e_a
        if abs(delta) > max_defect:
            continue
        if combo in _SYMMETRIC and (i.N_z, i.N_l, i.M) > (j.N_z, j.N_l, j.M):
            i, j, d1, d2 = j, i, d2, d1
        out.append(PairChannel.build(chi, (i, j), combo, d1, d2, w, delta))
    out.sort(key=lambda c: (c.combo, c.psi[0].N_z, c.psi[1].N_z, c.psi[0].M, c.psi[1].M,
                            c.psi[0].N_l, c.psi[1].N_l))
    return out


def forster_shift(channel: PairChannel, R: float, branch: str = "both"):
    """Two-level shift of the initial pair in GHz at separation R (um).

    For a resonant channel the eigenvalues are -|C3|/R^3 and +|C3|/R^3;
    ``branch`` selects ``attractive``, ``repulsive`` or ``both`` (a tuple).
    """
    if not (R > 0 and math.isfinite(R)):
        raise InvalidSeparationError(f"separation must be positive, got {R}")
    v = channel.c3 / R**3
    if channel.delta == 0.0:
        lo, hi = -abs(v), abs(v)
        return {"attractive": lo, "repulsive": hi}.get(branch, (lo, hi))
    d = channel.delta
    return d / 2.0 - math.copysign(math.sqrt(d * d / 4.0 + v * v), d)


def piecewise_shift(channel: PairChannel, R: float) -> float:
    """Asymptotic form of the two-level shift, switching at R_cr."""
    if not (R > 0 and math.isfinite(R)):
        raise InvalidSeparationError(f"separation must be positive, got {R}")
    if channel.delta == 0.0:
        raise ValueError("resonant channels have no crossover distance")
    if R < channel.r_cr:
        return -math.copysign(abs(channel.c3), channel.delta) / R**3
    return -channel.c6 / R**6


@dataclass
class ShiftResult:
    """Total shift of an identical pair at one separation.

    ``off_resonant`` is the piecewise sum over non-degenerate channels and
    ``off_resonant_exact`` the sum of the full two-level expressions (GHz).
    ``resonant_c3`` sums C3 over degenerate channels (GHz um^3); ``resonant``
    holds the (attractive, repulsive) shifts -/+ |resonant_c3| / R^3.
    """

    R: float
    theta: float
    off_resonant: float
    off_resonant_exact: float
    resonant_c3: float
    channels: list = dc_field(default_factory=list, repr=False)

    @property
    def resonant(self) -> tuple[float, float]:
        v = abs(self.resonant_c3) / self.R**3
        return -v, v

    def total(self, branch: str = "attractive") -> float:
        lo, hi = self.resonant
        return self.off_resonant + (lo if branch == "attractive" else hi)


def total_shift(chi, field: FieldConfig = FieldConfig(), R: float = 2.0,
                theta: float = math.pi / 2, channels: list[PairChannel] | None = None,
                **enumerate_kw) -> ShiftResult:
    """Sum of channel shifts of |a>|a> at separation R (um)."""
    if not (R > 0 and math.isfinite(R)):
        raise InvalidSeparationError(f"separation must be positive, got {R}")
    if channels is None:
        channels = enumerate_channels(chi, field, theta=theta, **enumerate_kw)
    off = [c for c in channels if not c.resonant]
    res = [c for c in channels if c.resonant]
    return ShiftResult(
        R, theta,
        math.fsum(piecewise_shift(c, R) for c in off),
        math.fsum(forster_shift(c, R) for c in off),
        math.fsum(c.c3 for c in res),
        channels,
    )


# ---------------------------------------------------------------- circular states


@dataclass(frozen=True)
class CircularC3:
    M: int
    computed: float  # GHz um^3
    fit: float  # GHz um^3
    channels: tuple = ()


def circular_fit(M: int) -> float:
    """Empirical C3(M) = 0.55 M + 0.37 sqrt(M(M+1)) + 0.28 in GHz um^3."""
    a, b, c = CIRCULAR_FIT
    return a * M + b * math.sqrt(M * (M + 1)) + c


def _ground_dipole(a, b, q, field, mode, grid) -> float:
    coef = sigma_matrix_element(TransverseState(a.N_l, a.M, field),
                                TransverseState(b.N_l, b.M, field), q)
    if coef == 0.0:
        return 0.0
    sa = solve_axial(a, field, mode, grid=grid)
    sb = solve_axial(b, field, mode, grid=grid)
    return coef * axial_overlap(sb, sa)


def circular_c3(M: int, field: FieldConfig = FieldConfig(), theta: float = math.pi / 2,
                mode: str = EXACT, grid: AxialGridSpec = DEFAULT_GRID) -> CircularC3:
    """Resonant C3 of the pair of axial ground states of (N_l = 0, M).

    The partners are the axial ground states of (0, M + 1) and (0, M - 1),
    reached by sigma+ and sigma-; the channels sigma+sigma+, sigma-sigma-,
    sigma+sigma- and sigma-sigma+ keep the total Landau index and M and are
    summed.
    """
    if M < 0:
        raise InvalidQuantumNumberError(f"M must be >= 0, got {M}")
    a = ground_state(0, M, field, mode)
    up = ground_state(0, M + 1, field, mode)
    d_up = _ground_dipole(a, up, SIGMA_PLUS, field, mode, grid)
    if M >= 1:
        dn = ground_state(0, M - 1, field, mode)
        d_dn = _ground_dipole(a, dn, SIGMA_MINUS, field, mode, grid)
    else:
        dn, d_dn = None, 0.0
    chans = [PairChannel.build(a, (up, up), SPSP, d_up, d_up, angular_weight(theta, SPSP), 0.0)]
    if dn is not None:
        chans += [
            PairChannel.build(a, (dn, dn), SMSM, d_dn, d_dn, angular_weight(theta, SMSM), 0.0),
            PairChannel.build(a, (up, dn), SPSM, d_up, d_dn, angular_weight(theta, SPSM), 0.0),
            PairChannel.build(a, (dn, up), SMSP, d_dn, d_up, angular_weight(theta, SMSP), 0.0),
        ]
    return CircularC3(M, math.fsum(c.c3 for c in chans), circular_fit(M), tuple(chans))


# ---------------------------------------------------------------- scaling


@dataclass(frozen=True)
class ScalingResult:
    quantity: str
    exponent: float
    N_z: tuple
    values: tuple


def dominant_pi_channel(chi: RLQuantumNumbers, field: FieldConfig = FieldConfig(),
                        mode: str = EXACT, grid: AxialGridSpec = DEFAULT_GRID,
                        dnz_max: int = 2) -> PairChannel:
    """The off-resonant pi-pi channel with the largest |C6|."""
    chans = [c for c in enumerate_channels(chi, field, max_defect=math.inf, dnz_max=dnz_max,
                                           mode=mode, grid=grid)
             if c.combo == PP and not c.resonant]
    if not chans:
        raise NoEigenvalueFound(f"no pi-pi channel for {chi}")
    return max(chans, key=lambda c: abs(c.c6))


def scaling_probe(quantity: str, N_z: range | list, field: FieldConfig = FieldConfig(),
                  N_l: int = 0, M: int = 0, P: int = 0, mode: str = EXACT,
                  grid: AxialGridSpec = DEFAULT_GRID) -> ScalingResult:
    """Log-log slope of a property of the dominant pi-pi channel against N_z.

    ``pi_dipole`` is the larger single-atom |z| element of the channel,
    ``defect`` its |delta| and ``c6`` its |C6|.
    """
    if quantity not in ("pi_dipole", "defect", "c6"):
        raise ValueError(f"unknown quantity {quantity!r}")
    nz = sorted(N_z)
    if len(nz) < 2 or nz[-1] < 2 * nz[0]:
        raise ValueError("the N_z range must span at least a factor of 2")
    vals = []
    for n in nz:
        ch = dominant_pi_channel(RLQuantumNumbers(n, P, N_l, M), field, mode, grid)
        vals.append({"pi_dipole": max(abs(ch.d1), abs(ch.d2)), "defect": abs(ch.delta),
                     "c6": abs(ch.c6)}[quantity])
    slope = np.polyfit(np.log(nz), np.log(vals), 1)[0]
    return ScalingResult(quantity, float(slope), tuple(nz), tuple(vals))
