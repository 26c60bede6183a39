"""Spontaneous decay, blackbody-induced transitions and lifetimes of rLandau states."""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

from .axial import (
    DEFAULT_GRID,
    EXACT,
    AxialGridSpec,
    RLQuantumNumbers,
    label_offset,
    solve_axial,
    total_energy_from,
)
from .constants import AU_TIME_S, C_AU, HARTREE_GHZ, HBAR, K_B
from .dipoles import DipoleElement, HydLabel, dipole_rl_to_rl, hyd_orbital_element
from .errors import NoEigenvalueFound, NotAnEmissionError
from .hydrogenic import DefectTable, radial_solve
from .landau import PI, SIGMA_MINUS, SIGMA_PLUS, FieldConfig

SPONTANEOUS = "spontaneous"
BBR = "BBR"

COULOMB_LINEAR = "hydrogenic-linear"
COULOMB_CIRCULAR = "hydrogenic-circular"
LANDAU_LINEAR = "landau-linear"
LANDAU_CIRCULAR = "landau-circular"


def einstein_A(dipole: DipoleElement | float, omega: float) -> float:
    """Spontaneous emission rate (4/3) (omega/c)^3 |r|^2 e^2/hbar in s^-1.

    Parameters
    ----------
    dipole : DipoleElement or float
        Transition dipole; a float is taken as |r| in a0.
    omega : float
        Transition angular frequency in rad/s.
    """
    if not omega > 0:
        raise NotAnEmissionError(f"emission needs omega > 0, got {omega}")
    r = dipole.spherical if isinstance(dipole, DipoleElement) else float(dipole)
    w = omega * AU_TIME_S
    return 4.0 / 3.0 * w**3 * r * r / C_AU**3 / AU_TIME_S


def thermal_occupation(omega: float, T: float) -> float:
    """Bose-Einstein occupation of a mode at angular frequency omega (rad/s)."""
    if T <= 0:
        return 0.0
    return 1.0 / math.expm1(HBAR * abs(omega) / (K_B * T))


@dataclass(frozen=True)
class DecayChannel:
    final: str
    omega: float  # rad/s, positive for emission
    dipole: DipoleElement
    rate: float  # Einstein A at |omega|
    mechanism: str
    family: str


@dataclass
class LifetimeBudget:
    state: RLQuantumNumbers
    gamma0_C: float
    gamma0_L: float
    gamma_bbr: dict = dc_field(default_factory=dict)  # T -> rate
    channels: list = dc_field(default_factory=list, repr=False)

    @property
    def gamma0(self) -> float:
        return self.gamma0_C + self.gamma0_L

    def tau(self, T: float) -> float:
        total = self.gamma0 + self.gamma_bbr.get(T, 0.0)
        return math.inf if total == 0 else 1.0 / total


@dataclass(frozen=True)
class DecaySettings:
    """Channel enumeration settings.

    Attributes
    ----------
    coulomb_n_max : int
        Largest principal quantum number of zero-field decay targets.
    max_l : int
        Largest orbital angular momentum of zero-field targets.
    bbr_window : int
        Initial |dN_z| window of the blackbody pi sum.
    bbr_rtol : float
        Window doubling stops once the last increment is below this fraction.
    bbr_window_max : int
    """

    coulomb_n_max: int = 40
    max_l: int = 3
    bbr_window: int = 40
    bbr_rtol: float = 1e-3
    bbr_window_max: int = 160


class _Context:
    def __init__(self, field, mode, grid, defects, settings):
        self.field, self.mode, self.grid = field, mode, grid
        self.defects, self.settings = defects, settings

    def solve(self, qn):
        return solve_axial(qn, self.field, self.mode, grid=self.grid, require_bound=False)

    def energy_ghz(self, qn) -> float:
        return total_energy_from(self.solve(qn), self.field)


def _omega(e_from_ghz: float, e_to_ghz: float) -> float:
    return 2.0 * math.pi * (e_from_ghz - e_to_ghz) * 1e9


def _coulomb_channels(ctx: _Context, state: RLQuantumNumbers, e_i: float) -> list[DecayChannel]:
    out = []
    for l in range(ctx.settings.max_l + 1):
        if (state.P + state.M + l) % 2 == 0:
            continue
        ms = [m for m in (state.M - 1, state.M, state.M + 1) if abs(m) <= l]
        if not ms:
            continue
        for n in ctx.defects.series(l, ctx.settings.coulomb_n_max):
            if n <= l:
                continue
            e_f = ctx.defects.energy(n, l) * HARTREE_GHZ
            if e_f >= e_i:
                continue
            hs = radial_solve(n, l, ctx.defects.defect(n, l))
            omega = _omega(e_i, e_f)
            for m in ms:
                q = {0: PI, 1: SIGMA_PLUS, -1: SIGMA_MINUS}[state.M - m]
                val = hyd_orbital_element(hs, m, state, q, ctx.field, ctx.mode, ctx.grid)
                dip = DipoleElement(str(state), str(HydLabel(n, l, m)), q, val)
                family = COULOMB_LINEAR if q == PI else COULOMB_CIRCULAR
                out.append(DecayChannel(str(HydLabel(n, l, m)), omega, dip,
                                        einstein_A(dip, omega), SPONTANEOUS, family))
    return out


def _pi_partners(ctx: _Context, state: RLQuantumNumbers, lo: int, hi: int):
    """Opposite-parity states of the same (N_l, M) with labels in [lo, hi]."""
    P = 1 - state.P
    first = label_offset(P, state.N_l, state.M, ctx.field, ctx.mode, None, ctx.grid).offset
    for nz in range(max(lo, first), hi + 1):
        yield RLQuantumNumbers(nz, P, state.N_l, state.M)


def _sigma_partners(state: RLQuantumNumbers):
    """Same-label (N_z, P) partners reachable by sigma transitions."""
    cands = [(SIGMA_PLUS, state.N_l, state.M + 1), (SIGMA_PLUS, state.N_l - 1, state.M + 1),
             (SIGMA_MINUS, state.N_l, state.M - 1), (SIGMA_MINUS, state.N_l + 1, state.M - 1)]
    for q, nl, m in cands:
        if nl < 0 or m < -nl:
            continue
        yield q, RLQuantumNumbers(state.N_z, state.P, nl, m)


def _rl_channel(ctx, state, e_i, target, q, mechanism) -> DecayChannel | None:
    try:
        e_f = ctx.energy_ghz(target)
    except NoEigenvalueFound:
        return None
    if e_f >= 0:
        return None  # continuum of the zero-field threshold: out of scope
    omega = _omega(e_i, e_f)
    if omega == 0:
        return None
    # the operator that takes the target back to the state, i.e. the emission element
    dip = dipole_rl_to_rl(target, state, q, ctx.field, ctx.mode, ctx.grid)
    rate = einstein_A(dip, abs(omega))
    family = LANDAU_LINEAR if q == PI else LANDAU_CIRCULAR
    return DecayChannel(str(target), omega, dip, rate, mechanism, family)


def _landau_channels(ctx: _Context, state: RLQuantumNumbers, e_i: float) -> list[DecayChannel]:
    out = []
    for target in _pi_partners(ctx, state, 0, state.N_z + 2):
        ch = _rl_channel(ctx, state, e_i, target, PI, SPONTANEOUS)
        if ch is not None and ch.omega > 0:
            out.append(ch)
    # Landau-lowering sigma+: (N_l, M) -> (N_l - 1, M + 1) at fixed (N_z, P)
    if state.N_l >= 1:
        target = RLQuantumNumbers(state.N_z, state.P, state.N_l - 1, state.M + 1)
        q = SIGMA_MINUS  # <state| x - iy |target> pairs with the sigma+ emission element
        ch = _rl_channel(ctx, state, e_i, target, q, SPONTANEOUS)
        if ch is not None and ch.omega > 0:
            out.append(ch)
    return out


def spontaneous_budget(state: RLQuantumNumbers, field: FieldConfig = FieldConfig(),
                       defects: DefectTable | None = None, mode: str = EXACT,
                       grid: AxialGridSpec = DEFAULT_GRID,
                       settings: DecaySettings = DecaySettings()):
    """Total spontaneous rates to zero-field (Coulombic) and rLandau targets.

    Returns
    -------
    (gamma0_C, gamma0_L, channels)
        Rates in s^-1 and the list of contributing ``DecayChannel`` records,
        sorted by final-state label.
    """
    ctx = _Context(field, mode, grid, defects, settings)
    sol = solve_axial(state, field, mode, grid=grid)
    e_i = total_energy_from(sol, field)
    chans = []
    if defects is not None:
        chans += _coulomb_channels(ctx, state, e_i)
    chans += _landau_channels(ctx, state, e_i)
    chans.sort(key=lambda c: (c.family, c.final))
    g_c = math.fsum(c.rate for c in chans if c.family.startswith("hydrogenic"))
    g_l = math.fsum(c.rate for c in chans if c.family.startswith("landau"))
    return g_c, g_l, chans


def bbr_channels(state: RLQuantumNumbers, field: FieldConfig = FieldConfig(), mode: str = EXACT,
                 grid: AxialGridSpec = DEFAULT_GRID, window: int = 40) -> list[DecayChannel]:
    """Dipole-coupled rLandau neighbours of both energy signs within |dN_z| <= window."""
    ctx = _Context(field, mode, grid, None, DecaySettings())
    e_i = ctx.energy_ghz(state)
    out = []
    for target in _pi_partners(ctx, state, state.N_z - window, state.N_z + window):
        ch = _rl_channel(ctx, state, e_i, target, PI, BBR)
        if ch is not None:
            out.append(ch)
    for q, target in _sigma_partners(state):
        # element <state| op |target>: the polarization that maps target onto state
        back = SIGMA_MINUS if q == SIGMA_PLUS else SIGMA_PLUS
        ch = _rl_channel(ctx, state, e_i, target, back, BBR)
        if ch is not None:
            out.append(ch)
    out.sort(key=lambda c: c.final)
    return out


def _bbr_sum(chans, T) -> float:
    return math.fsum(c.rate * thermal_occupation(c.omega, T) for c in chans)


def bbr_rate(state: RLQuantumNumbers, field: FieldConfig = FieldConfig(), T: float = 300.0,
             mode: str = EXACT, grid: AxialGridSpec = DEFAULT_GRID,
             settings: DecaySettings = DecaySettings()) -> float:
    """Blackbody-induced depopulation rate sum_f A(|omega|) nbar(|omega|, T) in s^-1.

    The |dN_z| window starts at ``settings.bbr_window`` and doubles until the
    last increment changes the rate by less than ``settings.bbr_rtol``.
    """
    if T < 0:
        raise ValueError("temperature must be >= 0")
    if T == 0:
        return 0.0
    w = settings.bbr_window
    rate = _bbr_sum(bbr_channels(state, field, mode, grid, w), T)
    while w < settings.bbr_window_max:
        w *= 2
        new = _bbr_sum(bbr_channels(state, field, mode, grid, w), T)
        if abs(new - rate) <= settings.bbr_rtol * max(new, 1e-300):
            return new
        rate = new
    return rate


def lifetime_budget(state: RLQuantumNumbers, field: FieldConfig = FieldConfig(),
                    temperatures=(300.0, 70.0, 2.0), defects: DefectTable | None = None,
                    mode: str = EXACT, grid: AxialGridSpec = DEFAULT_GRID,
                    settings: DecaySettings = DecaySettings()) -> LifetimeBudget:
    g_c, g_l, chans = spontaneous_budget(state, field, defects, mode, grid, settings)
    bbr = {T: bbr_rate(state, field, T, mode, grid, settings) for T in temperatures}
    return LifetimeBudget(state, g_c, g_l, bbr, chans)


def lifetime(state: RLQuantumNumbers, field: FieldConfig = FieldConfig(), T: float = 300.0,
             defects: DefectTable | None = None, mode: str = EXACT,
             grid: AxialGridSpec = DEFAULT_GRID, settings: DecaySettings = DecaySettings()) -> float:
    """1 / (Gamma0_C + Gamma0_L + Gamma_BBR(T)) in seconds; ``inf`` for a zero total rate."""
    return lifetime_budget(state, field, (T,), defects, mode, grid, settings).tau(T)
