"""Selection rules and dipole matrix elements involving rLandau states.

Operator convention: for sigma polarizations ``value`` is the matrix element of
x + iy (sigma+) or x - iy (sigma-), the same operators whose coefficients
appear in the Landau ladder relations; for pi it is the matrix element of z.
The spherical component r_q = (x +/- iy)/sqrt2 is available as
``DipoleElement.spherical``.  ``<to| op_q |from>`` is nonzero only when
``M_to = M_from + q``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.integrate import simpson
from scipy.special import sph_harm_y

from .axial import (
    DEFAULT_GRID,
    EXACT,
    AxialGridSpec,
    AxialSolution,
    RLQuantumNumbers,
    solve_axial,
)
from .errors import QuadratureError
from .hydrogenic import FineStructureState, HydrogenicState, radial_solve
from .landau import PI, SIGMA_MINUS, SIGMA_PLUS, FieldConfig, TransverseState, radial_profile, sigma_matrix_element

Q_OF = {PI: 0, SIGMA_PLUS: 1, SIGMA_MINUS: -1}
POL_OF = {0: PI, 1: SIGMA_PLUS, -1: SIGMA_MINUS}
REVERSED = {PI: PI, SIGMA_PLUS: SIGMA_MINUS, SIGMA_MINUS: SIGMA_PLUS}


@dataclass(frozen=True)
class HydLabel:
    n: int
    l: int
    m: int

    def __str__(self):
        return f"|n={self.n},l={self.l},m={self.m}>"


@dataclass(frozen=True)
class DipoleElement:
    frm: str
    to: str
    q: str
    value: float

    @property
    def spherical(self) -> float:
        """Spherical-basis component in a0 (x +/- iy carries an extra sqrt2)."""
        return self.value if self.q == PI else self.value / math.sqrt(2.0)


@dataclass(frozen=True)
class SelectionResult:
    allowed: bool
    reason: str = ""

    def __bool__(self):
        return self.allowed


def _hyd_label(s) -> HydLabel | None:
    if isinstance(s, HydLabel):
        return s
    if isinstance(s, HydrogenicState):
        return HydLabel(s.n, s.l, s.m_l)
    return None


def selection_check(frm, to, q: str) -> SelectionResult:
    """Classify ``<to| op_q |from>`` as allowed or forbidden.

    ``frm`` and ``to`` are ``RLQuantumNumbers``, ``HydLabel``, ``HydrogenicState``
    or ``FineStructureState``.  A fine-structure state is allowed when any of
    its orbital components is.
    """
    if q not in Q_OF:
        raise ValueError(f"unknown polarization {q!r}")
    dq = Q_OF[q]
    if isinstance(frm, FineStructureState) or isinstance(to, FineStructureState):
        fs, other, fs_first = (frm, to, True) if isinstance(frm, FineStructureState) else (to, frm, False)
        reasons = []
        for ml, _, _ in fs.components:
            lab = HydLabel(fs.n, fs.l, ml)
            res = selection_check(lab, other, q) if fs_first else selection_check(other, lab, q)
            if res:
                return res
            reasons.append(res.reason)
        return SelectionResult(False, "; ".join(dict.fromkeys(reasons)))

    a_rl, b_rl = isinstance(frm, RLQuantumNumbers), isinstance(to, RLQuantumNumbers)
    if a_rl and b_rl:
        return _rl_rl_rule(frm, to, q)
    if a_rl or b_rl:
        rl = frm if a_rl else to
        hyd = _hyd_label(to if a_rl else frm)
        if hyd is None:
            raise TypeError("unsupported state type")
        m_from = rl.M if a_rl else hyd.m
        m_to = hyd.m if a_rl else rl.M
        if m_to - m_from != dq:
            return SelectionResult(False, f"angular: M - m must equal q = {dq}")
        if (rl.P + rl.M + hyd.l) % 2 == 0:
            return SelectionResult(False, "parity: P + M + l must be odd")
        return SelectionResult(True)
    raise TypeError("hydrogenic-to-hydrogenic transitions are outside this module")


def _rl_rl_rule(frm: RLQuantumNumbers, to: RLQuantumNumbers, q: str) -> SelectionResult:
    dq = Q_OF[q]
    if to.M - frm.M != dq:
        return SelectionResult(False, f"angular: dM must equal q = {dq}")
    if q == PI:
        if to.N_l != frm.N_l:
            return SelectionResult(False, "pi: Landau index must not change")
        if to.P == frm.P:
            return SelectionResult(False, "pi: parity must change")
        return SelectionResult(True)
    if to.P != frm.P or to.N_z != frm.N_z:
        return SelectionResult(False, "sigma: (P, N_z) must not change")
    allowed_dn = (0, -1) if q == SIGMA_PLUS else (0, 1)
    if to.N_l - frm.N_l not in allowed_dn:
        return SelectionResult(False, f"sigma: dN_l must be in {allowed_dn}")
    return SelectionResult(True)


# ---------------------------------------------------------------- rLandau <-> rLandau


def axial_overlap(a: AxialSolution, b: AxialSolution, power: int = 0) -> float:
    """Full-line integral of f_a z^power f_b."""
    sign = (-1) ** (a.qn.P + b.qn.P + power)
    if sign < 0:
        return 0.0
    ref = a if a.z[-1] >= b.z[-1] else b
    other = b if ref is a else a
    x = ref.x
    z = ref.z
    integrand = ref.f * other(z) * z**power * 2.0 * x
    return 2.0 * simpson(integrand, dx=ref.grid.step)


def dipole_rl_to_rl(frm: RLQuantumNumbers, to: RLQuantumNumbers, q: str,
                   field: FieldConfig = FieldConfig(), mode: str = EXACT,
                   grid: AxialGridSpec = DEFAULT_GRID) -> DipoleElement:
    """Factorized element <to| op_q |from> = (axial integral) x (transverse coefficient)."""
    if q not in Q_OF:
        raise ValueError(f"unknown polarization {q!r}")
    value = 0.0
    if q == PI:
        if (frm.N_l, frm.M) == (to.N_l, to.M) and frm.P != to.P:
            sa = solve_axial(frm, field, mode, grid=grid, require_bound=False)
            sb = solve_axial(to, field, mode, grid=grid, require_bound=False)
            value = axial_overlap(sb, sa, power=1)
    else:
        coef = sigma_matrix_element(TransverseState(frm.N_l, frm.M, field),
                                    TransverseState(to.N_l, to.M, field), q)
        if coef != 0.0 and frm.P == to.P:
            sa = solve_axial(frm, field, mode, grid=grid, require_bound=False)
            sb = solve_axial(to, field, mode, grid=grid, require_bound=False)
            value = coef * axial_overlap(sb, sa)
    return DipoleElement(str(frm), str(to), q, value)


# ---------------------------------------------------------------- hydrogenic -> rLandau


def _theta_part(l: int, m: int, t: np.ndarray) -> np.ndarray:
    theta = np.arccos(t)
    return np.real(sph_harm_y(l, m, theta, 0.0))


def _hyd_to_rl_orbital(hs: HydrogenicState, m_l: int, sol: AxialSolution, ts: TransverseState,
                       q: str, order: int) -> float:
    # <rL| op_q |n l m_l> = 2 pi int dr u(r) r int dcos(theta) f(z) g(rho) w_q Theta_lm
    x = hs.grid.points()
    r = x * x
    keep = np.abs(hs.u) > 1e-12 * np.max(np.abs(hs.u))
    last = np.nonzero(keep)[0][-1] + 1
    x, r, u = x[:last], r[:last], hs.u[:last]
    # the allowed integrand is even in cos(theta); integrating over [0, 1] keeps
    # the |z| kink of the parity-extended axial function at an endpoint
    t, w = leggauss(order)
    t, w = 0.5 * (t + 1.0), w
    z = np.outer(r, t)
    rho = np.outer(r, np.sqrt(1.0 - t * t))
    op = z if q == PI else rho
    ang = (sol(z) * radial_profile(ts, rho) * op) @ (w * _theta_part(hs.l, m_l, t))
    return 2.0 * math.pi * simpson(u * r * ang * 2.0 * x, dx=hs.grid.step)


def hyd_orbital_element(hs: HydrogenicState, m_l: int, rl: RLQuantumNumbers, q: str,
                        field: FieldConfig = FieldConfig(), mode: str = EXACT,
                        grid: AxialGridSpec = DEFAULT_GRID, rtol: float = 1e-8,
                        atol: float = 1e-9) -> float:
    """<rL| op_q |n l m_l> for one orbital component (zero unless M = m_l + q).

    The polar-angle Gauss-Legendre order doubles from 32 until successive
    values agree within ``rtol * |value| + atol`` (a0); the absolute floor
    covers elements that nearly cancel.
    """
    if rl.M != m_l + Q_OF[q]:
        return 0.0
    if (rl.P + rl.M + hs.l) % 2 == 0:
        return 0.0
    sol = solve_axial(rl, field, mode, grid=grid, require_bound=False)
    ts = TransverseState(rl.N_l, rl.M, field)
    order = 32
    prev = _hyd_to_rl_orbital(hs, m_l, sol, ts, q, order)
    while order < 1024:
        order *= 2
        cur = _hyd_to_rl_orbital(hs, m_l, sol, ts, q, order)
        change = abs(cur - prev)
        if change <= rtol * abs(cur) + atol:
            return cur
        prev = cur
    raise QuadratureError(f"angular quadrature for <{rl}| {q} |n={hs.n},l={hs.l},m={m_l}> "
                          f"did not converge: last change {change:.3g}")


def dipole_hyd_to_rlandau(hyd: HydrogenicState | FineStructureState, rl: RLQuantumNumbers, q: str,
                          field: FieldConfig = FieldConfig(), defect: float | None = None,
                          mode: str = EXACT, grid: AxialGridSpec = DEFAULT_GRID) -> DipoleElement:
    """Dipole element from a zero-field state to an rLandau state.

    For a fine-structure state the spin is a spectator: the value is
    sqrt(sum over final spin of |<rL, m_s| op_q |hyd>|^2), i.e. the coupling
    coefficient of the single orbital component with m_l = M - q times the
    orbital element.  ``defect`` is required for fine-structure input.
    """
    if q not in Q_OF:
        raise ValueError(f"unknown polarization {q!r}")
    m_need = rl.M - Q_OF[q]
    if isinstance(hyd, FineStructureState):
        if defect is None:
            raise ValueError("a quantum defect is needed for a fine-structure state")
        weight2 = sum(a * a for ml, _, a in hyd.components if ml == m_need)
        label = f"|{hyd.n},l={hyd.l},j={hyd.j:g},mj={hyd.m_j:g}>"
        if weight2 == 0.0:
            return DipoleElement(label, str(rl), q, 0.0)
        hs = radial_solve(hyd.n, hyd.l, defect, m_l=m_need)
        val = hyd_orbital_element(hs, m_need, rl, q, field, mode, grid)
        return DipoleElement(label, str(rl), q, math.sqrt(weight2) * abs(val))
    val = hyd_orbital_element(hyd, hyd.m_l, rl, q, field, mode, grid)
    return DipoleElement(str(HydLabel(hyd.n, hyd.l, hyd.m_l)), str(rl), q, val)
