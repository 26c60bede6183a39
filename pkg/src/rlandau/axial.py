"""Axial sector: effective 1D potential, shifted-Coulomb fit and the Numerov shooting solver.

The solver works on the mapped coordinate ``z = x**2 - c`` with ``f = sqrt(2x) y``,
which turns ``-f''/2 + V f = E f`` into

    y'' = [8 x^2 (V - E) + 3 / (4 x^2)] y

on a grid uniform in ``x``.  The mapping concentrates points near the origin,
where the potential varies on the scale of ``rc`` (or ``d``), and spreads them
in the Rydberg tail.

Axial labels follow the asymptotic Rydberg series: within a parity, the
eigenvalue with ``k`` nodes on ``z > 0`` has ``nu_k = k + mu + O(1/nu^2)``, and the
state receives ``N_z = k + floor(mu)``.  Then ``N_z + delta`` tracks ``nu`` with
``delta`` in [0, 1) for Rydberg-like states, and low-lying states may carry
larger local defects.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import asdict, dataclass, field as dc_field
from functools import lru_cache

import numpy as np
from scipy.integrate import simpson
from scipy.interpolate import BSpline, make_interp_spline
from scipy.special import gammaln, hyperu, roots_genlaguerre

from . import cache as _cache
from .constants import HARTREE_GHZ, RYDBERG_HARTREE
from .errors import (
    InvalidPotentialError,
    InvalidQuantumNumberError,
    NoEigenvalueFound,
    QuadratureError,
    UnboundStateError,
)
from .landau import FieldConfig, TransverseState
from .numerics import (
    FitResult,
    Grid1D,
    count_sign_changes,
    least_squares_1param,
    numerov_march,
    numerov_march_inward,
    refine_root,
    scan_brackets,
)

EXACT = "exact-potential"
SHIFTED = "shifted-coulomb"
MODES = (EXACT, SHIFTED)

# Below this value of a = z^2 / 2 rc^2 the confluent hypergeometric closed form is used;
# above it generalized Gauss-Laguerre quadrature is accurate and cheaper.
_A_SWITCH = 2.0
_GL_ORDER = 48


@dataclass(frozen=True)
class RLQuantumNumbers:
    """Label |N_z, P, N_l, M> of an rLandau state."""

    N_z: int
    P: int
    N_l: int
    M: int

    def __post_init__(self):
        if self.N_z < 0 or self.N_l < 0:
            raise InvalidQuantumNumberError(f"N_z and N_l must be >= 0: {self}")
        if self.P not in (0, 1):
            raise InvalidQuantumNumberError(f"parity must be 0 or 1, got {self.P}")
        if self.M < -self.N_l:
            raise InvalidQuantumNumberError(f"M must be >= -N_l, got M={self.M}, N_l={self.N_l}")

    def transverse(self, field: FieldConfig) -> TransverseState:
        return TransverseState(self.N_l, self.M, field)

    def __str__(self):
        return f"|{self.N_z},{self.P},{self.N_l},{self.M}>"


@dataclass(frozen=True)
class AxialGridSpec:
    """Numerical settings of the axial solver.

    Attributes
    ----------
    step : float
        Grid step in the mapped coordinate x (units of sqrt(a0)).
    zmax_factor : float
        Outer boundary at ``zmax_factor * (nu + 1)**2`` a0.
    probes : int
        Uniform probes per search window before root refinement.
    nu_ref : float
        Effective quantum number at which the asymptotic label offset is read.
    nu_tol : float
        Absolute tolerance on the effective quantum number.
    """

    step: float = 0.02
    zmax_factor: float = 6.0
    probes: int = 240
    nu_ref: float = 100.0
    nu_tol: float = 1e-10

    def key(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


DEFAULT_GRID = AxialGridSpec()


# ---------------------------------------------------------------- effective potential


def _gl_nodes(order: int, alpha: int):
    return roots_genlaguerre(order, alpha)


_gl_nodes = lru_cache(maxsize=None)(_gl_nodes)


def _closed_form(coeffs: np.ndarray, a: np.ndarray) -> np.ndarray:
    # sum_k c_k int_0^inf e^-u u^k (u + a)^-1/2 du = sum_k c_k k! U(1/2, 1/2 - k, a)
    out = np.zeros_like(a)
    pos = a > 0
    for k, ck in enumerate(coeffs):
        if ck == 0.0:
            continue
        term = np.empty_like(a)
        term[pos] = math.exp(gammaln(k + 1)) * hyperu(0.5, 0.5 - k, a[pos])
        term[~pos] = math.exp(gammaln(k + 0.5))
        out += ck * term
    return out


def _gauss_laguerre(coeffs: np.ndarray, alpha: int, a: np.ndarray, order: int) -> np.ndarray:
    u, w = _gl_nodes(order, alpha)
    poly = np.polynomial.polynomial.polyval(u, coeffs[alpha:])
    return (w * poly) @ (1.0 / np.sqrt(u[:, None] + a[None, :]))


def coulomb_average(ts: TransverseState, z) -> np.ndarray:
    """V(z) = -<Q| 1/sqrt(rho^2 + z^2) |Q> in Hartree, even in z.

    Raises
    ------
    QuadratureError
        If the Gauss-Laguerre branch changes by more than 1e-8 relative on order doubling.
    """
    z = np.abs(np.asarray(z, dtype=float))
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    rc = ts.field.rc
    a = z * z / (2 * rc * rc)
    coeffs = ts.density_coefficients
    out = np.empty_like(a)
    near = a < _A_SWITCH
    if np.any(near):
        out[near] = _closed_form(coeffs, a[near])
    far = ~near
    if np.any(far):
        lo = _gauss_laguerre(coeffs, abs(ts.M), a[far], _GL_ORDER)
        hi = _gauss_laguerre(coeffs, abs(ts.M), a[far], 2 * _GL_ORDER)
        err = np.max(np.abs(hi - lo) / np.abs(hi))
        if err > 1e-8:
            raise QuadratureError(f"Gauss-Laguerre average not converged (rel. change {err:.1e})")
        out[far] = hi
    v = -out / (math.sqrt(2.0) * rc)
    return float(v[0]) if scalar else v


@dataclass(frozen=True)
class EffectivePotential:
    transverse: TransverseState
    grid: Grid1D
    samples: np.ndarray = dc_field(repr=False)

    @property
    def z(self) -> np.ndarray:
        return self.grid.points()

    def __call__(self, z):
        return coulomb_average(self.transverse, z)


def effective_potential(ts: TransverseState, grid: Grid1D) -> EffectivePotential:
    return EffectivePotential(ts, grid, coulomb_average(ts, grid.points()))


def fit_window(ts: TransverseState) -> tuple[float, float]:
    """z-window of the shifted-Coulomb fit: [s, 20 s] with s = rc sqrt(2 N_l + |M| + 1)."""
    s = ts.field.rc * math.sqrt(2 * ts.N_l + abs(ts.M) + 1)
    return s, 20.0 * s


def fit_shift(ep: EffectivePotential | TransverseState, window=None, samples: int = 400) -> FitResult:
    """Least-squares fit of -1/(z + d) to the effective potential.

    A tabulated potential is fitted on its own grid points inside the window;
    for a bare transverse state the window is sampled uniformly with
    ``samples`` points.  The fit is unweighted.
    """
    ts = ep.transverse if isinstance(ep, EffectivePotential) else ep
    lo, hi = window if window is not None else fit_window(ts)
    if isinstance(ep, EffectivePotential):
        z, v = ep.z, ep.samples
    else:
        z = np.linspace(lo, hi, samples)
        v = coulomb_average(ts, z)
    return least_squares_1param(lambda d, zz: -1.0 / (zz + d), z, v, (lo, hi),
                                bounds=(1e-4, 1e5))


def fit_shift_d(ep: EffectivePotential | TransverseState, window=None) -> float:
    """Shift d (a0) of the shifted-Coulomb approximation."""
    return fit_shift(ep, window).parameter


@lru_cache(maxsize=512)
def _cached_fit_d(N_l: int, M: int, B: float) -> float:
    return fit_shift_d(TransverseState(N_l, M, FieldConfig(B)))


# ---------------------------------------------------------------- shooting solver


class _AxialProblem:
    """Even/odd bound states of an even 1D potential on the mapped grid."""

    def __init__(self, potential, offset: float, parity: int, grid: AxialGridSpec, v0: float):
        if parity == 0 and offset <= 0:
            raise InvalidPotentialError("even states need a regular potential at z = 0 (d > 0)")
        self.potential = potential
        self.c = float(offset)
        self.parity = parity
        self.spec = grid
        self.v0 = v0
        self._zmax = None

    def prepare(self, nu_hi: float):
        zmax = self.spec.zmax_factor * (nu_hi + 1.0) ** 2
        if self._zmax is not None and self._zmax >= zmax:
            return
        h = self.spec.step
        x0 = math.sqrt(self.c)
        xg = Grid1D(x0, math.sqrt(zmax + self.c), h)
        x = xg.points()
        z = x * x - self.c
        with np.errstate(divide="ignore"):
            v = np.asarray(self.potential(z), dtype=float)
        if not np.all(np.isfinite(v[1:])):
            raise InvalidPotentialError("effective potential is not finite on the grid")
        self.xgrid, self.x, self.z, self.v, self._zmax = xg, x, z, v, zmax
        with np.errstate(divide="ignore"):
            self.centrifugal = np.where(x > 0, 0.75 / np.where(x > 0, x * x, 1.0), 0.0)
        self.eightx2 = 8.0 * x * x

    def q(self, E: float) -> np.ndarray:
        with np.errstate(invalid="ignore"):
            q = self.eightx2 * (self.v - E) + self.centrifugal
        if self.x[0] == 0.0:
            q[0] = 0.0
        return q

    def _seed(self, q: np.ndarray):
        h, x0 = self.spec.step, self.x[0]
        if self.parity == 1:
            return 0.0, h
        # y'(x0) = -y/(2 x0) from f'(0) = 0; Taylor step through third order
        y0, dy0 = 1.0, -1.0 / (2.0 * x0)
        dq = (q[1] - q[0]) / h
        return y0, y0 + h * dy0 + 0.5 * h * h * q[0] * y0 + h**3 / 6.0 * (dq * y0 + q[0] * dy0)

    def match_index(self, E: float) -> int:
        # classical turning point of E, clamped inside the grid
        allowed = np.nonzero(self.v < E)[0]
        m = int(allowed[-1]) if allowed.size else 2
        return int(min(max(m, 4), self.x.size - 6))

    def _solutions(self, E: float, m: int):
        q = self.q(E)
        y0, y1 = self._seed(q)
        yo = numerov_march(q, self.spec.step, y0, y1, stop=m + 1, rescale=True)
        yi = numerov_march_inward(q, self.spec.step, stop=m - 1)
        return yo, yi

    def mismatch(self, E: float, m: int) -> float:
        yo, yi = self._solutions(E, m)
        w = yo[m] * (yi[m + 1] - yi[m - 1]) - yi[m] * (yo[m + 1] - yo[m - 1])
        return w / ((abs(yo[m]) + abs(yo[m + 1])) * (abs(yi[m]) + abs(yi[m + 1])))

    def eigenfunction(self, E: float, m: int) -> np.ndarray:
        """Normalized f on the mapped grid (full-line normalization)."""
        yo, yi = self._solutions(E, m)
        scale = yo[m] / yi[m] if yi[m] != 0 else yo[m + 1] / yi[m + 1]
        y = np.concatenate([yo[: m + 1], scale * yi[m + 1:]])
        f = np.sqrt(2.0 * self.x) * y
        norm = 2.0 * simpson(f * f * 2.0 * self.x, dx=self.spec.step)
        f /= math.sqrt(norm)
        if f[np.argmax(np.abs(f[: max(m, 2)]))] < 0:
            f = -f
        return f

    def roots(self, nu_lo: float, nu_hi: float) -> list[tuple[float, int]]:
        """(nu, node count on z > 0) for every eigenvalue with nu in the window."""
        self.prepare(nu_hi)
        e_mid = -0.5 / ((0.5 * (nu_lo + nu_hi)) ** 2)
        m = self.match_index(e_mid)
        obj = lambda nu: self.mismatch(-0.5 / (nu * nu), m)
        out = []
        for br in scan_brackets(obj, (nu_lo, nu_hi), self.spec.probes):
            nu = refine_root(obj, br, self.spec.nu_tol)
            if abs(obj(nu)) > 1e-3:
                continue
            f = self.eigenfunction(-0.5 / (nu * nu), m)
            out.append((nu, count_sign_changes(f[1:])))
        return out

    @property
    def nu_floor(self) -> float:
        return 1.0 / math.sqrt(-2.0 * self.v0)


@dataclass(frozen=True)
class LabelOffset:
    """Asymptotic Rydberg offset of one parity series: nu_k -> k + mu."""

    mu: float

    @property
    def offset(self) -> int:
        # tolerance keeps exactly-integer offsets (e.g. the d = 0 odd series) from slipping down
        return int(math.floor(self.mu + 1e-4))

    @property
    def defect(self) -> float:
        return self.mu - self.offset


@dataclass
class AxialSolution:
    """Solved axial eigenstate.

    ``defect`` is the local value ``nu - N_z`` so that ``E_z = -Ry/(N_z + defect)^2``
    holds exactly; ``asymptotic_defect`` is the large-N_z limit of the series.
    """

    qn: RLQuantumNumbers
    mode: str
    d: float | None
    grid: Grid1D  # uniform grid of the mapped coordinate x
    offset: float  # z = x^2 - offset
    f: np.ndarray = dc_field(repr=False)
    E_z: float = 0.0
    defect: float = 0.0
    asymptotic_defect: float = 0.0
    rank: int = 0

    @property
    def nu(self) -> float:
        return self.qn.N_z + self.defect

    @property
    def x(self) -> np.ndarray:
        return self.grid.points()

    @property
    def z(self) -> np.ndarray:
        return self.x**2 - self.offset

    @property
    def spline(self) -> BSpline:
        """Quintic interpolant of f in x; smooth enough for high-order quadrature."""
        sp = self.__dict__.get("_spline")
        if sp is None:
            sp = make_interp_spline(self.x, self.f, k=5)
            self.__dict__["_spline"] = sp
        return sp

    def __call__(self, z) -> np.ndarray:
        """f(z) on the full line using the parity extension."""
        z = np.asarray(z, dtype=float)
        az = np.abs(z)
        xq = np.sqrt(az + self.offset)
        inside = xq <= self.x[-1]
        vals = np.where(inside, self.spline(np.minimum(xq, self.x[-1])), 0.0)
        if self.qn.P == 1:
            vals = np.where(z < 0, -vals, vals)
        return vals

    def half_line_integral(self, g) -> float:
        """Integral over z >= 0 of g(z) f(z)^2 using the mapped grid."""
        x = self.x
        return simpson(g(self.z) * self.f**2 * 2.0 * x, dx=self.grid.step)

    def mean_abs_z(self) -> float:
        return 2.0 * self.half_line_integral(lambda z: z)

    def norm(self) -> float:
        return 2.0 * self.half_line_integral(lambda z: np.ones_like(z))


def _potential_and_offset(ts: TransverseState, mode: str, d: float | None):
    if mode == EXACT:
        return (lambda z: coulomb_average(ts, z)), 0.25 * ts.field.rc, coulomb_average(ts, 0.0)
    if mode == SHIFTED:
        if d is None:
            d = _cached_fit_d(ts.N_l, ts.M, ts.field.B)
        if d < 0:
            raise InvalidPotentialError("shift d must be non-negative")
        v0 = -1.0 / d if d > 0 else -np.inf
        return (lambda z, d=d: -1.0 / (np.abs(z) + d)), d, v0
    raise ValueError(f"unknown axial mode {mode!r}")


def _problem(P, N_l, M, B, mode, d, spec):
    ts = TransverseState(N_l, M, FieldConfig(B))
    pot, c, v0 = _potential_and_offset(ts, mode, d)
    return _AxialProblem(pot, c, P, spec, v0)


def _resolve_d(N_l, M, B, mode, d):
    if mode == SHIFTED and d is None:
        return _cached_fit_d(N_l, M, B)
    return None if mode == EXACT else float(d)


@lru_cache(maxsize=1024)
def _label_offset(P, N_l, M, B, mode, d, spec: AxialGridSpec) -> LabelOffset:
    prob = _problem(P, N_l, M, B, mode, d, spec)
    nu_ref = spec.nu_ref
    roots = prob.roots(nu_ref, nu_ref + 1.25)
    if not roots:
        raise NoEigenvalueFound(f"no reference eigenvalue near nu = {nu_ref}")
    nu, k = roots[0]
    return LabelOffset(nu - k)


def label_offset(P: int, N_l: int, M: int, field: FieldConfig = FieldConfig(), mode: str = EXACT,
                 d: float | None = None, grid: AxialGridSpec = DEFAULT_GRID) -> LabelOffset:
    d = _resolve_d(N_l, M, field.B, mode, d)
    key = {"kind": "offset", "P": P, "N_l": N_l, "M": M, "B": field.B, "mode": mode, "d": d,
           "grid": grid.key()}
    hit = _cache.load(key)
    if hit is not None:
        return LabelOffset(float(hit["mu"]))
    lo = _label_offset(P, N_l, M, field.B, mode, d, grid)
    _cache.store(key, {"mu": np.array(lo.mu)})
    return lo


def asymptotic_defect(P: int, N_l: int, M: int, field: FieldConfig = FieldConfig(),
                      mode: str = EXACT, d: float | None = None,
                      grid: AxialGridSpec = DEFAULT_GRID) -> float:
    """Large-N_z quantum defect of one parity series, in [0, 1)."""
    return label_offset(P, N_l, M, field, mode, d, grid).defect


def lowest_label(P: int, N_l: int, M: int, field: FieldConfig = FieldConfig(), mode: str = EXACT,
                 d: float | None = None, grid: AxialGridSpec = DEFAULT_GRID) -> int:
    """N_z of the energetically lowest state of the parity series."""
    return label_offset(P, N_l, M, field, mode, d, grid).offset


def ground_state(N_l: int, M: int, field: FieldConfig = FieldConfig(), mode: str = EXACT,
                 d: float | None = None) -> RLQuantumNumbers:
    """Label of the axial ground state (even, nodeless) of the (N_l, M) manifold."""
    return RLQuantumNumbers(lowest_label(0, N_l, M, field, mode, d), 0, N_l, M)


def state_from_rank(rank: int, P: int, N_l: int, M: int, field: FieldConfig = FieldConfig(),
                    mode: str = EXACT, d: float | None = None) -> RLQuantumNumbers:
    """Label of the parity-P state with ``rank`` nodes on z > 0."""
    return RLQuantumNumbers(lowest_label(P, N_l, M, field, mode, d) + rank, P, N_l, M)


def _solve_uncached(qn, B, mode, d, spec) -> AxialSolution:
    lo = label_offset(qn.P, qn.N_l, qn.M, FieldConfig(B), mode, d, spec)
    rank = qn.N_z - lo.offset
    if rank < 0:
        raise NoEigenvalueFound(
            f"{qn}: the lowest state of this parity series has N_z = {lo.offset}")
    prob = _problem(qn.P, qn.N_l, qn.M, B, mode, d, spec)
    centre = qn.N_z + lo.defect
    floor = prob.nu_floor * (1 + 1e-9)
    for half in (1.5, 3.0, 6.0, 12.0, 24.0):
        lo_nu = max(floor, centre - half)
        hi_nu = centre + half
        for nu, nodes in prob.roots(lo_nu, hi_nu):
            if nodes == rank:
                E = -0.5 / nu**2
                m = prob.match_index(E)
                f = prob.eigenfunction(E, m)
                return AxialSolution(qn, mode, d, prob.xgrid, prob.c, f, E, nu - qn.N_z,
                                     lo.defect, rank)
        if lo_nu == floor and half > qn.N_z:
            break
    raise NoEigenvalueFound(f"{qn}: no eigenvalue with {rank} nodes found")


def solve_axial(qn: RLQuantumNumbers, field: FieldConfig = FieldConfig(), mode: str = EXACT,
                d: float | None = None, grid: AxialGridSpec = DEFAULT_GRID,
                require_bound: bool = True) -> AxialSolution:
    """Bound axial eigenstate of the (N_l, M) manifold with label (N_z, P).

    Parameters
    ----------
    qn : RLQuantumNumbers
    field : FieldConfig
    mode : {"exact-potential", "shifted-coulomb"}
        Potential of the averaged Coulomb interaction, or its shifted-Coulomb form.
    d : float, optional
        Shift for ``shifted-coulomb``; fitted from the exact potential when omitted.
    grid : AxialGridSpec
    require_bound : bool
        Raise ``UnboundStateError`` when the total energy lies above the zero-field threshold.
    """
    if mode not in MODES:
        raise ValueError(f"unknown axial mode {mode!r}")
    d = _resolve_d(qn.N_l, qn.M, field.B, mode, d)
    key = {"kind": "axial", "qn": [qn.N_z, qn.P, qn.N_l, qn.M], "B": field.B, "mode": mode,
           "d": d, "grid": grid.key()}
    hit = _cache.load(key)
    if hit is not None:
        sol = AxialSolution(qn, mode, d, Grid1D(*map(float, hit["xgrid"])), float(hit["offset"]),
                            hit["f"], float(hit["E_z"]), float(hit["defect"]),
                            float(hit["asymptotic_defect"]), int(hit["rank"]))
    else:
        sol = _solve_uncached(qn, field.B, mode, d, grid)
        _cache.store(key, {
            "xgrid": np.array([sol.grid.z_min, sol.grid.z_max, sol.grid.step]),
            "offset": np.array(sol.offset), "f": sol.f, "E_z": np.array(sol.E_z),
            "defect": np.array(sol.defect), "asymptotic_defect": np.array(sol.asymptotic_defect),
            "rank": np.array(sol.rank)})
    if require_bound and total_energy_from(sol, field) >= 0:
        raise UnboundStateError(f"{qn} lies above the zero-field ionization threshold")
    return sol


def total_energy_from(sol: AxialSolution, field: FieldConfig) -> float:
    """Total energy hbar omega_c (N_l + 1/2) + E_z in GHz."""
    return field.B_au * (sol.qn.N_l + 0.5) * HARTREE_GHZ + sol.E_z * HARTREE_GHZ


def total_energy(qn: RLQuantumNumbers, field: FieldConfig = FieldConfig(), mode: str = EXACT,
                 d: float | None = None, grid: AxialGridSpec = DEFAULT_GRID) -> float:
    """Energy in GHz relative to the zero-field ionization threshold."""
    sol = solve_axial(qn, field, mode, d, grid, require_bound=False)
    return total_energy_from(sol, field)


def is_bound(qn: RLQuantumNumbers, field: FieldConfig = FieldConfig(), mode: str = EXACT,
             d: float | None = None, grid: AxialGridSpec = DEFAULT_GRID) -> bool:
    return total_energy(qn, field, mode, d, grid) < 0


def rydberg_energy(nu: float) -> float:
    return -RYDBERG_HARTREE / nu**2


def grid_fingerprint(grid: AxialGridSpec) -> str:
    return hashlib.sha256(grid.key().encode()).hexdigest()[:12]


@dataclass(frozen=True)
class DefectRow:
    """Shift and asymptotic defects of one (N_l, M) manifold."""

    N_l: int
    M: int
    d: float
    delta_odd: float
    delta_even: float
    exact_odd: float
    exact_even: float


def defect_row(N_l: int, M: int, field: FieldConfig = FieldConfig(), d: float | None = None,
               grid: AxialGridSpec = DEFAULT_GRID, exact: bool = True) -> DefectRow:
    """Shifted-Coulomb defects at shift ``d`` (fitted when omitted) and exact-potential defects.

    The exact-potential columns are NaN when ``exact`` is false.
    """
    ts = TransverseState(N_l, M, field)
    if d is None:
        d = _cached_fit_d(N_l, M, field.B)
    odd = asymptotic_defect(1, N_l, M, field, SHIFTED, d, grid)
    even = asymptotic_defect(0, N_l, M, field, SHIFTED, d, grid) if d > 0 else math.nan
    if exact:
        ex_odd = asymptotic_defect(1, ts.N_l, ts.M, field, EXACT, None, grid)
        ex_even = asymptotic_defect(0, ts.N_l, ts.M, field, EXACT, None, grid)
    else:
        ex_odd = ex_even = math.nan
    return DefectRow(N_l, M, float(d), odd, even, ex_odd, ex_even)
