"""Zero-field states of the alkali valence electron in the quantum-defect picture."""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from functools import lru_cache

import numpy as np
from scipy.integrate import simpson
from scipy.interpolate import CubicSpline

from .errors import ConfigError, InvalidQuantumNumberError, SolverError
from .numerics import Grid1D, numerov_march_inward

SPIN_UP = 0.5
SPIN_DOWN = -0.5


@dataclass(frozen=True)
class DefectTable:
    """Quantum defects keyed by (n, l).

    Each row is ``(n, l, d0, d2)``.  A row with ``n = None`` applies to every n
    without an explicit row, through the Rydberg-Ritz form
    ``d0 + d2 / (n - d0)**2``.  ``lowest_n[l]`` is the lowest principal quantum
    number of the valence series with angular momentum l (5 for Rb s and p,
    4 for d and f).
    """

    species: str
    rows: tuple[tuple[int | None, int, float, float], ...]
    lowest_n: tuple[int, ...] = (1, 2, 3, 4)

    def defect(self, n: int, l: int) -> float:
        generic = None
        for rn, rl, d0, d2 in self.rows:
            if rl != l:
                continue
            if rn == n:
                return d0
            if rn is None:
                generic = (d0, d2)
        if generic is None:
            raise ConfigError(f"no quantum defect for n={n}, l={l} ({self.species})")
        d0, d2 = generic
        return d0 + d2 / (n - d0) ** 2

    def energy(self, n: int, l: int) -> float:
        """Binding energy -1/(2 n*^2) in Hartree."""
        return -0.5 / (n - self.defect(n, l)) ** 2

    def series(self, l: int, n_max: int) -> range:
        start = self.lowest_n[l] if l < len(self.lowest_n) else l + 1
        return range(start, n_max + 1)


HYDROGEN = DefectTable("H", tuple((None, l, 0.0, 0.0) for l in range(4)))


@dataclass
class HydrogenicState:
    """Radial state u(r) = r R(r) tabulated on r = x^2 with uniform x."""

    n: int
    l: int
    m_l: int
    defect: float
    grid: Grid1D
    u: np.ndarray = dc_field(repr=False)

    @property
    def energy(self) -> float:
        return -0.5 / (self.n - self.defect) ** 2

    @property
    def r(self) -> np.ndarray:
        return self.grid.points() ** 2

    @property
    def radial(self) -> np.ndarray:
        r = self.r
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(r > 0, self.u / r, 0.0)

    def expectation(self, g) -> float:
        """<g(r)> = int u^2 g dr."""
        x = self.grid.points()
        return simpson(self.u**2 * g(x * x) * 2 * x, dx=self.grid.step)

    def overlap(self, other: HydrogenicState, g=lambda r: 1.0) -> float:
        """int u_self(r) g(r) u_other(r) dr, using the grid of ``self``."""
        x = self.grid.points()
        r = x * x
        uo = other.u_at(r)
        return simpson(self.u * np.broadcast_to(g(r), r.shape) * uo * 2 * x, dx=self.grid.step)

    def u_at(self, r) -> np.ndarray:
        x = np.sqrt(np.asarray(r, dtype=float))
        xs = self.grid.points()
        sp = self.__dict__.get("_spline")
        if sp is None:
            sp = CubicSpline(xs, self.u)
            self.__dict__["_spline"] = sp
        inside = (x >= xs[0]) & (x <= xs[-1])
        return np.where(inside, sp(np.clip(x, xs[0], xs[-1])), 0.0)

    def nodes(self) -> int:
        # ignore numerically tiny values at both ends of the grid
        u = self.u
        big = np.abs(u) > 1e-4 * np.max(np.abs(u))
        s = np.sign(u[big])
        return int(np.count_nonzero(s[1:] != s[:-1]))


@lru_cache(maxsize=256)
def _radial(n: int, l: int, defect: float, step: float):
    nstar = n - defect
    E = -0.5 / nstar**2
    r_max = 2.0 * nstar * (nstar + 15.0) + 30.0
    grid = Grid1D(step, math.sqrt(r_max), step)
    x = grid.points()
    q = -8.0 - 8.0 * x * x * E + (4.0 * l * (l + 1) + 0.75) / (x * x)
    y = numerov_march_inward(q, step, stop=0)
    if not np.all(np.isfinite(y)):
        raise SolverError(f"radial solution for n={n}, l={l} is not finite")
    u = np.sqrt(2.0 * x) * y
    r = x * x
    if l > 0:
        # The irregular solution grows inward inside the inner turning point (from the
        # defect, or from roundoff when l >= 2); cut it there.
        r_in = nstar**2 * (1.0 - math.sqrt(max(0.0, 1.0 - l * (l + 1) / nstar**2)))
        inner = np.nonzero(r <= r_in)[0]
        if inner.size > 2:
            i_min = inner[np.argmin(np.abs(u[inner]))]
            if i_min > 0:
                u[:i_min] = 0.0
    norm = simpson(u * u * 2.0 * x, dx=step)
    if not (np.isfinite(norm) and norm > 0):
        raise SolverError(f"radial solution for n={n}, l={l} is not normalizable")
    u /= math.sqrt(norm)
    # sign convention: positive outermost lobe
    big = np.nonzero(np.abs(u) > 1e-3 * np.max(np.abs(u)))[0]
    if u[big[-1]] < 0:
        u = -u
    return grid, u


def radial_solve(n: int, l: int, defect: float = 0.0, m_l: int = 0, step: float = 0.0025) -> HydrogenicState:
    """Numerov solution of the radial Coulomb problem at E = -1/(2 (n - defect)^2).

    Integration runs inward from ``r = 2 n*(n* + 15) + 30`` on the grid
    ``r = x^2``.  For l > 0 the solution is cut where it starts to grow again
    inside the inner turning point, as is usual for quantum-defect
    wavefunctions.
    """
    if l < 0 or l >= n:
        raise InvalidQuantumNumberError(f"need 0 <= l < n, got n={n}, l={l}")
    if abs(m_l) > l:
        raise InvalidQuantumNumberError(f"|m_l| must be <= l, got m_l={m_l}, l={l}")
    if n - defect <= l:
        raise InvalidQuantumNumberError(f"effective quantum number {n - defect} must exceed l={l}")
    grid, u = _radial(int(n), int(l), float(defect), float(step))
    return HydrogenicState(n, l, m_l, defect, grid, u.copy())


@dataclass(frozen=True)
class FineStructureState:
    n: int
    l: int
    j: float
    m_j: float
    components: tuple[tuple[int, float, float], ...]  # (m_l, m_s, amplitude)

    def component(self, m_l: int, m_s: float) -> float:
        for ml, ms, amp in self.components:
            if ml == m_l and ms == m_s:
                return amp
        return 0.0


def fine_structure_decompose(n: int, l: int, j: float, m_j: float) -> FineStructureState:
    """Expand |n l j m_j> in the |m_l, m_s> basis with standard coupling coefficients."""
    twoj, twomj = round(2 * j), round(2 * m_j)
    if abs(2 * j - twoj) > 1e-12 or abs(2 * m_j - twomj) > 1e-12 or twomj % 2 == 0:
        raise InvalidQuantumNumberError("j and m_j must be half-integers")
    if twoj not in (2 * l - 1, 2 * l + 1) or twoj < 1:
        raise InvalidQuantumNumberError(f"j={j} cannot be formed from l={l} and s=1/2")
    if abs(twomj) > twoj:
        raise InvalidQuantumNumberError(f"|m_j| must be <= j, got m_j={m_j}")
    mj = twomj / 2
    comps = []
    for ms in (SPIN_UP, SPIN_DOWN):
        ml = mj - ms
        if abs(ml) > l:
            continue
        if twoj == 2 * l + 1:
            amp = math.sqrt((l + 0.5 + 2 * ms * mj) / (2 * l + 1))
        else:
            amp = -2 * ms * math.sqrt((l + 0.5 - 2 * ms * mj) / (2 * l + 1))
        if amp != 0.0:
            comps.append((int(round(ml)), ms, amp))
    return FineStructureState(n, l, twoj / 2, mj, tuple(comps))
