"""Numerical kernels: Laguerre recurrence, Numerov marching, root search, 1-parameter fits.

Everything here works in Hartree atomic units and knows nothing about the
physics modules that call it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numba
import numpy as np
from scipy import optimize

from .errors import (
    IllConditionedFit,
    InvalidPotentialError,
    NoEigenvalueFound,
    RangeError,
)

_RESCALE = 1e100


@dataclass(frozen=True)
class Grid1D:
    """Uniform grid ``z_min, z_min + step, ...`` up to ``z_max``."""

    z_min: float
    z_max: float
    step: float

    def __post_init__(self):
        if not self.step > 0:
            raise ValueError(f"grid step must be positive, got {self.step}")
        if self.samples < 3:
            raise ValueError("grid needs at least 3 samples")

    @property
    def samples(self) -> int:
        return int(math.floor((self.z_max - self.z_min) / self.step + 1e-9)) + 1

    def points(self) -> np.ndarray:
        return self.z_min + self.step * np.arange(self.samples)


@dataclass(frozen=True)
class FitResult:
    parameter: float
    residual_rms: float
    window: tuple[float, float]


def assoc_laguerre(k: int, alpha: int, x):
    """Generalized Laguerre polynomial L_k^alpha(x) by upward recurrence.

    Parameters
    ----------
    k, alpha : int
        Degree (``0 <= k <= 200``) and order (``alpha >= 0``).
    x : float or array_like
        Non-negative argument(s).

    Raises
    ------
    RangeError
        If the recurrence overflows to a non-finite value.
    """
    if k < 0 or alpha < 0:
        raise ValueError("k and alpha must be non-negative")
    if k > 200:
        raise ValueError("k > 200 is outside the supported range")
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if k == 0:
        return prev if x.ndim else float(prev)
    cur = 1.0 + alpha - x
    with np.errstate(over="ignore", invalid="ignore"):
        for j in range(1, k):
            prev, cur = cur, ((2 * j + 1 + alpha - x) * cur - (j + alpha) * prev) / (j + 1)
    if not np.all(np.isfinite(cur)):
        raise RangeError(f"L_{k}^{alpha} overflowed for max x = {np.max(x):g}")
    return cur if x.ndim else float(cur)


@numba.njit(cache=True)
def _march(q, h, y0, y1, stop, rescale):
    # Numerov for y'' = q y, from index 0 up to index `stop` (inclusive).
    n = q.shape[0]
    c = h * h / 12.0
    y = np.zeros(n)
    y[0] = y0
    y[1] = y1
    for i in range(1, stop):
        y[i + 1] = ((2.0 + 10.0 * c * q[i]) * y[i] - (1.0 - c * q[i - 1]) * y[i - 1]) / (
            1.0 - c * q[i + 1]
        )
        if rescale and abs(y[i + 1]) > 1e100:
            for j in range(i + 2):
                y[j] *= 1e-100
    return y


def numerov_march(q: np.ndarray, h: float, y0: float, y1: float, stop: int | None = None,
                  rescale: bool = False) -> np.ndarray:
    """Advance ``y'' = q(x) y`` on a uniform grid with the Numerov stencil.

    With ``rescale`` the partial solution is divided by 1e100 whenever it
    exceeds that size, which keeps the shape but not the absolute scale.
    Entries past ``stop`` are left at zero.
    """
    q = np.ascontiguousarray(q, dtype=float)
    if stop is None:
        stop = q.shape[0] - 1
    return _march(q, float(h), float(y0), float(y1), int(stop), bool(rescale))


def numerov_march_inward(q: np.ndarray, h: float, stop: int, tail: float = 1e-20) -> np.ndarray:
    """March from the last grid point down to ``stop`` starting from a decaying seed."""
    q = np.ascontiguousarray(q[::-1], dtype=float)
    n = q.shape[0]
    y = _march(q, float(h), 0.0, tail, n - 1 - int(stop), True)
    return y[::-1]


def numerov_propagate(grid: Grid1D, potential: Callable, E: float, f0: float, f1: float) -> np.ndarray:
    """Solve ``-f''/2 + V f = E f`` forward across ``grid`` from the two seed values."""
    z = grid.points()
    v = np.asarray(potential(z), dtype=float)
    if v.shape != z.shape:
        v = np.broadcast_to(v, z.shape).astype(float)
    if not np.all(np.isfinite(v[1:-1])):
        raise InvalidPotentialError("potential is not finite on the interior of the grid")
    v = np.where(np.isfinite(v), v, 0.0)
    return numerov_march(2.0 * (v - E), grid.step, f0, f1)


def count_sign_changes(y: np.ndarray) -> int:
    s = np.sign(y[y != 0])
    return int(np.count_nonzero(s[1:] != s[:-1]))


def scan_brackets(objective: Callable[[float], float], window: Sequence[float],
                  probes: int = 200) -> list[tuple[float, float]]:
    """Uniform scan of ``objective`` returning every interval with a sign change."""
    lo, hi = window
    xs = np.linspace(lo, hi, max(int(probes), 2))
    vals = np.array([objective(x) for x in xs])
    out = []
    for a, b, fa, fb in zip(xs[:-1], xs[1:], vals[:-1], vals[1:]):
        if fa == 0.0:
            out.append((a, a))
        elif np.isfinite(fa) and np.isfinite(fb) and fa * fb < 0:
            out.append((a, b))
    return out


def refine_root(objective: Callable[[float], float], bracket: tuple[float, float], tol: float) -> float:
    a, b = bracket
    if a == b:
        return a
    return optimize.brentq(objective, a, b, xtol=tol, rtol=4 * np.finfo(float).eps)


def bracket_and_bisect(objective: Callable[[float], float], window: Sequence[float],
                       tol: float = 1e-10, probes: int = 200) -> float:
    """Lowest root of ``objective`` in ``window``.

    A uniform scan with at least 200 probes locates sign changes; the lowest
    one is refined to ``|dE| < tol``.
    """
    brackets = scan_brackets(objective, window, max(probes, 200))
    if not brackets:
        raise NoEigenvalueFound(f"no sign change of the objective in {tuple(window)}")
    return refine_root(objective, brackets[0], tol)


def least_squares_1param(model: Callable[[float, np.ndarray], np.ndarray], z: np.ndarray,
                         data: np.ndarray, window: tuple[float, float],
                         bounds: tuple[float, float], rtol: float = 1e-6,
                         log_scale: bool = True) -> FitResult:
    """Fit one positive parameter by minimizing the squared residual over ``window``.

    The search runs over ``bounds`` (in log space when ``log_scale``) with
    Brent's bounded minimizer, whose fallback steps are golden sections.

    Raises
    ------
    IllConditionedFit
        For flat data or an optimum pinned to a search bound.
    """
    z = np.asarray(z, dtype=float)
    data = np.asarray(data, dtype=float)
    sel = (z >= window[0]) & (z <= window[1])
    if np.count_nonzero(sel) < 10:
        raise IllConditionedFit("fewer than 10 samples inside the fit window")
    zs, ds = z[sel], data[sel]
    scale = np.max(np.abs(ds))
    if scale == 0 or np.ptp(ds) <= 1e-12 * scale:
        raise IllConditionedFit("data are flat over the fit window")

    def cost(t):
        p = math.exp(t) if log_scale else t
        r = model(p, zs) - ds
        return float(np.dot(r, r))

    lo, hi = (math.log(bounds[0]), math.log(bounds[1])) if log_scale else bounds
    xatol = rtol * 1e-2 if log_scale else rtol * max(abs(lo), abs(hi)) * 1e-2
    res = optimize.minimize_scalar(cost, bounds=(lo, hi), method="bounded",
                                   options={"xatol": xatol, "maxiter": 500})
    t = float(res.x)
    if min(t - lo, hi - t) < 1e3 * xatol:
        raise IllConditionedFit("fit optimum sits on a search bound")
    p = math.exp(t) if log_scale else t
    return FitResult(parameter=p, residual_rms=math.sqrt(cost(t) / zs.size),
                     window=(float(window[0]), float(window[1])))
