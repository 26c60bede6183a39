import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import comb, factorial

from rlandau.errors import IllConditionedFit, InvalidPotentialError, NoEigenvalueFound
from rlandau.numerics import (
    Grid1D,
    assoc_laguerre,
    bracket_and_bisect,
    count_sign_changes,
    least_squares_1param,
    numerov_propagate,
)


def laguerre_series(k, alpha, x):
    return sum((-1) ** j * comb(k + alpha, k - j, exact=True) * x**j / factorial(j, exact=True)
               for j in range(k + 1))


# ---------------------------------------------------------------- Laguerre


@given(alpha=st.integers(0, 10), x=st.floats(0, 50))
def test_laguerre_degree_zero_is_one(alpha, x):
    assert assoc_laguerre(0, alpha, x) == 1.0


@given(x=st.floats(0, 50))
def test_laguerre_degree_one(x):
    assert assoc_laguerre(1, 0, x) == pytest.approx(1 - x, abs=1e-12)


def test_laguerre_matches_series():
    assert assoc_laguerre(3, 2, 1.5) == pytest.approx(laguerre_series(3, 2, 1.5), rel=1e-12)


@settings(max_examples=200)
@given(k=st.integers(1, 60), alpha=st.integers(0, 20), x=st.floats(0, 40))
def test_laguerre_three_term_recurrence(k, alpha, x):
    lm, l0, lp = (assoc_laguerre(j, alpha, x) for j in (k - 1, k, k + 1))
    lhs = (k + 1) * lp
    rhs = (2 * k + 1 + alpha - x) * l0 - (k + alpha) * lm
    scale = max(abs(lhs), abs((2 * k + 1 + alpha - x) * l0), abs((k + alpha) * lm), 1e-300)
    assert abs(lhs - rhs) <= 1e-12 * scale


def test_laguerre_rejects_out_of_range_degree():
    with pytest.raises(ValueError):
        assoc_laguerre(201, 0, 1.0)


# ---------------------------------------------------------------- Numerov


def test_numerov_free_particle_sine():
    h = 0.01
    grid = Grid1D(0.0, 20 * math.pi, h)
    f = numerov_propagate(grid, lambda z: 0.0 * z, 0.5, 0.0, math.sin(h))
    assert np.max(np.abs(f - np.sin(grid.points()))) < 1e-8


def test_numerov_free_particle_envelope_conserved():
    h = 2 * math.pi / 400
    grid = Grid1D(0.0, h * 1e4, h)
    z = grid.points()
    f = numerov_propagate(grid, lambda z: 0.0 * z, 0.5, 0.0, math.sin(h))
    g = numerov_propagate(grid, lambda z: 0.0 * z, 0.5, 1.0, math.cos(h))
    assert np.max(np.abs(f**2 + g**2 - 1.0)) < 1e-6
    assert z[-1] > 1e4 * h - h


def test_numerov_harmonic_ground_state():
    h = 0.001
    grid = Grid1D(0.0, 8.0, h)
    z = grid.points()
    # even state: f(0) = 1, f(h) from the Taylor series of exp(-z^2/2)
    f = numerov_propagate(grid, lambda z: z * z / 2, 0.5, 1.0, math.exp(-h * h / 2))
    sel = z < 5.0
    exact = np.exp(-z[sel] ** 2 / 2)
    fn = f[sel] / math.sqrt(np.trapezoid(f[sel] ** 2, z[sel]))
    en = exact / math.sqrt(np.trapezoid(exact**2, z[sel]))
    assert np.max(np.abs(fn - en)) < 1e-7


def test_numerov_odd_coulomb_ground_is_node_free_and_decaying():
    h = 1e-3
    grid = Grid1D(0.0, 40.0, h)
    f = numerov_propagate(grid, lambda z: np.where(z > 0, -1.0 / np.where(z > 0, z, 1.0), np.inf),
                          -0.5, 0.0, h - h * h)
    z = grid.points()
    assert count_sign_changes(f[z < 20]) == 0
    assert abs(f[np.searchsorted(z, 15.0)]) < 1e-4 * np.max(np.abs(f))


def test_numerov_rejects_nonfinite_potential():
    grid = Grid1D(0.0, 1.0, 0.1)
    with pytest.raises(InvalidPotentialError):
        numerov_propagate(grid, lambda z: np.where(z > 0.45, np.nan, 0.0), 0.0, 0.0, 0.1)


@given(step=st.floats(1e-3, 1.0), span=st.floats(2.0, 100.0))
def test_grid_sample_count(step, span):
    g = Grid1D(0.0, span, step)
    assert g.samples == math.floor(span / step + 1e-9) + 1
    assert np.allclose(np.diff(g.points()), step)


# ---------------------------------------------------------------- roots


def test_bisect_linear():
    assert bracket_and_bisect(lambda e: e - 0.3, (0.0, 1.0), tol=1e-10) == pytest.approx(0.3, abs=1e-10)


def test_bisect_returns_lowest_root():
    assert bracket_and_bisect(lambda e: (e - 0.2) * (e - 0.7), (0.0, 1.0)) == pytest.approx(0.2, abs=1e-10)


def test_bisect_without_sign_change():
    with pytest.raises(NoEigenvalueFound):
        bracket_and_bisect(lambda e: e * e + 1, (-1.0, 1.0))


# ---------------------------------------------------------------- fit


def _model(d, z):
    return -1.0 / (z + d)


def test_fit_exact_model():
    z = np.linspace(1, 200, 400)
    r = least_squares_1param(_model, z, _model(5.0, z), (1, 200), (1e-3, 1e3))
    assert r.parameter == pytest.approx(5.0, rel=1e-6)
    assert r.residual_rms >= 0


def test_fit_with_noise():
    z = np.linspace(1, 200, 400)
    noise = 1e-8 * np.random.default_rng(1).standard_normal(z.size)
    r = least_squares_1param(_model, z, _model(5.0, z) + noise, (1, 200), (1e-3, 1e3))
    assert abs(r.parameter - 5.0) < 1e-4


def test_fit_constant_data_is_ill_conditioned():
    z = np.linspace(1, 200, 400)
    with pytest.raises(IllConditionedFit):
        least_squares_1param(_model, z, np.full_like(z, -0.1), (1, 200), (1e-3, 1e3))
