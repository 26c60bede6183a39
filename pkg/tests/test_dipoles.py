import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import OP_OF_POL, axial_element, hyd_to_rl_element, transverse_element
from rlandau.axial import RLQuantumNumbers, solve_axial
from rlandau.dipoles import (
    HydLabel,
    axial_overlap,
    dipole_hyd_to_rlandau,
    dipole_rl_to_rl,
    hyd_orbital_element,
    selection_check,
)
from rlandau.hydrogenic import fine_structure_decompose, radial_solve
from rlandau.landau import PI, SIGMA_MINUS, SIGMA_PLUS, FieldConfig, TransverseState
from rlandau.reference import DIPOLE_5P_100, DIPOLE_6P_100

F = FieldConfig(2.5)
RB_6P, RB_5P = 2.67470, 2.71152
REVERSE = {PI: PI, SIGMA_PLUS: SIGMA_MINUS, SIGMA_MINUS: SIGMA_PLUS}


# ---------------------------------------------------------------- selection rules


def test_selection_examples():
    assert selection_check(HydLabel(6, 1, 0), RLQuantumNumbers(100, 0, 0, 0), PI)
    assert selection_check(RLQuantumNumbers(100, 0, 0, 0), RLQuantumNumbers(100, 0, 0, 1), SIGMA_PLUS)
    res = selection_check(RLQuantumNumbers(100, 0, 0, 0), RLQuantumNumbers(100, 0, 0, 0), PI)
    assert not res and "parity" in res.reason


def test_selection_fine_structure_any_component():
    fs = fine_structure_decompose(6, 1, 1.5, -0.5)
    assert selection_check(fs, RLQuantumNumbers(100, 0, 0, 0), SIGMA_PLUS)  # m_l = -1 component
    assert selection_check(fs, RLQuantumNumbers(100, 1, 0, 0), PI) is not None


@given(l=st.integers(0, 3), m=st.integers(-3, 3), P=st.integers(0, 1), M=st.integers(-2, 4),
       q=st.sampled_from([PI, SIGMA_PLUS, SIGMA_MINUS]))
def test_hydrogenic_rule_is_angular_plus_parity(l, m, P, M, q):
    if abs(m) > l:
        return
    dq = {PI: 0, SIGMA_PLUS: 1, SIGMA_MINUS: -1}[q]
    rl = RLQuantumNumbers(50, P, max(0, -M), M)
    ok = bool(selection_check(HydLabel(6, l, m), rl, q))
    assert ok == (M - m == dq and (P + M + l) % 2 == 1)


# ---------------------------------------------------------------- rLandau <-> rLandau


def test_sigma_element_factorizes():
    a, b = RLQuantumNumbers(100, 0, 0, 0), RLQuantumNumbers(100, 0, 0, 1)
    val = dipole_rl_to_rl(a, b, SIGMA_PLUS, F).value
    ov = axial_overlap(solve_axial(b, F), solve_axial(a, F))
    assert val == pytest.approx(math.sqrt(2) * F.rc * ov, rel=1e-12)


@pytest.mark.xfail(strict=True, reason="axial functions of different (N_l, M) manifolds are "
                   "not orthonormal; the same-label overlap is ~0.38")
def test_sigma_axial_overlap_is_unity():
    a, b = RLQuantumNumbers(100, 0, 0, 0), RLQuantumNumbers(100, 0, 0, 1)
    assert axial_overlap(solve_axial(b, F), solve_axial(a, F)) == pytest.approx(1.0, abs=1e-3)


def test_pi_element_vanishes_between_different_m():
    assert dipole_rl_to_rl(RLQuantumNumbers(100, 0, 0, 0), RLQuantumNumbers(99, 1, 0, 1), PI, F).value == 0


@pytest.mark.parametrize("a,b", [((100, 0, 0, 0), (99, 1, 0, 0)), ((60, 1, 1, 2), (61, 0, 1, 2))])
def test_pi_element_matches_full_line_quadrature(a, b):
    qa, qb = RLQuantumNumbers(*a), RLQuantumNumbers(*b)
    val = dipole_rl_to_rl(qa, qb, PI, F).value
    brute = axial_element(solve_axial(qa, F), solve_axial(qb, F), 1)
    assert val == pytest.approx(brute, rel=1e-6)


@pytest.mark.parametrize("a,b,q", [
    ((100, 0, 0, 0), (99, 1, 0, 0), PI),
    ((100, 0, 0, 0), (100, 0, 0, 1), SIGMA_PLUS),
    ((60, 1, 1, 0), (60, 1, 0, 1), SIGMA_PLUS),
    ((60, 1, 1, 0), (60, 1, 2, -1), SIGMA_MINUS),
])
def test_hermiticity(a, b, q):
    qa, qb = RLQuantumNumbers(*a), RLQuantumNumbers(*b)
    fwd = dipole_rl_to_rl(qa, qb, q, F).value
    back = dipole_rl_to_rl(qb, qa, REVERSE[q], F).value
    assert abs(fwd) == pytest.approx(abs(back), rel=1e-8)
    assert fwd != 0


def test_pi_dipole_grows_quadratically():
    nz = np.array([40, 55, 70, 85, 100])
    vals = [abs(dipole_rl_to_rl(RLQuantumNumbers(n, 0, 0, 0), RLQuantumNumbers(n - 1, 1, 0, 0),
                                PI, F).value) for n in nz]
    slope = np.polyfit(np.log(nz), np.log(vals), 1)[0]
    assert slope == pytest.approx(2.0, abs=0.15)


# ---------------------------------------------------------------- hydrogenic -> rLandau


@pytest.mark.parametrize("n,l,m,qn,q,op", [
    (6, 1, 0, (100, 0, 0, 0), PI, "z"),
    (5, 2, 1, (21, 0, 1, 1), PI, "z"),
    (6, 1, 1, (40, 0, 0, 0), SIGMA_MINUS, "x-iy"),
    (4, 3, -1, (30, 0, 1, 0), SIGMA_PLUS, "x+iy"),
])
def test_hyd_element_matches_3d_quadrature(n, l, m, qn, q, op):
    rl = RLQuantumNumbers(*qn)
    hs = radial_solve(n, l, 0.0, m_l=m)
    pkg = hyd_orbital_element(hs, m, rl, q, F)
    brute = hyd_to_rl_element(hs, m, solve_axial(rl, F, require_bound=False),
                              TransverseState(rl.N_l, rl.M, F), op)
    assert abs(brute.imag) < 1e-10 * abs(brute)
    assert pkg == pytest.approx(brute.real, rel=1e-6)


def test_fine_structure_weight():
    fs = fine_structure_decompose(6, 1, 1.5, -0.5)
    rl = RLQuantumNumbers(100, 0, 0, 0)
    val = dipole_hyd_to_rlandau(fs, rl, PI, F, defect=RB_6P).value
    orb = hyd_orbital_element(radial_solve(6, 1, RB_6P, m_l=0), 0, rl, PI, F)
    assert val == pytest.approx(math.sqrt(2 / 3) * abs(orb), rel=1e-12)
    with pytest.raises(ValueError):
        dipole_hyd_to_rlandau(fs, rl, PI, F)


@pytest.mark.xfail(strict=True, reason="Rb 6P and 5P elements from the quantum-defect radial "
                   "functions are 1.7e-5 and 9.5e-4 a0; they hinge on a strongly cancelling "
                   "r^3 moment of the compact orbital")
def test_excitation_anchor_dipoles():
    rl = RLQuantumNumbers(100, 0, 0, 0)
    d6 = abs(hyd_orbital_element(radial_solve(6, 1, RB_6P), 0, rl, PI, F))
    d5 = abs(hyd_orbital_element(radial_solve(5, 1, RB_5P), 0, rl, PI, F))
    assert d6 == pytest.approx(DIPOLE_6P_100, rel=0.25)
    assert d5 == pytest.approx(DIPOLE_5P_100, rel=0.25)


@pytest.mark.xfail(strict=True, reason="the 6P element changes sign near N_z = 85 and its "
                   "M = 0 value depends on N_l, so the smooth N_l-independent decrease is absent")
def test_excitation_dipole_shape():
    hs = radial_solve(6, 1, RB_6P)
    vals = np.array([hyd_orbital_element(hs, 0, RLQuantumNumbers(n, 0, 0, 0), PI, F)
                     for n in range(60, 121, 10)])
    assert np.all(np.diff(np.abs(vals)) < 0)
    by_nl = [abs(hyd_orbital_element(hs, 0, RLQuantumNumbers(100, 0, nl, 0), PI, F))
             for nl in range(3)]
    assert max(by_nl) / min(by_nl) < 1.1
