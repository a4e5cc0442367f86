import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import random_isometric_symbol, random_solution
from rclift.analytic import TaylorFn, random_schur
from rclift.dataset import ds3
from rclift.exceptions import ParameterNotInSOmega
from rclift.jmap import (
    canonical_parameter,
    constrained_from_pair,
    constrained_to_parameter,
    j_gamma,
    parameter_to_constrained,
    s_omega_margin,
)
from rclift.lifting import GammaOp, build_big_omega, gamma_from_pair
from rclift.schurpair import parameter_from_pair, verify_pair

seeds = st.integers(0, 2**31 - 1)
N2 = np.array([[0.0, 0.0], [1.0, 0.0]])
WORKED = GammaOp(TaylorFn.from_list([[[0.0, 1.0]], [[1.0, 0.0]]]))


def zero_solution_omega():
    return build_big_omega(ds3(), GammaOp(TaylorFn.zeros(1, 2, 4)))


def test_canonical_parameter_examples():
    C = canonical_parameter(build_big_omega(ds3(), WORKED))
    assert C.shape == (0, 0)
    bo = zero_solution_omega()
    C = canonical_parameter(bo)
    np.testing.assert_allclose(C.coeffs[0], N2)
    rep = s_omega_margin(C, bo)
    assert rep.passed and rep.restriction_residual == 0.0


def test_s_omega_failures():
    bo = zero_solution_omega()
    rep = s_omega_margin(TaylorFn.zeros(2, 2), bo)
    assert rep.restriction_residual == pytest.approx(1.0) and not rep.passed
    C = canonical_parameter(bo) + TaylorFn.from_list([np.zeros((2, 2)), [[0.0, 0.0], [0.3, 0.0]]])
    rep = s_omega_margin(C, bo)
    assert rep.restriction_residual == pytest.approx(0.3) and not rep.passed


def test_parameter_to_constrained_zero():
    bo = zero_solution_omega()
    C = parameter_to_constrained(bo, TaylorFn.zeros(*bo.restriction.param_shape))
    assert C.distance(canonical_parameter(bo)) == 0.0


def test_j_gamma_zero_solution():
    g = GammaOp(TaylorFn.zeros(1, 2, 8))
    bo = build_big_omega(ds3(), g)
    C1 = TaylorFn.from_list([[[0.2]], [[0.5]]])
    C = parameter_to_constrained(bo, C1)
    p = j_gamma(g, C, big_omega=bo)
    np.testing.assert_allclose(p.F.coeffs, 0.0)
    assert p.G.distance(C, 6) <= 1e-12


def test_j_gamma_worked_example():
    p = j_gamma(WORKED)
    np.testing.assert_allclose(p.F.coeffs[0], [[0.0, 1.0]], atol=1e-15)
    np.testing.assert_allclose(p.F.coeffs[1:], 0.0, atol=1e-15)
    np.testing.assert_allclose(p.G.coeffs[0], N2, atol=1e-15)
    np.testing.assert_allclose(p.G.coeffs[1:], 0.0, atol=1e-15)


def test_j_gamma_scalar():
    g = GammaOp(TaylorFn.scalar([0.5]))
    p = j_gamma(g, TaylorFn.zeros(1, 1), out_degree=4)
    np.testing.assert_allclose(p.F.scalar_coeffs(), [0.5, 0, 0, 0, 0], atol=1e-15)
    np.testing.assert_allclose(p.G.scalar_coeffs(), 0.0, atol=1e-15)


def test_j_gamma_rejects_non_member():
    bo = zero_solution_omega()
    with pytest.raises(ParameterNotInSOmega):
        j_gamma(GammaOp(TaylorFn.zeros(1, 2, 4)), TaylorFn.zeros(2, 2), big_omega=bo)


@given(seeds)
def test_round_trip(seed):
    ds, od, H, p, g = random_solution(seed, N=32)
    bo = build_big_omega(od, g)
    rng = np.random.default_rng(seed)
    C1 = random_schur(rng, *bo.restriction.param_shape, degree=int(rng.integers(0, 3)))
    C = parameter_to_constrained(bo, C1)
    assert s_omega_margin(C, bo).passed
    assert constrained_to_parameter(bo, C).distance(C1) <= 1e-9
    q = j_gamma(g, C, big_omega=bo)
    back = gamma_from_pair(q, g.degree)
    assert back.theta.distance(g.theta, g.degree - C.degree - 2) <= 1e-8


@given(seeds)
def test_j_gamma_output_is_a_pair(seed):
    ds, od, H, p, _ = random_solution(seed)
    g = gamma_from_pair(p, 128)
    bo = build_big_omega(od, g)
    C1 = random_schur(np.random.default_rng(seed), *bo.restriction.param_shape, degree=1)
    q = j_gamma(g, parameter_to_constrained(bo, C1), big_omega=bo)
    assert verify_pair(q, tol=1e-8, omega=od).passed


@given(seeds)
def test_injectivity_witness(seed):
    ds, od, H, p, g = random_solution(seed)
    bo = build_big_omega(od, g)
    k, m = bo.restriction.param_shape
    if k == 0 or m == 0:
        return
    rng = np.random.default_rng(seed)
    C1 = random_schur(rng, k, m, 1, scale=0.4)
    E = np.zeros((k, m), dtype=complex)
    E[0, 0] = 0.4
    C1b = C1 + TaylorFn.constant(E)
    Ca, Cb = parameter_to_constrained(bo, C1), parameter_to_constrained(bo, C1b)
    # distance on G_Gamma is at least 0.4 times the smallest singular value of D_{Omega*}
    assert Ca.distance(Cb) >= 1e-3
    qa, qb = j_gamma(g, Ca, big_omega=bo), j_gamma(g, Cb, big_omega=bo)
    assert qa.G.distance(qb.G) >= 1e-6


@given(seeds)
def test_full_cycle_recovers_parameter(seed):
    ds, od, H, p, _ = random_solution(seed)
    g = gamma_from_pair(p, 128)
    C = constrained_from_pair(g, p)
    q = j_gamma(g, C, big_omega=build_big_omega(od, g))
    assert q.stacked.distance(p.stacked, 100) <= 1e-9
    assert parameter_from_pair(q, 1e-8, omega=od).distance(H, 100) <= 1e-9


@given(seeds, st.integers(1, 3), st.integers(1, 3))
def test_isometric_symbol_has_one_pair(seed, p, q):
    g = random_isometric_symbol(np.random.default_rng(seed), p, q, 4)
    a = j_gamma(g, out_degree=16)
    b = j_gamma(g, TaylorFn.zeros(0, 0, 3), out_degree=16)
    assert a.stacked.distance(b.stacked) == 0.0
