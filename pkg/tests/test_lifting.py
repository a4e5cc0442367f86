import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import random_solution
from rclift.analytic import TaylorFn
from rclift.dataset import build_omega, ds1, ds3, random_dataset, random_dims
from rclift.exceptions import DimensionMismatch, IndefiniteMatrix, SolutionInvalid
from rclift.lifting import (
    BlockSolution,
    GammaOp,
    Uniqueness,
    apply_solution,
    build_big_omega,
    gamma_defect,
    gamma_from_pair,
    settled_gamma,
    tail_mass,
    uniqueness_check,
    verify_solution,
)
from rclift.schurpair import SchurPair, pair_from_parameter

seeds = st.integers(0, 2**31 - 1)
N2 = np.array([[0.0, 0.0], [1.0, 0.0]])
WORKED = GammaOp(TaylorFn.from_list([[[0.0, 1.0]], [[1.0, 0.0]]]))


def test_geometric_symbol():
    p = SchurPair(TaylorFn.scalar([0.7]), TaylorFn.scalar([0.5]))
    g = gamma_from_pair(p, 10)
    np.testing.assert_allclose(g.theta.scalar_coeffs(), 0.7 * 0.5 ** np.arange(11))


def test_worked_symbol(ds3_omega, ds3_param):
    g = gamma_from_pair(pair_from_parameter(ds3_omega, ds3_param), 32)
    assert g.degree == 32
    np.testing.assert_allclose(g.theta.coeffs[:2], WORKED.theta.coeffs)
    np.testing.assert_allclose(g.theta.coeffs[2:], 0.0)


def test_zero_F_gives_zero_symbol():
    p = SchurPair(TaylorFn.zeros(1, 2, 3), TaylorFn.constant(0.9 * np.eye(2)))
    assert np.all(gamma_from_pair(p, 8).theta.coeffs == 0)


def test_verify_worked_solution():
    rep = verify_solution(ds3(), WORKED)
    assert rep.passed
    assert rep.contraction_margin == pytest.approx(0.0, abs=1e-15)
    assert rep.max_residual == 0.0


def test_zero_is_a_solution_of_ds3():
    assert verify_solution(ds3(), GammaOp(TaylorFn.zeros(1, 2, 4))).passed


def test_broken_solution_fails():
    rep = verify_solution(ds3(), GammaOp(TaylorFn.constant([[1.0, 0.0]])))
    assert rep.residuals[0] == pytest.approx(1.0)
    assert not rep.passed


def test_verify_dimension_check():
    with pytest.raises(DimensionMismatch):
        verify_solution(ds3(), GammaOp(TaylorFn.zeros(2, 2)))


def test_apply_worked_solution():
    b = BlockSolution(ds3(), WORKED)
    top, h2 = apply_solution(b, [0.0, 0.0])
    np.testing.assert_allclose(top, 0.0)
    assert h2.norm() == 0.0
    top, h2 = apply_solution(b, [0.0, 1.0])
    np.testing.assert_allclose(h2.coeffs[:, 0], [1.0, 0.0])
    top, h2 = apply_solution(b, [1.0, 0.0])
    np.testing.assert_allclose(h2.coeffs[:, 0], [0.0, 1.0])
    with pytest.raises(DimensionMismatch):
        apply_solution(b, [1.0])


def test_gamma_defect_examples():
    np.testing.assert_allclose(gamma_defect(GammaOp(TaylorFn.zeros(1, 2))), np.eye(2))
    np.testing.assert_allclose(gamma_defect(WORKED), np.zeros((2, 2)), atol=1e-15)
    assert gamma_defect(GammaOp(TaylorFn.scalar([0.5])))[0, 0] == pytest.approx(np.sqrt(3) / 2)
    with pytest.raises(IndefiniteMatrix):
        gamma_defect(GammaOp(TaylorFn.scalar([1.5])))


def test_big_omega_worked_solution():
    bo = build_big_omega(ds3(), WORKED)
    assert bo.dim == 0 and bo.FGamma_basis.dim == 0
    assert bo.Omega.shape == (0, 0)
    assert bo.isometric


def test_big_omega_zero_solution():
    bo = build_big_omega(ds3(), GammaOp(TaylorFn.zeros(1, 2, 4)))
    np.testing.assert_allclose(bo.DGamma, np.eye(2))
    np.testing.assert_allclose(bo.FGamma_basis.vectors, [[1.0], [0.0]])
    np.testing.assert_allclose(bo.Omega, [[0.0], [1.0]])
    assert bo.isometric


def test_big_omega_rejects_non_solution():
    with pytest.raises(SolutionInvalid):
        build_big_omega(ds3(), GammaOp(TaylorFn.constant([[1.0, 0.0]])))


def test_big_omega_isometric_for_exact_equality():
    for seed in range(8):
        ds, od, H, p, _ = random_solution(seed, preset="exact_equality")
        g = settled_gamma(p, 32, 1e-20)
        bo = build_big_omega(od, g)
        if bo.FGamma_basis.dim:
            w = bo.Omega
            assert np.linalg.norm(w.conj().T @ w - np.eye(w.shape[1]), 2) <= 1e-8


@given(seeds)
def test_pairs_give_solutions(seed):
    ds, od, H, p, g = random_solution(seed)
    rep = verify_solution(od, g, 1e-9)
    assert rep.contraction_margin >= -1e-9
    assert rep.max_residual <= 1e-9
    # recursion identity, written out directly
    fr = od.frame
    c = g.theta.coeffs
    for n in range(g.degree):
        assert np.linalg.norm(c[n + 1] @ fr.X - c[n] @ fr.Z, 2) <= 1e-9


@given(seeds)
def test_block_solution_is_contractive(seed):
    ds, od, H, p, g = random_solution(seed)
    rng = np.random.default_rng(seed + 1)
    h = rng.standard_normal(ds.dims[1]) + 1j * rng.standard_normal(ds.dims[1])
    top, h2 = apply_solution(BlockSolution(ds, g), h)
    np.testing.assert_allclose(top, ds.A @ h)
    assert np.linalg.norm(top) ** 2 + h2.norm() ** 2 <= np.linalg.norm(h) ** 2 + 1e-9


@given(seeds)
def test_big_omega_properties(seed):
    ds, od, H, p, _ = random_solution(seed)
    g = gamma_from_pair(p, 128)
    bo = build_big_omega(od, g)
    if bo.Omega.size:
        assert np.linalg.norm(bo.Omega, 2) <= 1 + 1e-9
    assert bo.relation_residual <= 1e-9
    assert bo.omega2_residual <= 1e-9


def test_settled_gamma_tail():
    _, _, _, p, _ = random_solution(0, preset="exact_equality")
    g = settled_gamma(p, 16, 1e-20)
    assert tail_mass(gamma_from_pair(p, 2 * g.degree), g.degree) <= 1e-20


def test_uniqueness_examples():
    assert uniqueness_check(ds1()) is Uniqueness.UNIQUE
    assert uniqueness_check(ds3()) is Uniqueness.NON_UNIQUE
    rng = np.random.default_rng(0)
    assert uniqueness_check(random_dataset(3, random_dims(rng))) is Uniqueness.NOT_APPLICABLE


def test_ds3_has_two_solutions():
    zero = GammaOp(TaylorFn.zeros(1, 2, 1))
    assert verify_solution(ds3(), zero).passed and verify_solution(ds3(), WORKED).passed
    assert zero.theta.distance(WORKED.theta) == 1.0


def test_classical_instances_are_unique():
    rng = np.random.default_rng(11)
    for seed in range(5):
        ds = random_dataset(seed, random_dims(rng, preset="classical"), "classical")
        assert uniqueness_check(ds) is Uniqueness.UNIQUE


def test_uniqueness_accepts_prebuilt_omega():
    assert uniqueness_check(ds3(), build_omega(ds3())) is Uniqueness.NON_UNIQUE
