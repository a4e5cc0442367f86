"""One test per acceptance criterion; each prints a PASS/FAIL line."""

import subprocess
import sys
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from helpers import random_contraction_symbol, random_isometric_symbol
from rclift.analytic import TaylorFn, cayley, inverse_cayley, positive_real_margin, random_schur
from rclift.dataset import PRESETS, build_omega, ds3, random_dataset, random_dims
from rclift.jmap import j_gamma, parameter_to_constrained
from rclift.lifting import (
    GammaOp,
    Uniqueness,
    build_big_omega,
    defect_map,
    gamma_defect,
    gamma_from_pair,
    uniqueness_check,
    verify_solution,
)
from rclift.majorant import (
    factor_delta,
    majorant_gap,
    poisson_cross_check,
    v_from_theta,
    w_from_contraction_parameter,
)
from rclift.schurpair import pair_from_parameter, parameter_from_pair

SUITE_START = time.perf_counter()
N2 = np.array([[0.0, 0.0], [1.0, 0.0]])


def report(number, ok, detail):
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def test_criterion_01_worked_example():
    t0 = time.perf_counter()
    od = build_omega(ds3())
    errs = [
        np.abs(od.omega1).max(),
        np.abs(od.omega2 @ [1.0] - [0.0, 1.0]).max(),
    ]
    p = pair_from_parameter(od, TaylorFn.constant([[1.0], [0.0]]))
    errs += [np.abs(p.F.coeffs[0] - [[0.0, 1.0]]).max(), np.abs(p.G.coeffs[0] - N2).max()]
    errs += [np.abs(p.F.coeffs[1:]).max(initial=0.0), np.abs(p.G.coeffs[1:]).max(initial=0.0)]
    g = gamma_from_pair(p, 32)
    th = g.theta.coeffs
    errs += [np.abs(th[0] - [[0.0, 1.0]]).max(), np.abs(th[1] - [[1.0, 0.0]]).max(), np.abs(th[2:]).max()]
    rep = verify_solution(ds3(), g)
    errs += [abs(rep.contraction_margin), rep.max_residual]
    q = j_gamma(g)
    errs += [q.F.distance(p.F), q.G.distance(p.G)]
    elapsed = time.perf_counter() - t0
    worst = max(errs)
    report(1, worst <= 1e-12 and elapsed < 1.0, f"DS3 max deviation {worst:.1e}, {elapsed:.3f}s")


def test_criterion_02_pairs_give_solutions():
    t0 = time.perf_counter()
    worst_margin, worst_resid = np.inf, 0.0
    for seed in range(200):
        rng = np.random.default_rng(seed)
        od = build_omega(random_dataset(seed, random_dims(rng, 6)))
        H = random_schur(rng, *od.restriction.param_shape, degree=int(rng.integers(0, 4)))
        g = gamma_from_pair(pair_from_parameter(od, H), 32)
        rep = verify_solution(od, g, 1e-9)
        worst_margin = min(worst_margin, rep.contraction_margin)
        worst_resid = max(worst_resid, rep.max_residual)
    elapsed = time.perf_counter() - t0
    ok = worst_margin >= -1e-9 and worst_resid <= 1e-9 and elapsed < 60
    report(2, ok, f"200 sets: min margin {worst_margin:.3f}, max residual {worst_resid:.1e}, {elapsed:.1f}s")


def test_criterion_03_round_trip_and_injectivity():
    t0 = time.perf_counter()
    N = 32
    worst = 0.0
    witnesses, min_gap = 0, np.inf
    for seed in range(50):
        rng = np.random.default_rng(1000 + seed)
        preset = PRESETS[seed % len(PRESETS)]
        od = build_omega(random_dataset(1000 + seed, random_dims(rng, 6, preset), preset))
        H = random_schur(rng, *od.restriction.param_shape, degree=int(rng.integers(0, 4)))
        g = gamma_from_pair(pair_from_parameter(od, H), N)
        bo = build_big_omega(od, g)
        k, m = bo.restriction.param_shape
        C1 = random_schur(rng, k, m, degree=int(rng.integers(0, 3)), scale=0.5)
        C = parameter_to_constrained(bo, C1)
        back = gamma_from_pair(j_gamma(g, C, big_omega=bo), N)
        worst = max(worst, back.theta.distance(g.theta, N - 4))
        if witnesses < 20 and k and m:
            E = np.zeros((k, m), dtype=complex)
            E[0, 0] = 0.4
            Cb = parameter_to_constrained(bo, C1 + TaylorFn.constant(E))
            if Cb.distance(C) >= 0.1:
                qa, qb = j_gamma(g, C, big_omega=bo), j_gamma(g, Cb, big_omega=bo)
                min_gap = min(min_gap, qa.G.distance(qb.G))
                witnesses += 1
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-8 and witnesses == 20 and min_gap >= 1e-6 and elapsed < 120
    report(
        3,
        ok,
        f"50 round trips: max error {worst:.1e}; {witnesses} witnesses, min G gap {min_gap:.2e}; {elapsed:.1f}s",
    )


def test_criterion_04_pair_bijection():
    worst = 0.0
    for seed in range(100):
        rng = np.random.default_rng(2000 + seed)
        od = build_omega(random_dataset(2000 + seed, random_dims(rng, 6)))
        H = random_schur(rng, *od.restriction.param_shape, degree=int(rng.integers(0, 4)))
        p = pair_from_parameter(od, H)
        H2 = parameter_from_pair(p)
        p2 = pair_from_parameter(od, H2)
        worst = max(worst, H2.distance(H), p2.stacked.distance(p.stacked))
    report(4, worst <= 1e-9, f"100 instances: max round-trip error {worst:.1e}")


def test_criterion_05_majorants():
    gap_v, pr_v, pr_d, fac = np.inf, np.inf, np.inf, 0.0
    for seed in range(100):
        rng = np.random.default_rng(3000 + seed)
        p, q = int(rng.integers(1, 5)), int(rng.integers(1, 5))
        g = random_contraction_symbol(rng, p, q, int(rng.integers(0, 17)), mass=float(rng.uniform(0.3, 0.95)))
        g = GammaOp(g.theta.with_degree(16))
        V = v_from_theta(g.theta, 16)
        gap_v = min(gap_v, majorant_gap(g.theta, V, 64))
        pr_v = min(pr_v, positive_real_margin(V, 16))
        k = defect_map(g)[1].dim
        C = random_schur(rng, k, k, int(rng.integers(0, 4)))
        W = w_from_contraction_parameter(g, C, 16)
        pr_d = min(pr_d, positive_real_margin(W - V, 16))
        fac = max(fac, factor_delta(g, W).distance(cayley(C, 16)))
    ok = min(gap_v, pr_v, pr_d) >= -1e-8 and fac <= 1e-9
    report(
        5,
        ok,
        f"100 symbols: gap(V) {gap_v:.1e}, PR(V) {pr_v:.1e}, PR(W-V) {pr_d:.1e}, factor error {fac:.1e}",
    )


def test_criterion_06_cayley_bijection():
    worst, margin = 0.0, np.inf
    for seed in range(100):
        rng = np.random.default_rng(4000 + seed)
        n, deg = int(rng.integers(1, 5)), int(rng.integers(0, 7))
        C = random_schur(rng, n, n, deg)
        K = cayley(C, 32)
        worst = max(worst, inverse_cayley(K, deg).distance(C))
        margin = min(margin, positive_real_margin(K, 16))
    report(6, worst <= 1e-10 and margin >= -1e-9, f"100 functions: inverse error {worst:.1e}, PR margin {margin:.1e}")


def test_criterion_07_isometry_collapse():
    symbols = [GammaOp(TaylorFn.from_list([[[0.0, 1.0]], [[1.0, 0.0]]]))]
    rng = np.random.default_rng(5000)
    while len(symbols) < 20:
        p, q = int(rng.integers(1, 4)), int(rng.integers(1, 4))
        symbols.append(random_isometric_symbol(rng, p, q, int(rng.integers(0, 6))))
    worst_d, worst_j, worst_w = 0.0, 0.0, 0.0
    for g in symbols:
        worst_d = max(worst_d, np.abs(gamma_defect(g)).max())
        assert defect_map(g)[1].dim == 0
        empty = [TaylorFn.zeros(0, 0, d) for d in (0, 2, 5)]
        pairs = [j_gamma(g, C, out_degree=24) for C in empty]
        worst_j = max(worst_j, *(a.stacked.distance(pairs[0].stacked) for a in pairs))
        V = v_from_theta(g.theta, 24)
        Ws = [w_from_contraction_parameter(g, C, 24) for C in empty]
        worst_w = max(worst_w, *(W.distance(V) for W in Ws))
        assert factor_delta(g, V).shape == (0, 0)
    ok = worst_d <= 1e-9 and worst_j == 0.0 and worst_w == 0.0
    report(7, ok, f"20 isometric symbols: max |D_Gamma| {worst_d:.1e}, pair spread {worst_j}, W - V {worst_w}")


def test_criterion_08_classical_uniqueness():
    verdicts, spread = [], 0.0
    for seed in range(20):
        rng = np.random.default_rng(6000 + seed)
        ds = random_dataset(6000 + seed, random_dims(rng, 6, "classical"), "classical")
        od = build_omega(ds)
        assert od.F_basis.dim == od.dA
        verdicts.append(uniqueness_check(ds, od))
        shape = od.restriction.param_shape
        H1 = TaylorFn(rng.standard_normal((3,) + shape))
        H2 = TaylorFn(rng.standard_normal((2,) + shape))
        t1 = gamma_from_pair(pair_from_parameter(od, H1), 32).theta
        t2 = gamma_from_pair(pair_from_parameter(od, H2), 32).theta
        spread = max(spread, t1.distance(t2, 32))
    ds = ds3()
    od = build_omega(ds)
    ds3_verdict = uniqueness_check(ds, od)
    a = gamma_from_pair(pair_from_parameter(od, TaylorFn.zeros(2, 1)), 8)
    b = gamma_from_pair(pair_from_parameter(od, TaylorFn.constant([[1.0], [0.0]])), 8)
    distinct = verify_solution(ds, a).passed and verify_solution(ds, b).passed and a.theta.distance(b.theta) > 0.5
    ok = all(v is Uniqueness.UNIQUE for v in verdicts) and spread <= 1e-9
    ok = ok and ds3_verdict is Uniqueness.NON_UNIQUE and distinct
    report(
        8,
        ok,
        f"20 classical: {sum(v is Uniqueness.UNIQUE for v in verdicts)} unique, Theta spread {spread:.1e}; "
        f"DS3 {ds3_verdict.value} with distinct solutions {distinct}",
    )


def test_criterion_09_poisson():
    thetas = [TaylorFn.scalar([0, 1]), TaylorFn.scalar([0.5, 0.5]), TaylorFn.scalar([0.3, 0, 0.4])]
    pts = [r * np.exp(2j * np.pi * k / 16) for r in (0.0, 0.3, 0.6, 0.9) for k in range(16)]
    worst = max(abs(np.subtract(*poisson_cross_check(th, lam, 4096))) for th in thetas for lam in pts)
    report(9, worst <= 1e-6, f"3 functions x {len(pts)} points: max discrepancy {worst:.1e}")


def test_criterion_10_determinism_and_budget(tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"seed7_{i}.json"
        subprocess.run(
            [sys.executable, "-m", "rclift.cli", "gen", "--seed", "7", "-o", str(path)],
            check=True,
            capture_output=True,
        )
        outs.append(path.read_bytes())
    elapsed = time.perf_counter() - SUITE_START
    ok = outs[0] == outs[1] and len(outs[0]) > 0 and elapsed < 300
    report(10, ok, f"gen --seed 7 identical: {outs[0] == outs[1]}; acceptance suite {elapsed:.1f}s")
