"""Positive real majorants of ``Theta* Theta``.

For a contraction ``Gamma`` with symbol ``Theta`` the function

    V(z) = sum_n V_n z^n,   V_0 = sum_k Theta_k* Theta_k,
                            V_n = 2 sum_k Theta_k* Theta_{k+n},

is positive real with ``Re V(z) >= Theta(z)* Theta(z)``, and it is the least
such function.  The positive real ``W`` with ``W(0) = I`` above
``Theta* Theta`` are exactly ``W = V + D_Gamma K D_Gamma`` where ``K`` is the
Cayley transform of a Schur-class ``C`` on the defect space of ``Gamma``.
"""

from __future__ import annotations

import numpy as np

from .analytic import TaylorFn, _evaluate_many, cayley, positive_real_margin
from .config import CLAMP_TOL, DEFAULT_SAMPLES, DEFAULT_TOL, MAJORANT_RADII, POISSON_NODES, RANK_TOL
from .exceptions import DimensionMismatch, NotPositiveReal, NotScalar, OutsideDisk, ResidualTooLarge
from .lifting import GammaOp, defect_map
from .opcore import opnorm
from .schurpair import check_schur

__all__ = [
    "v_from_theta",
    "majorant_gap",
    "w_from_contraction_parameter",
    "factor_delta",
    "poisson_cross_check",
]


def v_from_theta(theta: TaylorFn, out_degree: int | None = None) -> TaylorFn:
    """Least positive real majorant ``V`` of ``Theta* Theta`` (sums truncated at ``theta.degree``)."""
    N = theta.degree
    deg = N if out_degree is None else out_degree
    c = theta.coeffs
    out = np.zeros((deg + 1, theta.in_dim, theta.in_dim), dtype=complex)
    for n in range(min(deg, N) + 1):
        s = np.einsum("kji,kjl->il", c[: N + 1 - n].conj(), c[n:])
        out[n] = s if n == 0 else 2 * s
    return TaylorFn(out)


def majorant_gap(theta: TaylorFn, W: TaylorFn, n_samples: int = DEFAULT_SAMPLES) -> float:
    """``min psd_margin(Re W(z) - Theta(z)* Theta(z))`` over circles of radii 0.3, 0.6, 0.9, 0.99."""
    d = theta.in_dim
    if W.shape != (d, d):
        raise DimensionMismatch(f"W must be {d}x{d}, got {W.shape}")
    if d == 0:
        return float("inf")
    ang = np.exp(2j * np.pi * np.arange(n_samples) / n_samples)
    pts = np.concatenate([r * ang for r in MAJORANT_RADII])
    wv = _evaluate_many(W, pts)
    tv = _evaluate_many(theta, pts)
    m = (wv + np.conj(np.swapaxes(wv, 1, 2))) / 2 - np.conj(np.swapaxes(tv, 1, 2)) @ tv
    m = (m + np.conj(np.swapaxes(m, 1, 2))) / 2
    return float(np.linalg.eigvalsh(m)[:, 0].min())


def w_from_contraction_parameter(
    g: GammaOp,
    C: TaylorFn,
    out_degree: int | None = None,
    tol: float = DEFAULT_TOL,
    clamp_tol: float = CLAMP_TOL,
) -> TaylorFn:
    """``W = V + D_Gamma cayley(C) D_Gamma``.

    ``C`` acts on the coordinates of the range basis of ``D_Gamma``
    (see :func:`rclift.lifting.defect_map`).
    """
    _, basis, dmap = defect_map(g, clamp_tol)
    if C.shape != (basis.dim, basis.dim):
        raise DimensionMismatch(f"C must be {basis.dim}x{basis.dim}, got {C.shape}")
    check_schur(C, tol)
    deg = g.degree if out_degree is None else out_degree
    V = v_from_theta(g.theta, deg)
    if basis.dim == 0:
        return V
    K = cayley(C, deg)
    return V + K.lmul(dmap).rmul(dmap.conj().T)


def factor_delta(
    g: GammaOp,
    W: TaylorFn,
    rank_tol: float = RANK_TOL,
    tol: float = DEFAULT_TOL,
    clamp_tol: float = CLAMP_TOL,
) -> TaylorFn:
    """Solve ``W - V = D_Gamma K D_Gamma`` for ``K`` on the defect space of ``Gamma``.

    Each ``K_n`` comes from inverting ``D_Gamma`` on its range.  ``K_0`` is
    set to ``I``: its computed value differs from ``I`` only through the
    truncated tail of ``Gamma* Gamma``.

    Raises
    ------
    ResidualTooLarge
        If some ``Delta_n`` leaves ``range(D_Gamma) x range(D_Gamma)`` by more
        than ``tol``.
    NotPositiveReal
        If ``K`` fails the Toeplitz positive real test by more than ``tol``.
    """
    d = g.theta.in_dim
    if W.shape != (d, d):
        raise DimensionMismatch(f"W must be {d}x{d}, got {W.shape}")
    _, basis, dmap = defect_map(g, clamp_tol, rank_tol)
    delta = (W - v_from_theta(g.theta, W.degree)).coeffs
    k = basis.dim
    if k:
        pinv = np.linalg.pinv(dmap, rcond=1e-13)
        K = np.einsum("ij,njk,lk->nil", pinv, delta, pinv.conj())
        back = np.einsum("ij,njk,lk->nil", dmap, K, dmap.conj())
    else:
        K = np.zeros((W.degree + 1, 0, 0), dtype=complex)
        back = np.zeros_like(delta)
    resid = max(opnorm(x) for x in delta - back)
    if resid > tol:
        raise ResidualTooLarge(f"W - V is not of the form D K D: residual {resid:.3e}")
    K[0] = np.eye(k)
    Kf = TaylorFn(K)
    margin = positive_real_margin(Kf, min(16, Kf.degree + 1))
    if margin < -tol:
        raise NotPositiveReal(f"factor is not positive real: margin {margin:.3e}")
    return Kf


def poisson_cross_check(theta: TaylorFn, lam: complex, n_nodes: int = POISSON_NODES) -> tuple[complex, complex]:
    """``V(lam)`` next to a trapezoid quadrature of the Herglotz integral of ``|theta|^2``.

    Both values agree up to quadrature error (below ``1e-6`` for
    ``|lam| <= 0.9`` with the default node count).
    """
    if theta.shape != (1, 1):
        raise NotScalar(f"expected a scalar function, got shape {theta.shape}")
    lam = complex(lam)
    if abs(lam) >= 1:
        raise OutsideDisk(f"|lambda| = {abs(lam):.6g} is not inside the disk")
    v = complex(v_from_theta(theta)(lam)[0, 0])
    z = np.exp(2j * np.pi * np.arange(n_nodes) / n_nodes)
    b = _evaluate_many(theta, z)[:, 0, 0]
    q = complex(np.mean((z + lam) / (z - lam) * np.abs(b) ** 2))
    return v, q
