"""Solutions ``B = [A; Gamma D_A]`` and the contraction ``Omega`` they define.

``Gamma`` maps the defect space of ``A`` into the Hardy space over the defect
space of ``T'``; it is carried by its symbol ``Theta`` (a :class:`TaylorFn`
truncated at degree ``N``).  The lifting constraint becomes, coefficient by
coefficient,

    Theta_0 D_A Q = D_T' A R,      Theta_{n+1} D_A Q = Theta_n D_A R.

Every check in this module is phrased at coefficient level; the only
approximation is truncation of ``Gamma* Gamma = sum_n Theta_n* Theta_n``,
which makes the computed contraction margin and defect ``D_Gamma`` err on
the permissive side.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .analytic import TaylorFn
from .config import CLAMP_TOL, DEFAULT_DEGREE, DEFAULT_TOL, OMEGA_TOL_FACTOR, RANK_TOL
from .dataset import DataSet, DefectFrame, OmegaData, build_omega, defect_frame
from .exceptions import DimensionMismatch, SolutionInvalid
from .opcore import (
    SubspaceBasis,
    contraction_margin,
    hermitian_sqrt,
    opnorm,
    orthonormal_range,
)
from .restricted import FixedRestriction
from .schurpair import SchurPair, pair_from_parameter

__all__ = [
    "GammaOp",
    "TruncatedH2",
    "BlockSolution",
    "SolutionReport",
    "BigOmegaData",
    "Uniqueness",
    "gamma_from_pair",
    "tail_mass",
    "settled_gamma",
    "verify_solution",
    "apply_solution",
    "gamma_defect",
    "defect_map",
    "build_big_omega",
    "uniqueness_check",
]


@dataclass(frozen=True, eq=False)
class GammaOp:
    theta: TaylorFn

    @property
    def degree(self) -> int:
        return self.theta.degree

    def gram(self) -> np.ndarray:
        """Truncated ``Gamma* Gamma``."""
        c = self.theta.coeffs
        return np.einsum("nji,njk->ik", c.conj(), c)

    def contraction_margin(self) -> float:
        g = self.gram()
        if g.size == 0:
            return 1.0
        return float(1.0 - np.linalg.eigvalsh((g + g.conj().T) / 2)[-1])


@dataclass(frozen=True, eq=False)
class TruncatedH2:
    """Element of the Hardy space over ``C^d``: its first ``N + 1`` Taylor coefficients."""

    coeffs: np.ndarray

    @property
    def degree(self) -> int:
        return self.coeffs.shape[0] - 1

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def shift(self) -> "TruncatedH2":
        return TruncatedH2(np.concatenate([np.zeros_like(self.coeffs[:1]), self.coeffs]))

    @classmethod
    def embed(cls, v, degree: int = 0) -> "TruncatedH2":
        v = np.asarray(v, dtype=complex).ravel()
        c = np.zeros((degree + 1, v.size), dtype=complex)
        c[0] = v
        return cls(c)


def gamma_from_pair(p: SchurPair, N: int = DEFAULT_DEGREE) -> GammaOp:
    """Symbol ``Theta = F (I - z G)^{-1}`` through degree ``N``.

    Solved from ``Theta (I - z G) = F``:
    ``Theta_n = F_n + sum_{k<n} Theta_k G_{n-1-k}``.
    """
    F, G = p.F, p.G
    out = np.zeros((N + 1,) + F.shape, dtype=complex)
    gc = G.coeffs
    for n in range(N + 1):
        acc = F.coeff(n).copy()
        lo = max(0, n - 1 - G.degree)
        if lo < n:
            # pairs (k, n - 1 - k) for k = lo .. n - 1
            acc += np.einsum("kij,kjl->il", out[lo:n], gc[n - 1 - lo::-1][: n - lo])
        out[n] = acc
    return GammaOp(TaylorFn(out))


def tail_mass(g: GammaOp, start: int) -> float:
    """``sum_{n > start} ||Theta_n||_F^2``."""
    return float(np.sum(np.abs(g.theta.coeffs[start + 1:]) ** 2))


def settled_gamma(p: SchurPair, N: int, tol: float, max_degree: int = 4096) -> GammaOp:
    """:func:`gamma_from_pair` at the first degree ``n = N * 2**j`` such that
    coefficients ``n + 1 .. 2n`` carry mass at most ``tol``.

    Truncation errors in ``Gamma* Gamma``, and so in everything derived from
    ``D_Gamma``, are of the size of this mass.  Gives up at ``max_degree``
    and returns the last computed symbol.
    """
    n = max(N, 1)
    while True:
        g = gamma_from_pair(p, 2 * n)
        if tail_mass(g, n) <= tol:
            return GammaOp(g.theta.with_degree(n))
        if 2 * n >= max_degree:
            return g
        n *= 2


@dataclass(frozen=True)
class SolutionReport:
    contraction_margin: float
    residuals: tuple
    tol: float

    @property
    def max_residual(self) -> float:
        return max(self.residuals, default=0.0)

    @property
    def passed(self) -> bool:
        return self.contraction_margin >= -self.tol and self.max_residual <= self.tol

    def to_dict(self) -> dict:
        return {
            "contraction_margin": self.contraction_margin,
            "max_residual": self.max_residual,
            "residuals": list(self.residuals),
            "tol": self.tol,
            "note": "contraction margin uses truncated Gamma*Gamma, a lower bound of the true Gram",
            "pass": self.passed,
        }


def _frame(ds_or_od) -> DefectFrame:
    if isinstance(ds_or_od, OmegaData):
        return ds_or_od.frame
    if isinstance(ds_or_od, DefectFrame):
        return ds_or_od
    return defect_frame(ds_or_od)


def verify_solution(ds: DataSet | OmegaData, g: GammaOp, tol: float = DEFAULT_TOL) -> SolutionReport:
    """Contraction margin and coefficient residuals of the fundamental equation.

    ``r_0 = ||Theta_0 X - Y||`` and ``r_{n+1} = ||Theta_{n+1} X - Theta_n Z||``
    for ``n < N``, with ``X, Y, Z`` the coordinates of ``D_A Q``,
    ``D_T' A R`` and ``D_A R``.
    """
    fr = _frame(ds)
    th = g.theta
    if th.shape != (fr.dT, fr.dA):
        raise DimensionMismatch(f"symbol has shape {th.shape}, data set needs {(fr.dT, fr.dA)}")
    c = th.coeffs
    res = [opnorm(c[0] @ fr.X - fr.Y)]
    res += [opnorm(c[n + 1] @ fr.X - c[n] @ fr.Z) for n in range(th.degree)]
    return SolutionReport(g.contraction_margin(), tuple(res), tol)


@dataclass(frozen=True, eq=False)
class BlockSolution:
    ds_ref: DataSet
    gamma: GammaOp

    def apply(self, h):
        return apply_solution(self, h)


def apply_solution(b: BlockSolution, h) -> tuple[np.ndarray, TruncatedH2]:
    """``B h = (A h, Theta(.) D_A h)``; the second part in ``D_T'`` coordinates."""
    h = np.asarray(h, dtype=complex).ravel()
    if h.size != b.ds_ref.A.shape[1]:
        raise DimensionMismatch(f"vector of length {h.size}, expected {b.ds_ref.A.shape[1]}")
    fr = defect_frame(b.ds_ref)
    d = fr.defect_A_coords(h)
    if b.gamma.theta.in_dim != d.size:
        raise DimensionMismatch("symbol does not act on the defect space of A")
    return b.ds_ref.A @ h, TruncatedH2(b.gamma.theta.coeffs @ d)


def gamma_defect(g: GammaOp, clamp_tol: float = CLAMP_TOL) -> np.ndarray:
    """``D_Gamma = (I - Gamma* Gamma)^{1/2}`` from the truncated Gram matrix.

    Truncation makes the computed defect dominate the true one.
    """
    return hermitian_sqrt(np.eye(g.theta.in_dim) - g.gram(), clamp_tol)


def defect_map(g: GammaOp, clamp_tol: float = CLAMP_TOL, rank_tol: float = RANK_TOL):
    """``(D_Gamma, basis, Dmap)`` where ``Dmap = D_Gamma`` restricted to its range.

    ``Dmap`` has shape ``(dim E, dim D_Gamma)``; functions on the defect space
    of ``Gamma`` act on the coordinates of ``basis``.
    """
    D = gamma_defect(g, clamp_tol)
    basis = orthonormal_range(D, rank_tol) if D.size else SubspaceBasis.empty(0, rank_tol)
    return D, basis, D @ basis.vectors


@dataclass(frozen=True, eq=False)
class BigOmegaData:
    """``Omega`` from ``Omega D_Gamma D_A Q h = D_Gamma D_A R h``.

    All subspaces are given in coordinates of ``DGamma_basis``.
    """

    DGamma: np.ndarray
    DGamma_basis: SubspaceBasis
    FGamma_basis: SubspaceBasis
    Omega: np.ndarray
    GGamma_basis: SubspaceBasis
    OmegaStar_defect: np.ndarray
    OmegaStar_basis: SubspaceBasis
    isometric: bool
    relation_residual: float
    omega2_residual: float
    restriction: FixedRestriction

    @property
    def dim(self) -> int:
        return self.DGamma_basis.dim

    @property
    def defect_map(self) -> np.ndarray:
        return self.DGamma @ self.DGamma_basis.vectors

    def summary(self) -> dict:
        return {
            "dim_DGamma": self.dim,
            "dim_FGamma": self.FGamma_basis.dim,
            "dim_GGamma": self.GGamma_basis.dim,
            "dim_OmegaStar": self.OmegaStar_basis.dim,
            "Omega_margin": contraction_margin(self.Omega),
            "relation_residual": self.relation_residual,
            "omega2_residual": self.omega2_residual,
            "isometric": self.isometric,
        }


def build_big_omega(
    ds: DataSet | OmegaData,
    g: GammaOp,
    rank_tol: float = RANK_TOL,
    tol: float = OMEGA_TOL_FACTOR * DEFAULT_TOL,
    clamp_tol: float = CLAMP_TOL,
) -> BigOmegaData:
    """Build ``Omega`` for a verified solution ``g``.

    Raises
    ------
    SolutionInvalid
        If ``g`` fails :func:`verify_solution` at ``tol`` or the computed
        ``Omega`` is not contractive within ``tol``.
    """
    od = ds if isinstance(ds, OmegaData) else build_omega(ds, rank_tol)
    report = verify_solution(od, g, tol)
    if not report.passed:
        raise SolutionInvalid(f"not a solution: {report.to_dict()}")
    fr = od.frame
    D, basis, _ = defect_map(g, clamp_tol, rank_tol)
    red = basis.coords(D)  # D_Gamma as a map into its own coordinates
    xg = red @ fr.X
    zg = red @ fr.Z
    FG = orthonormal_range(xg, rank_tol) if xg.size else SubspaceBasis.empty(basis.dim, rank_tol)
    fx = FG.coords(xg)
    if FG.dim:
        Omega = zg @ np.linalg.pinv(fx, rcond=1e-13)
        rel = opnorm(Omega @ fx - zg)
    else:
        Omega = np.zeros((basis.dim, 0), dtype=complex)
        rel = opnorm(zg)
    if contraction_margin(Omega) < -tol:
        raise SolutionInvalid(f"Omega is not contractive: norm {opnorm(Omega):.12f}")
    GG = FG.complement()
    m = basis.dim
    Dstar = hermitian_sqrt(np.eye(m) - Omega @ Omega.conj().T, clamp_tol)
    Dbasis = orthonormal_range(Dstar, rank_tol) if m else SubspaceBasis.empty(0, rank_tol)
    # Omega D_Gamma f = D_Gamma omega_2 f for f in F
    if od.F_basis.dim and FG.dim:
        lhs = Omega @ FG.coords(red @ od.F_basis.vectors)
        o2 = opnorm(lhs - red @ od.omega2)
    else:
        o2 = opnorm(red @ od.omega2) if od.F_basis.dim else 0.0
    isometric = opnorm(Omega.conj().T @ Omega - np.eye(FG.dim)) <= tol
    return BigOmegaData(
        DGamma=D,
        DGamma_basis=basis,
        FGamma_basis=FG,
        Omega=Omega,
        GGamma_basis=GG,
        OmegaStar_defect=Dstar,
        OmegaStar_basis=Dbasis,
        isometric=bool(isometric),
        relation_residual=rel,
        omega2_residual=o2,
        restriction=FixedRestriction(Omega, FG, GG, Dstar, Dbasis),
    )


class Uniqueness(str, Enum):
    UNIQUE = "unique"
    NON_UNIQUE = "non_unique"
    NOT_APPLICABLE = "not_applicable"


def _is_isometry(m: np.ndarray, tol: float) -> bool:
    return opnorm(m.conj().T @ m - np.eye(m.shape[1])) <= tol


def _witness_parameters(od: OmegaData):
    k, gdim = od.restriction.param_shape
    half = np.zeros((k, gdim), dtype=complex)
    np.fill_diagonal(half, 0.5)
    rng = np.random.default_rng(0)
    z = rng.standard_normal((k, gdim)) + 1j * rng.standard_normal((k, gdim))
    return [TaylorFn.constant(half), TaylorFn.constant(0.5 * z / max(opnorm(z), 1e-300))]


def uniqueness_check(ds: DataSet, od: OmegaData | None = None, tol: float = DEFAULT_TOL) -> Uniqueness:
    """Decide whether the lifting problem has exactly one solution.

    Applicable when ``R`` and ``Q`` are isometries (this contains the
    classical setting ``R = I``, ``Q`` isometric).  Then:

    * ``unique`` if ``F`` is all of ``D_A`` or ``omega F`` is all of
      ``D_T' (+) D_A``.  Then the Schur pair is unique, and pairs map onto
      solutions;
    * ``non_unique`` otherwise when ``R = I`` (pairs and solutions are in
      bijection), or when ``R != I`` and two parameters are exhibited that
      give different symbols;
    * ``not_applicable`` in every other case.
    """
    if not (_is_isometry(ds.R, tol) and _is_isometry(ds.Q, tol)):
        return Uniqueness.NOT_APPLICABLE
    od = od if od is not None else build_omega(ds)
    full_F = od.G_basis.dim == 0
    target = od.dT + od.dA
    omega_onto = (np.linalg.matrix_rank(od.omega, tol=1e-9) if od.omega.size else 0) == target
    if full_F or omega_onto or od.Dstar_basis.dim == 0:
        return Uniqueness.UNIQUE
    classical = ds.R.shape[0] == ds.R.shape[1] and opnorm(ds.R - np.eye(ds.R.shape[0])) <= tol
    if classical:
        return Uniqueness.NON_UNIQUE
    zero = TaylorFn.zeros(*od.restriction.param_shape)
    base = gamma_from_pair(pair_from_parameter(od, zero), 8).theta
    for H in _witness_parameters(od):
        other = gamma_from_pair(pair_from_parameter(od, H), 8).theta
        if base.distance(other) > 1e-6:
            return Uniqueness.NON_UNIQUE
    return Uniqueness.NOT_APPLICABLE
