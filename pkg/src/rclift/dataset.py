"""Problem instances, their validation, and the coupling contraction omega.

A data set consists of four matrices

    A : H -> H'        a contraction
    T': H' -> H'       a contraction
    R, Q : H0 -> H     with  T' A R = A Q  and  R*R <= Q*Q.

The isometric lifting of ``T'`` is fixed to the Sz.-Nagy--Schaffer form on
``H' (+) H^2(D_T')`` and never materialized.

Coordinates
-----------
Defect spaces are handled in coordinates.  The defect space of ``A`` is the
range of ``D_A = (I - A*A)^{1/2}``; :func:`defect_frame` picks the canonical
orthonormal basis of it (the standard basis whenever ``D_A`` is invertible)
and every Taylor function downstream acts on those coordinates.  The same
holds for ``D_T'``.  The coupling contraction ``omega`` maps coordinates of
the subspace ``F`` (the closure of the range of ``D_A Q``) into the
coordinates of ``D_T' (+) D_A``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import CLAMP_TOL, DEFAULT_TOL, MAX_RETRIES, RANK_TOL
from .exceptions import DimensionMismatch, GenerationFailed, ValidationFailed
from .opcore import (
    SubspaceBasis,
    as_matrix,
    contraction_margin,
    hermitian_sqrt,
    opnorm,
    orthonormal_range,
    psd_margin,
    random_isometry,
    random_unitary,
)
from .restricted import FixedRestriction

__all__ = [
    "DataSet",
    "ValidationReport",
    "DefectFrame",
    "OmegaData",
    "validate",
    "defect_frame",
    "build_omega",
    "random_dataset",
    "random_dims",
    "PRESETS",
    "ds1",
    "ds3",
    "ds4",
]

PRESETS = ("generic", "exact_equality", "treil_volberg", "classical")


@dataclass(frozen=True, eq=False)
class DataSet:
    A: np.ndarray
    Tprime: np.ndarray
    R: np.ndarray
    Q: np.ndarray

    def __post_init__(self):
        A = as_matrix(self.A)
        nHp, nH = A.shape
        Tp = as_matrix(self.Tprime, nHp, nHp)
        R = as_matrix(self.R, rows=nH)
        Q = as_matrix(self.Q, rows=nH, cols=R.shape[1])
        for name, val in (("A", A), ("Tprime", Tp), ("R", R), ("Q", Q)):
            val.setflags(write=False)
            object.__setattr__(self, name, val)

    @property
    def dims(self) -> tuple[int, int, int]:
        """``(dim H0, dim H, dim H')``."""
        return self.R.shape[1], self.A.shape[1], self.A.shape[0]


@dataclass(frozen=True)
class ValidationReport:
    intertwining_residual: float
    inequality_margin: float
    A_margin: float
    Tprime_margin: float
    tol: float

    @property
    def passed(self) -> bool:
        return (
            self.intertwining_residual <= self.tol
            and self.inequality_margin >= -self.tol
            and self.A_margin >= -self.tol
            and self.Tprime_margin >= -self.tol
        )

    def to_dict(self) -> dict:
        return {
            "intertwining_residual": self.intertwining_residual,
            "inequality_margin": self.inequality_margin,
            "A_margin": self.A_margin,
            "Tprime_margin": self.Tprime_margin,
            "tol": self.tol,
            "pass": self.passed,
        }


def validate(ds: DataSet, tol: float = 1e-10) -> ValidationReport:
    """Check ``T'AR = AQ``, ``R*R <= Q*Q`` and contractivity of ``A``, ``T'``."""
    return ValidationReport(
        intertwining_residual=opnorm(ds.Tprime @ ds.A @ ds.R - ds.A @ ds.Q),
        inequality_margin=psd_margin(ds.Q.conj().T @ ds.Q - ds.R.conj().T @ ds.R),
        A_margin=contraction_margin(ds.A),
        Tprime_margin=contraction_margin(ds.Tprime),
        tol=tol,
    )


@dataclass(frozen=True, eq=False)
class DefectFrame:
    """Defect operators of ``A`` and ``T'`` together with their coordinates.

    ``X``, ``Y`` and ``Z`` are the coordinate matrices of ``D_A Q``,
    ``D_T' A R`` and ``D_A R``; the fundamental equation of a lifting reads
    ``Theta_0 X = Y`` and ``Theta_{n+1} X = Theta_n Z``.
    """

    DA: np.ndarray
    DT: np.ndarray
    A_basis: SubspaceBasis
    T_basis: SubspaceBasis
    X: np.ndarray
    Y: np.ndarray
    Z: np.ndarray

    @property
    def dA(self) -> int:
        return self.A_basis.dim

    @property
    def dT(self) -> int:
        return self.T_basis.dim

    def defect_A_coords(self, h: np.ndarray) -> np.ndarray:
        """Coordinates of ``D_A h`` in the defect space of ``A``."""
        return self.A_basis.coords(self.DA @ h)


def defect_frame(ds: DataSet, rank_tol: float = RANK_TOL, clamp_tol: float = CLAMP_TOL) -> DefectFrame:
    nHp = ds.A.shape[0]
    nH = ds.A.shape[1]
    DA = hermitian_sqrt(np.eye(nH) - ds.A.conj().T @ ds.A, clamp_tol)
    DT = hermitian_sqrt(np.eye(nHp) - ds.Tprime.conj().T @ ds.Tprime, clamp_tol)
    UA = orthonormal_range(DA, rank_tol)
    UT = orthonormal_range(DT, rank_tol)
    return DefectFrame(
        DA=DA,
        DT=DT,
        A_basis=UA,
        T_basis=UT,
        X=UA.coords(DA @ ds.Q),
        Y=UT.coords(DT @ ds.A @ ds.R),
        Z=UA.coords(DA @ ds.R),
    )


@dataclass(frozen=True, eq=False)
class OmegaData:
    """The coupling contraction ``omega`` and the subspaces around it.

    ``omega`` has shape ``(dT + dA, dim F)``: it maps coordinates of
    ``F_basis`` to coordinates of ``D_T' (+) D_A``.  ``F_basis`` and
    ``G_basis`` live in the coordinates of the defect space of ``A``;
    ``Dstar_basis`` spans the range of ``Dstar_defect = (I - omega omega*)^{1/2}``.
    """

    frame: DefectFrame
    F_basis: SubspaceBasis
    omega: np.ndarray
    G_basis: SubspaceBasis
    Dstar_defect: np.ndarray
    Dstar_basis: SubspaceBasis
    isometric: bool
    relation_residual: float
    restriction: FixedRestriction = field(repr=False)

    @property
    def dA(self) -> int:
        return self.frame.dA

    @property
    def dT(self) -> int:
        return self.frame.dT

    @property
    def omega1(self) -> np.ndarray:
        return self.omega[: self.dT]

    @property
    def omega2(self) -> np.ndarray:
        return self.omega[self.dT:]

    def summary(self) -> dict:
        return {
            "dim_H0": int(self.frame.X.shape[1]),
            "dim_DA": self.dA,
            "dim_DTprime": self.dT,
            "dim_F": self.F_basis.dim,
            "dim_G": self.G_basis.dim,
            "dim_Dstar": self.Dstar_basis.dim,
            "omega_margin": contraction_margin(self.omega),
            "relation_residual": self.relation_residual,
            "isometric": self.isometric,
        }


def build_omega(
    ds: DataSet,
    rank_tol: float = RANK_TOL,
    tol: float = DEFAULT_TOL,
    clamp_tol: float = CLAMP_TOL,
) -> OmegaData:
    """Construct ``omega`` from ``omega D_A Q h = (D_T' A R h, D_A R h)``.

    ``omega`` is obtained by least squares on the coordinates of ``F``; for a
    valid data set the defining relation is consistent and the solution is
    exact up to round-off (``relation_residual`` reports it).

    Raises
    ------
    ValidationFailed
        If the data set violates its constraints beyond ``1e-10``.
    """
    report = validate(ds, max(tol / 10, 1e-10))
    if not report.passed:
        raise ValidationFailed(f"data set violates its constraints: {report.to_dict()}")
    frame = defect_frame(ds, rank_tol, clamp_tol)
    F = orthonormal_range(frame.X, rank_tol) if frame.X.size else SubspaceBasis.empty(frame.dA, rank_tol)
    target = np.vstack([frame.Y, frame.Z])
    fx = F.coords(frame.X)
    if F.dim:
        omega = target @ np.linalg.pinv(fx, rcond=1e-13)
        residual = opnorm(omega @ fx - target)
    else:
        omega = np.zeros((frame.dT + frame.dA, 0), dtype=complex)
        residual = opnorm(target)
    G = F.complement()
    m = frame.dT + frame.dA
    Dstar = hermitian_sqrt(np.eye(m) - omega @ omega.conj().T, clamp_tol)
    Dbasis = orthonormal_range(Dstar, rank_tol) if m else SubspaceBasis.empty(0, rank_tol)
    isometric = opnorm(omega.conj().T @ omega - np.eye(F.dim)) <= tol
    return OmegaData(
        frame=frame,
        F_basis=F,
        omega=omega,
        G_basis=G,
        Dstar_defect=Dstar,
        Dstar_basis=Dbasis,
        isometric=bool(isometric),
        relation_residual=residual,
        restriction=FixedRestriction(omega, F, G, Dstar, Dbasis),
    )


# -- generators ---------------------------------------------------------------


def _gaussian(rng, *shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def _scaled(rng, m, lo, hi):
    nrm = opnorm(m)
    return m * (rng.uniform(lo, hi) / nrm) if nrm > 0 else m


def _intertwining_nullspace(Tp, R, Q):
    # vec(T' A R - A Q) = (R^T kron T' - Q^T kron I) vec(A), column-major vec
    nHp = Tp.shape[0]
    L = np.kron(R.T, Tp) - np.kron(Q.T, np.eye(nHp))
    if L.shape[0] == 0:
        return np.eye(L.shape[1], dtype=complex)
    _, s, vh = np.linalg.svd(L)
    scale = s[0] if s.size else 1.0
    rank = int(np.sum(s > 1e-10 * max(scale, 1.0)))
    return vh[rank:].conj().T


def _eigen_count(rng, nH, nHp):
    kmax = min(nH, nHp)
    # leave part of H' free so that T' keeps a nonzero defect
    return kmax if nHp > kmax else max(1, kmax - 1)


def _eigen_tprime(rng, mu, nHp):
    # T' = V diag(mu) V* (+) M on the complement of range V.  If the mu are
    # eigenvalues of a normal part of Q with eigenvectors E, then A = V E*
    # satisfies T'A = AQ.
    k = len(mu)
    V = random_isometry(rng, nHp, k)
    P = np.eye(nHp) - V @ V.conj().T
    M = _scaled(rng, _gaussian(rng, nHp, nHp), 0.5, 0.9)
    return V @ np.diag(mu) @ V.conj().T + P @ M @ P


def _classical_pair(rng, nH, nHp):
    from scipy.linalg import schur

    Q = random_unitary(rng, nH)
    tri, _ = schur(Q, output="complex")
    mu = np.diag(tri)
    pick = rng.choice(nH, size=_eigen_count(rng, nH, nHp), replace=False)
    return Q, _eigen_tprime(rng, mu[pick], nHp)


def _treil_volberg_pair(rng, nH, nHp):
    # Q = W blockdiag(diag(mu), B) W* with |mu| = 1 and sigma_min(B) >= 1
    k = max(1, min(nH - 1, nHp - 1))
    mu = np.exp(2j * np.pi * rng.uniform(size=k))
    W = random_unitary(rng, nH)
    core = np.zeros((nH, nH), dtype=complex)
    core[:k, :k] = np.diag(mu)
    if nH > k:
        s = rng.uniform(1.0, 1.5, nH - k)
        core[k:, k:] = random_unitary(rng, nH - k) @ np.diag(s) @ random_unitary(rng, nH - k)
    Q = W @ core @ W.conj().T
    return Q, _eigen_tprime(rng, mu, nHp)


def random_dataset(
    seed: int,
    dims: tuple[int, int, int],
    preset: str = "generic",
    max_retries: int = MAX_RETRIES,
) -> DataSet:
    """Seeded random data set satisfying all constraints to ``1e-10``.

    ``dims`` is ``(dim H0, dim H, dim H')``.  Presets:

    ``generic``
        ``R = M Q`` with ``||M|| < 1``, hence ``R*R <= Q*Q`` strictly.
    ``exact_equality``
        ``R = U Q`` with ``U`` unitary, hence ``R*R = Q*Q``.
    ``treil_volberg``
        ``H0 = H``, ``R = I`` and ``Q`` with ``Q*Q >= I``; ``Q`` has a
        unimodular eigenvalue shared with ``T'``.
    ``classical``
        ``H0 = H``, ``R = I`` and ``Q`` unitary; ``T'`` is built to share
        eigenvalues with ``Q`` so that nonzero ``A`` exist.

    ``A`` is a random element of the solution space of ``T'AR = AQ``
    rescaled to norm in ``[0.3, 0.9]``.  Draws with only ``A = 0`` available
    are retried.

    Raises
    ------
    GenerationFailed
        After ``max_retries`` unsuccessful draws.
    """
    if preset not in PRESETS:
        raise ValueError(f"unknown preset {preset!r}; choose from {PRESETS}")
    n0, nH, nHp = (int(d) for d in dims)
    if min(n0, nH, nHp) < 1:
        raise ValueError("all dimensions must be positive")
    if preset in ("classical", "treil_volberg") and n0 != nH:
        raise DimensionMismatch(f"preset {preset!r} requires dim H0 == dim H")
    rng = np.random.default_rng(seed)
    for _ in range(max_retries):
        if preset == "classical":
            R = np.eye(nH, dtype=complex)
            Q, Tp = _classical_pair(rng, nH, nHp)
        elif preset == "treil_volberg":
            R = np.eye(nH, dtype=complex)
            Q, Tp = _treil_volberg_pair(rng, nH, nHp)
        else:
            Tp = _scaled(rng, _gaussian(rng, nHp, nHp), 0.5, 0.95)
            Q = _gaussian(rng, nH, n0)
            if preset == "generic":
                R = _scaled(rng, _gaussian(rng, nH, nH), 0.5, 0.95) @ Q
            else:
                R = random_unitary(rng, nH) @ Q
        N = _intertwining_nullspace(Tp, R, Q)
        if N.shape[1] == 0:
            continue
        a = N @ (N.conj().T @ _gaussian(rng, nHp * nH))
        if np.linalg.norm(a) < 1e-8:
            continue
        A = _scaled(rng, a.reshape((nHp, nH), order="F"), 0.3, 0.9)
        ds = DataSet(A, Tp, R, Q)
        if validate(ds, 1e-10).passed:
            return ds
    raise GenerationFailed(
        f"no data set with nonzero A found for dims={dims}, preset={preset!r}, seed={seed}"
    )


def random_dims(rng: np.random.Generator, max_dim: int = 6, preset: str = "generic") -> tuple[int, int, int]:
    """Dimensions for which :func:`random_dataset` reliably finds nonzero ``A``."""
    nH = int(rng.integers(2, max_dim + 1))
    nHp = int(rng.integers(1, max_dim + 1))
    if preset in ("classical", "treil_volberg"):
        return nH, nH, nHp
    return int(rng.integers(1, nH)), nH, nHp


# -- worked examples -----------------------------------------------------------


def ds1() -> DataSet:
    """Scalar instance ``A = T' = 0``, ``R = Q = 1``; its only solution is zero."""
    return DataSet([[0.0]], [[0.0]], [[1.0]], [[1.0]])


def ds3() -> DataSet:
    """``H0 = C``, ``H = C^2``, ``H' = C`` with ``A = 0``, ``T' = 0``,
    ``Q = e_1`` and ``R = e_2``.  It has many solutions, e.g. ``Theta = 0``
    and ``Theta(z) = [z, 1]``."""
    return DataSet(np.zeros((1, 2)), [[0.0]], [[0.0], [1.0]], [[1.0], [0.0]])


def ds4() -> DataSet:
    """Rank-deficient defects: ``A = T' = diag(1, 0)``, so both defect
    spaces are one-dimensional inside ``C^2``."""
    s = 1 / np.sqrt(2)
    return DataSet(np.diag([1.0, 0.0]), np.diag([1.0, 0.0]), [[s], [0.5 * s]], [[s], [s]])
