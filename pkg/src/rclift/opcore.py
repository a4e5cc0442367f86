"""Dense complex linear-algebra kernels.

Operators are plain ``numpy`` arrays of dtype ``complex128``.  Subspaces are
carried as :class:`SubspaceBasis` objects holding an orthonormal set of
column vectors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import CLAMP_TOL, HERMITIAN_TOL, RANK_FLOOR, RANK_TOL
from .exceptions import DimensionMismatch, IndefiniteMatrix, NonHermitian

__all__ = [
    "as_matrix",
    "SubspaceBasis",
    "hermitian_sqrt",
    "orthonormal_range",
    "contraction_margin",
    "psd_margin",
    "opnorm",
    "random_unitary",
    "random_isometry",
]


def as_matrix(m, rows: int | None = None, cols: int | None = None) -> np.ndarray:
    """Coerce ``m`` to a finite 2-D complex array, optionally checking its shape."""
    a = np.array(m, dtype=complex)
    if a.ndim == 0:
        a = a.reshape(1, 1)
    elif a.ndim == 1:
        a = a.reshape(-1, 1)
    if a.ndim != 2:
        raise DimensionMismatch(f"expected a matrix, got array of shape {a.shape}")
    if rows is not None and a.shape[0] != rows:
        raise DimensionMismatch(f"expected {rows} rows, got {a.shape[0]}")
    if cols is not None and a.shape[1] != cols:
        raise DimensionMismatch(f"expected {cols} columns, got {a.shape[1]}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def opnorm(m: np.ndarray) -> float:
    """Spectral norm; zero for empty matrices."""
    m = np.asarray(m)
    if m.size == 0:
        return 0.0
    return float(np.linalg.norm(m, 2))


def _check_hermitian(m: np.ndarray) -> np.ndarray:
    if m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got {m.shape}")
    if m.size and np.max(np.abs(m - m.conj().T)) > HERMITIAN_TOL * max(1.0, np.max(np.abs(m))):
        raise NonHermitian("matrix is not Hermitian within tolerance")
    return (m + m.conj().T) / 2


@dataclass(frozen=True, eq=False)
class SubspaceBasis:
    """Orthonormal basis of a subspace of ``C^ambient_dim``.

    ``vectors`` has shape ``(ambient_dim, dim)``; its columns are the basis.
    """

    ambient_dim: int
    vectors: np.ndarray
    tol: float = RANK_TOL

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    @property
    def projector(self) -> np.ndarray:
        return self.vectors @ self.vectors.conj().T

    def coords(self, x: np.ndarray) -> np.ndarray:
        """Coordinates of (the projection of) ``x`` in this basis."""
        return self.vectors.conj().T @ x

    def complement(self) -> "SubspaceBasis":
        """Orthogonal complement inside the ambient space."""
        return orthonormal_range(np.eye(self.ambient_dim) - self.projector, self.tol)

    @classmethod
    def empty(cls, ambient_dim: int, tol: float = RANK_TOL) -> "SubspaceBasis":
        return cls(ambient_dim, np.zeros((ambient_dim, 0), dtype=complex), tol)

    @classmethod
    def full(cls, ambient_dim: int, tol: float = RANK_TOL) -> "SubspaceBasis":
        return cls(ambient_dim, np.eye(ambient_dim, dtype=complex), tol)


def hermitian_sqrt(m, clamp_tol: float = CLAMP_TOL) -> np.ndarray:
    """Positive square root of a Hermitian positive semidefinite matrix.

    Eigenvalues below ``clamp_tol`` are set to zero before taking the root, so
    round-off noise around a singular matrix does not leak into its range.

    Raises
    ------
    NonHermitian
        If ``m`` is not Hermitian to ``1e-10``.
    IndefiniteMatrix
        If an eigenvalue is below ``-clamp_tol``.
    """
    m = _check_hermitian(as_matrix(m))
    if m.size == 0:
        return m.copy()
    w, v = np.linalg.eigh(m)
    if w[0] < -clamp_tol:
        raise IndefiniteMatrix(f"smallest eigenvalue {w[0]:.3e} below -{clamp_tol:g}")
    w = np.where(w < clamp_tol, 0.0, w)
    r = (v * np.sqrt(w)) @ v.conj().T
    return (r + r.conj().T) / 2


def _canonical_basis(u: np.ndarray) -> np.ndarray:
    # Greedy Gram-Schmidt of P e_1, P e_2, ... where P projects onto span(u).
    # The result depends on the subspace only, and coordinate subspaces get
    # standard basis vectors.  Accepting residuals with |r|^2 > 1/(2n) is
    # always enough to collect every direction, since the skipped residual
    # mass is bounded by n times the threshold.
    n, r = u.shape
    if r == 0:
        return u
    proj = u @ u.conj().T
    out = []
    threshold = 0.5 / n
    for i in range(n):
        v = proj[:, i].copy()
        for _ in range(2):
            for b in out:
                v -= b * (b.conj() @ v)
        nv = np.linalg.norm(v)
        if nv * nv > threshold:
            out.append(v / nv)
            if len(out) == r:
                break
    return np.column_stack(out)


def orthonormal_range(m, rank_tol: float = RANK_TOL) -> SubspaceBasis:
    """Orthonormal basis of the column space of ``m``.

    Singular directions are kept when the singular value exceeds both
    ``rank_tol * sigma_max`` and the absolute floor ``1e-12``.  The returned
    basis is canonical: it depends only on the computed subspace.
    """
    if rank_tol <= 0:
        raise ValueError("rank_tol must be positive")
    m = as_matrix(m) if np.asarray(m).size else np.asarray(m, dtype=complex)
    n = m.shape[0]
    if m.size == 0:
        return SubspaceBasis.empty(n, rank_tol)
    u, s, _ = np.linalg.svd(m, full_matrices=False)
    cut = max(rank_tol * s[0], RANK_FLOOR)
    r = int(np.sum(s > cut))
    return SubspaceBasis(n, _canonical_basis(u[:, :r]), rank_tol)


def contraction_margin(m) -> float:
    """``1 - ||m||``; nonnegative exactly when ``m`` is a contraction."""
    return 1.0 - opnorm(as_matrix(m) if np.asarray(m).size else np.zeros((0, 0)))


def psd_margin(m) -> float:
    """Smallest eigenvalue of a Hermitian matrix (``inf`` for an empty one)."""
    a = np.asarray(m, dtype=complex)
    if a.size == 0:
        return float("inf")
    a = _check_hermitian(as_matrix(a))
    return float(np.linalg.eigvalsh(a)[0])


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    """Haar-distributed unitary ``n x n`` matrix."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_isometry(rng: np.random.Generator, n: int, k: int) -> np.ndarray:
    """Random ``n x k`` matrix with orthonormal columns (``k <= n``)."""
    return random_unitary(rng, n)[:, :k]
