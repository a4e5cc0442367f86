"""Truncated matrix-valued power series on the unit disk.

A :class:`TaylorFn` stores the coefficients ``T_0, ..., T_N`` of

    T(z) = T_0 + T_1 z + ... + T_N z**N

as one array of shape ``(N + 1, out_dim, in_dim)``.  Coefficients beyond
``N`` are treated as zero, so a ``TaylorFn`` is exactly a matrix polynomial;
whoever truncates a genuine power series picks ``N`` explicitly.

Besides the arithmetic (Horner evaluation, Cauchy products, inversion of
series with invertible constant term) this module holds the Cayley transform
pair between Schur-class and positive real functions, and finite
certificates for both classes:

* positive real: every block Toeplitz section built from the real part is
  positive semidefinite (:func:`positive_real_margin`);
* Schur class: lower-triangular block Toeplitz sections and samples near the
  boundary are contractive (:func:`schur_margin`).

Examples
--------
>>> f = TaylorFn.scalar([1.0, -1.0])          # 1 - z
>>> invert_unit(f, 4).scalar_coeffs()
array([1.+0.j, 1.+0.j, 1.+0.j, 1.+0.j, 1.+0.j])
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import BOUNDARY_RADIUS, DEFAULT_DEGREE, DEFAULT_SAMPLES, DEFAULT_SECTIONS
from .exceptions import (
    ConstantTermNotIdentity,
    DegreeTooLow,
    DimensionMismatch,
    OutsideDisk,
    SingularConstantTerm,
)
from .opcore import opnorm, psd_margin

__all__ = [
    "TaylorFn",
    "SchurCertificate",
    "evaluate",
    "mul",
    "invert_unit",
    "cayley",
    "inverse_cayley",
    "toeplitz_real_section",
    "positive_real_margin",
    "schur_margin",
    "random_schur",
]


@dataclass(frozen=True, eq=False)
class TaylorFn:
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex)
        if c.ndim != 3 or c.shape[0] < 1:
            raise DimensionMismatch(
                f"coefficients must have shape (N+1, out, in), got {c.shape}"
            )
        if not np.all(np.isfinite(c)):
            raise ValueError("non-finite Taylor coefficient")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    # -- construction -----------------------------------------------------

    @classmethod
    def from_list(cls, mats, out_dim: int | None = None, in_dim: int | None = None):
        mats = [np.atleast_2d(np.asarray(m, dtype=complex)) for m in mats]
        if out_dim is not None and in_dim is not None:
            mats = [m.reshape(out_dim, in_dim) for m in mats]
        return cls(np.stack(mats))

    @classmethod
    def scalar(cls, coeffs):
        return cls(np.asarray(coeffs, dtype=complex).reshape(-1, 1, 1))

    @classmethod
    def constant(cls, m, degree: int = 0):
        m = np.atleast_2d(np.asarray(m, dtype=complex))
        c = np.zeros((degree + 1,) + m.shape, dtype=complex)
        c[0] = m
        return cls(c)

    @classmethod
    def zeros(cls, out_dim: int, in_dim: int, degree: int = 0):
        return cls(np.zeros((degree + 1, out_dim, in_dim), dtype=complex))

    @classmethod
    def identity(cls, n: int, degree: int = 0):
        return cls.constant(np.eye(n), degree)

    # -- shape ------------------------------------------------------------

    @property
    def degree(self) -> int:
        return self.coeffs.shape[0] - 1

    @property
    def out_dim(self) -> int:
        return self.coeffs.shape[1]

    @property
    def in_dim(self) -> int:
        return self.coeffs.shape[2]

    @property
    def shape(self) -> tuple[int, int]:
        return self.out_dim, self.in_dim

    def is_square(self) -> bool:
        return self.out_dim == self.in_dim

    def coeff(self, n: int) -> np.ndarray:
        """Coefficient of ``z**n`` (zero beyond the stored degree)."""
        if 0 <= n <= self.degree:
            return self.coeffs[n]
        return np.zeros(self.shape, dtype=complex)

    def scalar_coeffs(self) -> np.ndarray:
        return self.coeffs[:, 0, 0].copy()

    def with_degree(self, degree: int) -> "TaylorFn":
        """Truncate or zero-pad to the given degree."""
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        c = np.zeros((degree + 1,) + self.shape, dtype=complex)
        k = min(degree, self.degree) + 1
        c[:k] = self.coeffs[:k]
        return TaylorFn(c)

    def shift(self, k: int = 1) -> "TaylorFn":
        """Multiply by ``z**k``; the degree grows by ``k``."""
        c = np.zeros((self.degree + k + 1,) + self.shape, dtype=complex)
        c[k:] = self.coeffs
        return TaylorFn(c)

    def unshift(self) -> "TaylorFn":
        """Drop the constant term and divide by ``z`` (exact index shift)."""
        if self.degree == 0:
            return TaylorFn.zeros(self.out_dim, self.in_dim)
        return TaylorFn(self.coeffs[1:])

    # -- arithmetic ---------------------------------------------------------

    def _binary(self, other: "TaylorFn", sign: float) -> "TaylorFn":
        if not isinstance(other, TaylorFn):
            return NotImplemented
        if other.shape != self.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")
        n = max(self.degree, other.degree)
        return TaylorFn(self.with_degree(n).coeffs + sign * other.with_degree(n).coeffs)

    def __add__(self, other):
        return self._binary(other, 1.0)

    def __sub__(self, other):
        return self._binary(other, -1.0)

    def __neg__(self):
        return TaylorFn(-self.coeffs)

    def __mul__(self, s):
        if np.isscalar(s):
            return TaylorFn(s * self.coeffs)
        return NotImplemented

    __rmul__ = __mul__

    def lmul(self, m) -> "TaylorFn":
        """Constant matrix times the series: ``m @ T(z)``."""
        m = np.atleast_2d(np.asarray(m, dtype=complex))
        if m.shape[1] != self.out_dim:
            raise DimensionMismatch(f"cannot apply {m.shape} on the left of {self.shape}")
        return TaylorFn(np.einsum("ij,njk->nik", m, self.coeffs))

    def rmul(self, m) -> "TaylorFn":
        """The series times a constant matrix: ``T(z) @ m``."""
        m = np.atleast_2d(np.asarray(m, dtype=complex))
        if m.shape[0] != self.in_dim:
            raise DimensionMismatch(f"cannot apply {m.shape} on the right of {self.shape}")
        return TaylorFn(np.einsum("nij,jk->nik", self.coeffs, m))

    def vstack(self, other: "TaylorFn") -> "TaylorFn":
        """Column function ``col[self, other]``."""
        if other.in_dim != self.in_dim:
            raise DimensionMismatch("stacked functions need equal input dimension")
        n = max(self.degree, other.degree)
        return TaylorFn(
            np.concatenate([self.with_degree(n).coeffs, other.with_degree(n).coeffs], axis=1)
        )

    def rows(self, start: int, stop: int) -> "TaylorFn":
        return TaylorFn(self.coeffs[:, start:stop, :])

    def __call__(self, lam) -> np.ndarray:
        return evaluate(self, lam)

    def distance(self, other: "TaylorFn", degree: int | None = None) -> float:
        """Largest coefficient-wise spectral-norm difference through ``degree``."""
        if other.shape != self.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")
        n = max(self.degree, other.degree) if degree is None else degree
        d = self.with_degree(n).coeffs - other.with_degree(n).coeffs
        return max((opnorm(c) for c in d), default=0.0)

    def __repr__(self):
        return f"TaylorFn(out_dim={self.out_dim}, in_dim={self.in_dim}, degree={self.degree})"


def evaluate(T: TaylorFn, lam) -> np.ndarray:
    """Value ``sum_n lam**n T_n`` by Horner's scheme; ``|lam| <= 1`` required."""
    lam = complex(lam)
    if abs(lam) > 1.0:
        raise OutsideDisk(f"|lambda| = {abs(lam)} exceeds 1")
    out = T.coeffs[-1].copy()
    for c in T.coeffs[-2::-1]:
        out = out * lam + c
    return out


def _evaluate_many(T: TaylorFn, points: np.ndarray) -> np.ndarray:
    powers = points[:, None] ** np.arange(T.degree + 1)[None, :]
    return np.einsum("pn,nij->pij", powers, T.coeffs)


def mul(a: TaylorFn, b: TaylorFn, out_degree: int | None = None) -> TaylorFn:
    """Truncated Cauchy product; by default the smaller operand degree is kept."""
    if a.in_dim != b.out_dim:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    if out_degree is None:
        out_degree = min(a.degree, b.degree)
    out = np.zeros((out_degree + 1, a.out_dim, b.in_dim), dtype=complex)
    for n in range(out_degree + 1):
        lo = max(0, n - b.degree)
        hi = min(n, a.degree)
        if lo > hi:
            continue
        ks = np.arange(lo, hi + 1)
        out[n] = np.einsum("kij,kjl->il", a.coeffs[ks], b.coeffs[n - ks])
    return TaylorFn(out)


def invert_unit(T: TaylorFn, out_degree: int | None = None) -> TaylorFn:
    """Series inverse of ``T`` whose constant term is invertible.

    Uses ``R_0 = T_0^{-1}`` and ``R_n = -T_0^{-1} sum_{k=1..n} T_k R_{n-k}``.
    """
    if not T.is_square():
        raise DimensionMismatch("only square-valued series can be inverted")
    if out_degree is None:
        out_degree = T.degree
    n = T.out_dim
    t0 = T.coeffs[0]
    if n and np.linalg.svd(t0, compute_uv=False)[-1] <= 1e-10:
        raise SingularConstantTerm("constant coefficient is (numerically) singular")
    t0inv = np.linalg.inv(t0) if n else t0.copy()
    r = np.zeros((out_degree + 1, n, n), dtype=complex)
    r[0] = t0inv
    for m in range(1, out_degree + 1):
        k_hi = min(m, T.degree)
        if k_hi < 1:
            continue
        ks = np.arange(1, k_hi + 1)
        acc = np.einsum("kij,kjl->il", T.coeffs[ks], r[m - ks])
        r[m] = -t0inv @ acc
    return TaylorFn(r)


def cayley(C: TaylorFn, out_degree: int = DEFAULT_DEGREE) -> TaylorFn:
    """Cayley transform ``K(z) = (I + z C(z)) (I - z C(z))^{-1}``.

    ``K_0 = I`` exactly.  For a Schur-class ``C`` the result is positive real.
    """
    if not C.is_square():
        raise DimensionMismatch("the Cayley transform needs a square-valued function")
    eye = TaylorFn.identity(C.out_dim)
    zc = C.shift()
    den = invert_unit(eye - zc, out_degree)
    k = mul(eye + zc, den, out_degree)
    c = k.coeffs.copy()
    c[0] = np.eye(C.out_dim)
    return TaylorFn(c)


def inverse_cayley(K: TaylorFn, out_degree: int | None = None) -> TaylorFn:
    """Inverse Cayley transform ``C(z) = z^{-1} (K(z) - I) (I + K(z))^{-1}``.

    The division by ``z`` is an index shift: ``C_n`` is coefficient ``n + 1``
    of ``(K - I)(I + K)^{-1}`` with the constant term of ``K - I`` set to zero.
    The default output degree is ``K.degree - 1``.
    """
    if not K.is_square():
        raise DimensionMismatch("the inverse Cayley transform needs a square-valued function")
    n = K.out_dim
    if opnorm(K.coeffs[0] - np.eye(n)) > 1e-10:
        raise ConstantTermNotIdentity("K(0) must be the identity")
    if out_degree is None:
        out_degree = max(K.degree - 1, 0)
    eye = TaylorFn.identity(n)
    num = (K - eye).coeffs.copy()
    num[0] = 0.0
    prod = mul(TaylorFn(num), invert_unit(eye + K, out_degree + 1), out_degree + 1)
    return prod.unshift()


def toeplitz_real_section(W: TaylorFn, n: int) -> np.ndarray:
    """The ``n x n`` block Toeplitz matrix of the real part of ``W``.

    Diagonal blocks are ``(W_0^* + W_0)/2``; block ``(i, j)`` below the
    diagonal is ``W_{i-j}/2`` and above it ``W_{j-i}^*/2``.
    """
    if not W.is_square():
        raise DimensionMismatch("positive real tests need a square-valued function")
    if n < 1:
        raise ValueError("section order must be at least 1")
    if n - 1 > W.degree:
        raise DegreeTooLow(f"section of order {n} needs degree >= {n - 1}, have {W.degree}")
    d = W.out_dim
    out = np.zeros((n * d, n * d), dtype=complex)
    diag = (W.coeffs[0] + W.coeffs[0].conj().T) / 2
    for i in range(n):
        out[i * d:(i + 1) * d, i * d:(i + 1) * d] = diag
        for j in range(i):
            blk = W.coeffs[i - j] / 2
            out[i * d:(i + 1) * d, j * d:(j + 1) * d] = blk
            out[j * d:(j + 1) * d, i * d:(i + 1) * d] = blk.conj().T
    return out


def positive_real_margin(W: TaylorFn, n_max: int) -> float:
    """Smallest eigenvalue over the Toeplitz real-part sections of orders 1..n_max.

    A nonnegative value certifies the positive real property through the
    tested order.  Zero-dimensional functions give ``inf``.
    """
    if n_max > W.degree + 1:
        raise DegreeTooLow(f"n_max={n_max} exceeds degree + 1 = {W.degree + 1}")
    if W.out_dim == 0:
        return float("inf")
    return min(psd_margin(toeplitz_real_section(W, n)) for n in range(1, n_max + 1))


@dataclass(frozen=True)
class SchurCertificate:
    """Finite evidence that a function is in the Schur class.

    Both margins are necessary conditions; they tighten as the number of
    sections and samples grows.
    """

    section_margin: float
    boundary_margin: float
    sections_tested: int
    samples_tested: int

    @property
    def margin(self) -> float:
        return min(self.section_margin, self.boundary_margin)

    def passes(self, tol: float = 1e-9) -> bool:
        return self.margin >= -tol

    def to_dict(self) -> dict:
        return {
            "section_margin": self.section_margin,
            "boundary_margin": self.boundary_margin,
            "sections_tested": self.sections_tested,
            "samples_tested": self.samples_tested,
        }


def _lower_toeplitz(T: TaylorFn, n: int) -> np.ndarray:
    p, q = T.shape
    out = np.zeros((n * p, n * q), dtype=complex)
    for i in range(n):
        for j in range(i + 1):
            if i - j <= T.degree:
                out[i * p:(i + 1) * p, j * q:(j + 1) * q] = T.coeffs[i - j]
    return out


def schur_margin(
    T: TaylorFn,
    n_sections: int = DEFAULT_SECTIONS,
    n_boundary_samples: int = DEFAULT_SAMPLES,
) -> SchurCertificate:
    """Contractivity margins of ``T`` from Toeplitz sections and near-boundary samples."""
    if n_sections < 1:
        raise ValueError("n_sections must be at least 1")
    if n_boundary_samples < 8:
        raise ValueError("n_boundary_samples must be at least 8")
    if T.out_dim == 0 or T.in_dim == 0:
        return SchurCertificate(1.0, 1.0, n_sections, n_boundary_samples)
    section = 1.0 - opnorm(_lower_toeplitz(T, n_sections))
    pts = BOUNDARY_RADIUS * np.exp(2j * np.pi * np.arange(n_boundary_samples) / n_boundary_samples)
    vals = _evaluate_many(T, pts)
    smax = np.linalg.svd(vals, compute_uv=False)[:, 0]
    return SchurCertificate(section, float(1.0 - smax.max()), n_sections, n_boundary_samples)


def random_schur(
    rng: np.random.Generator,
    out_dim: int,
    in_dim: int,
    degree: int,
    scale: float = 0.9,
) -> TaylorFn:
    """Random matrix polynomial whose coefficient norms sum to ``scale``.

    For ``scale <= 1`` the result is in the Schur class, since its sup norm
    on the disk is at most the sum of its coefficient norms.
    """
    shape = (degree + 1, out_dim, in_dim)
    c = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    total = sum(opnorm(x) for x in c)
    if total > 0:
        c *= scale / total
    return TaylorFn(c)
