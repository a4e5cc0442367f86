"""Contractive functions with a prescribed restriction to a subspace.

Let ``X`` be a contraction from a subspace ``F`` of ``C^n`` into ``C^m`` and
``G`` the orthogonal complement of ``F``.  A function ``T`` with
``T(z)|F = X`` is contractive on the disk exactly when

    T(z) = X P_F + D_{X*} K(z) P_G,       D_{X*} = (I - X X*)^{1/2},

for a Schur-class ``K`` from ``G`` into the range of ``D_{X*}``; ``T`` and
``K`` determine each other.  Schur pairs (``X = omega``) and the constrained
class around ``Omega`` are both instances of this structure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .analytic import TaylorFn
from .exceptions import DimensionMismatch, ResidualTooLarge
from .opcore import SubspaceBasis, opnorm

__all__ = ["FixedRestriction"]


@dataclass(frozen=True, eq=False)
class FixedRestriction:
    fixed: np.ndarray
    subspace: SubspaceBasis
    complement: SubspaceBasis
    defect: np.ndarray
    defect_basis: SubspaceBasis

    @property
    def in_dim(self) -> int:
        return self.subspace.ambient_dim

    @property
    def out_dim(self) -> int:
        return self.fixed.shape[0]

    @property
    def param_shape(self) -> tuple[int, int]:
        """``(out, in)`` shape of the free parameter ``K``."""
        return self.defect_basis.dim, self.complement.dim

    @property
    def defect_map(self) -> np.ndarray:
        """``D_{X*}`` restricted to its range, as an ``out_dim x dim`` matrix."""
        return self.defect @ self.defect_basis.vectors

    def fixed_part(self) -> np.ndarray:
        """``X P_F`` as a matrix on ``C^n``."""
        return self.fixed @ self.subspace.vectors.conj().T

    def compose(self, param: TaylorFn, out_degree: int | None = None) -> TaylorFn:
        if param.shape != self.param_shape:
            raise DimensionMismatch(
                f"parameter must have shape {self.param_shape}, got {param.shape}"
            )
        deg = param.degree if out_degree is None else out_degree
        free = param.with_degree(deg).lmul(self.defect_map).rmul(self.complement.vectors.conj().T)
        c = free.coeffs.copy()
        c[0] += self.fixed_part()
        return TaylorFn(c)

    def decompose(self, T: TaylorFn, tol: float = 1e-9) -> TaylorFn:
        """Recover the parameter of ``T`` by solving on the range of ``D_{X*}``.

        Raises ``ResidualTooLarge`` when the part of ``T`` acting on ``G`` has
        a component outside the range of ``D_{X*}`` larger than ``tol``.
        """
        if T.shape != (self.out_dim, self.in_dim):
            raise DimensionMismatch(f"expected shape {(self.out_dim, self.in_dim)}, got {T.shape}")
        on_g = T.rmul(self.complement.vectors).coeffs
        dmap = self.defect_map
        k, g = self.param_shape
        out = np.zeros((T.degree + 1, k, g), dtype=complex)
        if k and g:
            pinv = np.linalg.pinv(dmap, rcond=1e-13)
            out = np.einsum("ij,njk->nik", pinv, on_g)
            resid = max(opnorm(y - dmap @ h) for y, h in zip(on_g, out))
        else:
            resid = max((opnorm(y) for y in on_g), default=0.0)
        if resid > tol:
            raise ResidualTooLarge(
                f"part of the function outside the range of the defect operator: {resid:.3e}"
            )
        return TaylorFn(out)

    def restriction_residual(self, T: TaylorFn) -> float:
        """``max_n ||T_n|F - [n == 0] X||``: exact coefficient-level check."""
        on_f = T.rmul(self.subspace.vectors).coeffs.copy()
        on_f[0] -= self.fixed
        return max((opnorm(c) for c in on_f), default=0.0)

    def sampled_residual(self, T: TaylorFn, points) -> float:
        fv = self.subspace.vectors
        return max((opnorm(T(p) @ fv - self.fixed) for p in points), default=0.0)
