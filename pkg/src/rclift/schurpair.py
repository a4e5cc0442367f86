"""Schur pairs and their free parameter.

A Schur pair is a pair ``{F, G}`` of analytic functions with ``col[F, G]``
contractive on the disk and ``col[F, G](z)|F = omega`` for every ``z``.
Pairs correspond one to one with Schur-class functions ``H`` from ``G`` into
the range of ``D_{omega*}`` through

    col[F, G](z) = omega P_F + D_{omega*} H(z) P_G.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .analytic import TaylorFn, schur_margin
from .config import DEFAULT_SAMPLES, DEFAULT_SECTIONS, DEFAULT_TOL, MAX_SECTIONS
from .dataset import OmegaData
from .exceptions import DimensionMismatch, ParameterNotSchur

__all__ = [
    "SchurPair",
    "PairReport",
    "pair_from_parameter",
    "verify_pair",
    "parameter_from_pair",
    "check_schur",
]


@dataclass(frozen=True, eq=False)
class SchurPair:
    F: TaylorFn
    G: TaylorFn
    omega_ref: OmegaData | None = None
    # deviation of W(0) from I when the pair came out of the inverse map
    w0_deviation: float = 0.0

    def __post_init__(self):
        if self.F.in_dim != self.G.in_dim or not self.G.is_square():
            raise DimensionMismatch(f"incompatible pair shapes {self.F.shape}, {self.G.shape}")

    @property
    def stacked(self) -> TaylorFn:
        """``col[F, G]``."""
        return self.F.vstack(self.G)

    @classmethod
    def from_stacked(cls, T: TaylorFn, dT: int, omega_ref=None) -> "SchurPair":
        return cls(T.rows(0, dT), T.rows(dT, T.out_dim), omega_ref)


def _sections_for(T: TaylorFn) -> int:
    # twice the length of the series, capped to keep the section SVD cheap
    return min(max(DEFAULT_SECTIONS, 2 * (T.degree + 1)), MAX_SECTIONS)


def check_schur(T: TaylorFn, tol: float = DEFAULT_TOL, n_samples: int = DEFAULT_SAMPLES) -> None:
    cert = schur_margin(T, _sections_for(T), n_samples)
    if not cert.passes(tol):
        raise ParameterNotSchur(f"parameter is not contractive: margin {cert.margin:.3e}")


def pair_from_parameter(
    od: OmegaData,
    H: TaylorFn,
    out_degree: int | None = None,
    tol: float = DEFAULT_TOL,
) -> SchurPair:
    """Schur pair ``col[F, G] = omega P_F + D_{omega*} H P_G``.

    ``H`` acts from coordinates of ``od.G_basis`` into coordinates of
    ``od.Dstar_basis``.
    """
    if H.shape != od.restriction.param_shape:
        raise DimensionMismatch(
            f"parameter must have shape {od.restriction.param_shape}, got {H.shape}"
        )
    check_schur(H, tol)
    T = od.restriction.compose(H, out_degree)
    return SchurPair.from_stacked(T, od.dT, od)


@dataclass(frozen=True)
class PairReport:
    section_margin: float
    boundary_margin: float
    restriction_residual: float
    sampled_residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return (
            min(self.section_margin, self.boundary_margin) >= -self.tol
            and self.restriction_residual <= self.tol
        )

    def to_dict(self) -> dict:
        return {
            "section_margin": self.section_margin,
            "boundary_margin": self.boundary_margin,
            "restriction_residual": self.restriction_residual,
            "sampled_residual": self.sampled_residual,
            "tol": self.tol,
            "pass": self.passed,
        }


def verify_pair(
    p: SchurPair,
    n_sections: int = DEFAULT_SECTIONS,
    n_samples: int = DEFAULT_SAMPLES,
    tol: float = DEFAULT_TOL,
    omega: OmegaData | None = None,
) -> PairReport:
    """Check both pair conditions against ``omega`` (defaults to ``p.omega_ref``).

    The restriction is checked coefficient-wise: the constant term restricted
    to ``F`` must equal ``omega`` and all higher coefficients must vanish on
    ``F``.  A sampled check on circles inside the disk is reported as a
    redundant diagnostic.
    """
    od = omega if omega is not None else p.omega_ref
    if od is None:
        raise ValueError("no omega data to verify the pair against")
    T = p.stacked
    if T.shape != (od.dT + od.dA, od.dA):
        raise DimensionMismatch(f"pair has shape {T.shape}, data set needs {(od.dT + od.dA, od.dA)}")
    cert = schur_margin(T, n_sections, n_samples)
    pts = np.concatenate(
        [r * np.exp(2j * np.pi * np.arange(8) / 8) for r in (0.0, 0.5, 0.9)]
    )
    return PairReport(
        section_margin=cert.section_margin,
        boundary_margin=cert.boundary_margin,
        restriction_residual=od.restriction.restriction_residual(T),
        sampled_residual=od.restriction.sampled_residual(T, pts),
        tol=tol,
    )


def parameter_from_pair(p: SchurPair, tol: float = DEFAULT_TOL, omega: OmegaData | None = None) -> TaylorFn:
    """Inverse of :func:`pair_from_parameter`.

    Raises ``ResidualTooLarge`` if ``col[F, G]`` restricted to ``G`` leaves
    the range of ``D_{omega*}`` by more than ``tol``.
    """
    od = omega if omega is not None else p.omega_ref
    if od is None:
        raise ValueError("no omega data to invert the pair against")
    return od.restriction.decompose(p.stacked, tol)
