"""From a solution back to Schur pairs.

Given a solution with symbol ``Theta`` and a Schur-class ``C`` on the defect
space of ``Gamma`` whose restriction to ``F_Gamma`` is ``Omega``, put
``W = V + D_Gamma cayley(C) D_Gamma`` and

    F = 2 Theta (W + I)^{-1},     G = z^{-1} (W - I)(W + I)^{-1}.

Then ``{F, G}`` is a Schur pair and ``F (I - z G)^{-1} = Theta``.  The
admissible ``C`` are written ``Omega P_F + D_{Omega*} C_1 P_G`` with
``C_1`` free in the Schur class.
"""

from __future__ import annotations

from dataclasses import dataclass

from .analytic import TaylorFn, cayley, inverse_cayley, invert_unit, mul, schur_margin
from .config import CLAMP_TOL, RANK_TOL, DEFAULT_SAMPLES, DEFAULT_TOL, OMEGA_TOL_FACTOR
from .exceptions import DimensionMismatch, ParameterNotInSOmega, ParameterNotSchur
from .lifting import BigOmegaData, GammaOp, defect_map
from .majorant import factor_delta, w_from_contraction_parameter
from .opcore import opnorm
from .schurpair import SchurPair, _sections_for, check_schur

__all__ = [
    "SOmegaReport",
    "s_omega_margin",
    "canonical_parameter",
    "parameter_to_constrained",
    "constrained_to_parameter",
    "j_gamma",
    "constrained_from_pair",
]


@dataclass(frozen=True)
class SOmegaReport:
    section_margin: float
    boundary_margin: float
    restriction_residual: float
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
            "tol": self.tol,
            "pass": self.passed,
        }


def s_omega_margin(
    C: TaylorFn,
    bo: BigOmegaData,
    tol: float = OMEGA_TOL_FACTOR * DEFAULT_TOL,
    n_samples: int = DEFAULT_SAMPLES,
) -> SOmegaReport:
    """Schur margins of ``C`` and ``max_n ||C_n|F_Gamma - [n == 0] Omega||``."""
    if C.shape != (bo.dim, bo.dim):
        raise DimensionMismatch(f"C must be {bo.dim}x{bo.dim}, got {C.shape}")
    cert = schur_margin(C, _sections_for(C), n_samples)
    return SOmegaReport(
        cert.section_margin,
        cert.boundary_margin,
        bo.restriction.restriction_residual(C),
        tol,
    )


def canonical_parameter(bo: BigOmegaData) -> TaylorFn:
    """The constant ``Omega P_{F_Gamma}``, always a member of the constrained class."""
    return TaylorFn.constant(bo.restriction.fixed_part())


def parameter_to_constrained(
    bo: BigOmegaData,
    C1: TaylorFn,
    out_degree: int | None = None,
    tol: float = DEFAULT_TOL,
) -> TaylorFn:
    """``C = Omega P_{F_Gamma} + D_{Omega*} C_1 P_{G_Gamma}``.

    ``C1`` maps coordinates of ``bo.GGamma_basis`` to coordinates of
    ``bo.OmegaStar_basis``.
    """
    if C1.shape != bo.restriction.param_shape:
        raise DimensionMismatch(
            f"C1 must have shape {bo.restriction.param_shape}, got {C1.shape}"
        )
    check_schur(C1, tol)
    return bo.restriction.compose(C1, out_degree)


def constrained_to_parameter(bo: BigOmegaData, C: TaylorFn, tol: float = OMEGA_TOL_FACTOR * DEFAULT_TOL) -> TaylorFn:
    """Inverse of :func:`parameter_to_constrained`."""
    return bo.restriction.decompose(C, tol)


def j_gamma(
    g: GammaOp,
    C: TaylorFn | None = None,
    out_degree: int | None = None,
    big_omega: BigOmegaData | None = None,
    tol: float = OMEGA_TOL_FACTOR * DEFAULT_TOL,
    clamp_tol: float = CLAMP_TOL,
) -> SchurPair:
    """Schur pair ``{F, G}`` whose symbol is ``g.theta``.

    ``C`` defaults to the canonical member when ``big_omega`` is given, and
    to the only possible parameter when ``D_Gamma = 0``.  Membership of ``C``
    in the constrained class is checked against ``big_omega``; without it
    only the Schur-class condition can be checked.

    The constant term of ``W - I`` is removed before dividing by ``z``; its
    size is kept in ``w0_deviation`` of the returned pair.

    Raises
    ------
    ParameterNotInSOmega
        If ``C`` fails the membership test at ``tol``.
    """
    _, basis, _ = defect_map(g, clamp_tol)
    k = basis.dim
    if C is None:
        if big_omega is not None:
            C = canonical_parameter(big_omega)
        elif k == 0:
            C = TaylorFn.zeros(0, 0)
        else:
            raise ValueError("a parameter or the Omega data is needed when D_Gamma != 0")
    if big_omega is not None:
        rep = s_omega_margin(C, big_omega, tol)
        if not rep.passed:
            raise ParameterNotInSOmega(f"parameter outside the constrained class: {rep.to_dict()}")
    try:
        W = w_from_contraction_parameter(g, C, out_degree, tol, clamp_tol)
    except ParameterNotSchur as exc:
        raise ParameterNotInSOmega(str(exc)) from exc
    deg = W.degree
    d = W.out_dim
    eye = TaylorFn.identity(d)
    inv = invert_unit(W + eye, deg)
    F = mul(g.theta, inv, deg) * 2.0
    wm = (W - eye).coeffs.copy()
    dev = opnorm(wm[0]) if d else 0.0
    wm[0] = 0.0
    G = mul(TaylorFn(wm), inv, deg).unshift()
    return SchurPair(F, G, w0_deviation=dev)


def constrained_from_pair(
    g: GammaOp,
    p: SchurPair,
    out_degree: int | None = None,
    rank_tol: float = RANK_TOL,
    tol: float = OMEGA_TOL_FACTOR * DEFAULT_TOL,
    clamp_tol: float = CLAMP_TOL,
) -> TaylorFn:
    """Parameter ``C`` with ``j_gamma(g, C) = p`` for a pair ``p`` producing ``g``.

    Inverts the map through ``W = (I + z G)(I - z G)^{-1}``: the factor of
    ``W - V`` is the Cayley transform of ``C``.
    """
    deg = g.degree if out_degree is None else out_degree
    W = cayley(p.G, deg + 1)
    K = factor_delta(g, W, rank_tol, tol, clamp_tol)
    return inverse_cayley(K, deg)
