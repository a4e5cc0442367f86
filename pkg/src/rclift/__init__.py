"""All solutions of the relaxed commutant lifting problem at finite dimension.

A data set ``{A, T', R, Q}`` with ``T' A R = A Q`` and ``R* R <= Q* Q``
admits contractive liftings ``B = [A; Gamma D_A]``.  This package computes
the coupling contraction ``omega``, turns Schur pairs into solutions and
back, and certifies every step with explicit margins and residuals.
"""

__version__ = "0.1.0"

from .analytic import (
    SchurCertificate,
    TaylorFn,
    cayley,
    evaluate,
    inverse_cayley,
    invert_unit,
    mul,
    positive_real_margin,
    random_schur,
    schur_margin,
    toeplitz_real_section,
)
from .dataset import (
    DataSet,
    OmegaData,
    ValidationReport,
    build_omega,
    defect_frame,
    ds1,
    ds3,
    ds4,
    random_dataset,
    random_dims,
    validate,
)
from .exceptions import *  # noqa: F401,F403
from .jmap import (
    canonical_parameter,
    constrained_from_pair,
    constrained_to_parameter,
    j_gamma,
    parameter_to_constrained,
    s_omega_margin,
)
from .lifting import (
    BigOmegaData,
    BlockSolution,
    GammaOp,
    SolutionReport,
    TruncatedH2,
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
from .majorant import (
    factor_delta,
    majorant_gap,
    poisson_cross_check,
    v_from_theta,
    w_from_contraction_parameter,
)
from .opcore import (
    SubspaceBasis,
    contraction_margin,
    hermitian_sqrt,
    opnorm,
    orthonormal_range,
    psd_margin,
)
from .schurpair import SchurPair, pair_from_parameter, parameter_from_pair, verify_pair
