"""Locally D-optimal factorial designs for generalized linear models.

Given an m x d design matrix of candidate factor settings and a GLM
(family/link plus assumed coefficients), this package maximizes the
determinant of the Fisher information matrix over approximate designs
(proportions on the simplex, via the lift-one coordinate ascent) and
exact designs (integer allocations with a fixed total, via pairwise
exchange), certifies optimality from first-order conditions, and
supports expected-weight designs that average the information weights
over a prior on the coefficients.
"""

from .certify import (
    DEFAULT_TOL,
    OptimalityCertificate,
    PointCheck,
    SaturatedPoint,
    check_saturated,
    verify_optimal,
)
from .errors import (
    ConfigError,
    DesignError,
    DimensionMismatch,
    EmptyPair,
    GammaZeroEta,
    NonFiniteInput,
    NonPositiveWeight,
    SingularDesign,
    SingularSupport,
    TooManySubsets,
    UnsupportedCombination,
)
from .ew import PointPrior, UniformPrior, ew_optimize, expected_weights
from .exchange import (
    PairProfile,
    exchange_optimize,
    maximize_pair,
    optimize_exact,
    pair_profile,
    round_allocation,
)
from .liftone import (
    LiftOneOptions,
    LiftOneResult,
    lift_one_optimize,
    maximize_profile,
)
from .objective import (
    MASS_ATOL,
    MAX_SUBSETS,
    LiftProfile,
    allocation,
    design_matrix,
    integer_allocation,
    lift_allocation,
    lift_profile,
    objective,
    objective_expansion,
    relative_efficiency,
)
from .weights import (
    FAMILY_LINKS,
    WEIGHT_FLOOR,
    GlmModel,
    compute_weights,
    nu_eval,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOL",
    "FAMILY_LINKS",
    "MASS_ATOL",
    "MAX_SUBSETS",
    "WEIGHT_FLOOR",
    "ConfigError",
    "DesignError",
    "DimensionMismatch",
    "EmptyPair",
    "GammaZeroEta",
    "GlmModel",
    "LiftOneOptions",
    "LiftOneResult",
    "LiftProfile",
    "NonFiniteInput",
    "NonPositiveWeight",
    "OptimalityCertificate",
    "PairProfile",
    "PointCheck",
    "PointPrior",
    "SaturatedPoint",
    "SingularDesign",
    "SingularSupport",
    "TooManySubsets",
    "UniformPrior",
    "UnsupportedCombination",
    "allocation",
    "check_saturated",
    "compute_weights",
    "design_matrix",
    "ew_optimize",
    "exchange_optimize",
    "expected_weights",
    "integer_allocation",
    "lift_allocation",
    "lift_one_optimize",
    "lift_profile",
    "maximize_pair",
    "maximize_profile",
    "nu_eval",
    "objective",
    "objective_expansion",
    "optimize_exact",
    "pair_profile",
    "relative_efficiency",
    "round_allocation",
    "verify_optimal",
]
