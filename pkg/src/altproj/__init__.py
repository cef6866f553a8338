"""Relaxed alternating projections between two affine subspaces, analyzed as a
variable-step Landweber iteration, with independent linear-algebra oracles for
limits, rates and subspace angles."""

from .subspace import (
    AffineSubspace,
    ProblemGeometry,
    canonicalize,
    project,
    project_relaxed,
    relaxed_w_projection_formula,
)
from .angles import AngleReport, compute_report, friedrichs_cos, min_angle_cos, principal_cosines
from .projector import (
    LeastSquaresSet,
    RestrictedProjector,
    adjoint_apply,
    build,
    distance_to_w,
    least_squares_set,
    limit_point,
)
from .schedule import (
    Schedule,
    ScheduleDiagnostics,
    diagnose,
    filter_poly,
    max_admissible_constant,
    product_lemma_check,
)
from .engine import (
    IterationTrace,
    RateBound,
    contraction_factor,
    error_recursion_check,
    estimate_rate,
    rate_bound,
    run_alternating,
    run_landweber,
)

__all__ = [
    "AffineSubspace",
    "ProblemGeometry",
    "canonicalize",
    "project",
    "project_relaxed",
    "relaxed_w_projection_formula",
    "AngleReport",
    "compute_report",
    "friedrichs_cos",
    "min_angle_cos",
    "principal_cosines",
    "LeastSquaresSet",
    "RestrictedProjector",
    "adjoint_apply",
    "build",
    "distance_to_w",
    "least_squares_set",
    "limit_point",
    "Schedule",
    "ScheduleDiagnostics",
    "diagnose",
    "filter_poly",
    "max_admissible_constant",
    "product_lemma_check",
    "IterationTrace",
    "RateBound",
    "contraction_factor",
    "error_recursion_check",
    "estimate_rate",
    "rate_bound",
    "run_alternating",
    "run_landweber",
]

__version__ = "0.1.0"
