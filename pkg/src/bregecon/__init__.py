"""Divergence-based production aggregates, demands, and transition costs."""

from .errors import (
    BregeconError,
    ConjugateUnavailable,
    DegenerateRatio,
    DimensionMismatch,
    DomainViolation,
    InfeasibleTarget,
    InvalidParams,
    InvalidSpec,
    InversionFailure,
    NoBracket,
    NoConvergence,
    NonFiniteSample,
    NoSolution,
    NotOnPath,
    NumericalBreakdown,
    UnknownFamily,
    ZeroDenominator,
)
from .generators import (
    Domain,
    FAMILY_NAMES,
    Generator,
    VectorGenerator,
    divergence,
    divergence_vec,
    duality_gap,
    generator_config,
    generator_from_config,
    invert_u,
    legendre_conjugate,
    linear_shift,
    make_generator,
    quadratic_form_generator,
)
from .means import (
    MeanPropertyReport,
    WeightedInputs,
    arithmetic_mean,
    bregman_mean,
    check_mean_properties,
    dual_mean,
    left_cost_minimizer,
    mean_curvature,
    right_cost_minimizer,
)
from .epf import (
    CellResult,
    EpfSpec,
    GeneratorMap,
    MATRIX_COLUMNS,
    NotAnLda,
    check_homogeneity,
    check_translatable,
    elasticity,
    epf_config,
    epf_from_config,
    epf_to_generator,
    epf_value,
    idempotency_violation,
    leontief_limit_gap,
    marginal_rate_substitution,
    property_matrix,
    substitution_elasticity,
)
from .demand import (
    DemandSolution,
    Economy,
    economy_config,
    economy_from_config,
    expansion_residual,
    hicksian_demand,
    marshallian_demand,
    mrs_on_path,
    solve_expansion_path,
)
from .transition import (
    LevelCurve,
    PathTrace,
    TransitionDecomposition,
    budget_parameterization,
    divergence_level_curve,
    path_integral,
    pivot_bundle,
    roy_residual,
    scale_shift_parameterization,
    slutsky_decompose,
    trace_path,
    transition_cost,
    triangle_decompose,
)

__version__ = "0.1.0"

__all__ = [
    "BregeconError",
    "CellResult",
    "ConjugateUnavailable",
    "DegenerateRatio",
    "DemandSolution",
    "DimensionMismatch",
    "Domain",
    "DomainViolation",
    "Economy",
    "EpfSpec",
    "FAMILY_NAMES",
    "Generator",
    "GeneratorMap",
    "InfeasibleTarget",
    "InvalidParams",
    "InvalidSpec",
    "InversionFailure",
    "LevelCurve",
    "MATRIX_COLUMNS",
    "MeanPropertyReport",
    "NoBracket",
    "NoConvergence",
    "NoSolution",
    "NonFiniteSample",
    "NotAnLda",
    "NotOnPath",
    "NumericalBreakdown",
    "PathTrace",
    "TransitionDecomposition",
    "UnknownFamily",
    "VectorGenerator",
    "WeightedInputs",
    "ZeroDenominator",
    "arithmetic_mean",
    "bregman_mean",
    "budget_parameterization",
    "check_homogeneity",
    "check_mean_properties",
    "check_translatable",
    "divergence",
    "divergence_level_curve",
    "divergence_vec",
    "dual_mean",
    "duality_gap",
    "economy_config",
    "economy_from_config",
    "elasticity",
    "epf_config",
    "epf_from_config",
    "epf_to_generator",
    "epf_value",
    "expansion_residual",
    "generator_config",
    "generator_from_config",
    "hicksian_demand",
    "idempotency_violation",
    "invert_u",
    "left_cost_minimizer",
    "legendre_conjugate",
    "leontief_limit_gap",
    "linear_shift",
    "make_generator",
    "marginal_rate_substitution",
    "marshallian_demand",
    "mean_curvature",
    "mrs_on_path",
    "path_integral",
    "pivot_bundle",
    "property_matrix",
    "quadratic_form_generator",
    "right_cost_minimizer",
    "roy_residual",
    "scale_shift_parameterization",
    "slutsky_decompose",
    "solve_expansion_path",
    "substitution_elasticity",
    "trace_path",
    "transition_cost",
    "triangle_decompose",
]
