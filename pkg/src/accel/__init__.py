"""Convergence acceleration for slowly convergent series and infinite
integrals: collocation-based series and integral transforms, classical
baseline accelerators, and the numeric kernels they share."""

from .classic import (
    ClassOrder,
    RecurrenceCoeffs,
    aitken,
    class_order,
    euler_transform,
    exact_sum_recurrence,
    levin,
    wynn_epsilon,
)
from .dtrans import TransformParams, TransformResult, d_table, d_transform
from .errors import (
    AccelError,
    ContextError,
    DegenerateDifference,
    DomainError,
    InvalidParams,
    NonFiniteValue,
    ParseError,
    QuadratureNoConvergence,
    SingularSystem,
    UnboundParameter,
)
from .funcs import (
    Jet,
    bessel_j,
    eval_expr,
    eval_jet,
    format_expr,
    legendre_p,
    parse_expr,
    term_sequence,
)
from .integrals import D_table, D_transform, IntegrandFamily, cumulative_integrals
from .quadrature import QuadratureConfig, adaptive_panel
from .realkit import (
    ArithmeticIndexNodes,
    ArithmeticNodes,
    ExplicitNodes,
    GeometricNodes,
    PartialSums,
    SolveReport,
    TermSequence,
    forward_differences,
    make_nodes,
    partial_sums,
    solve_linear,
)

__version__ = "0.1.0"

__all__ = [
    "AccelError",
    "ArithmeticIndexNodes",
    "ArithmeticNodes",
    "ClassOrder",
    "ContextError",
    "cumulative_integrals",
    "D_table",
    "D_transform",
    "DegenerateDifference",
    "DomainError",
    "ExplicitNodes",
    "GeometricNodes",
    "IntegrandFamily",
    "InvalidParams",
    "Jet",
    "NonFiniteValue",
    "ParseError",
    "PartialSums",
    "QuadratureConfig",
    "QuadratureNoConvergence",
    "RecurrenceCoeffs",
    "SingularSystem",
    "SolveReport",
    "TermSequence",
    "TransformParams",
    "TransformResult",
    "UnboundParameter",
    "adaptive_panel",
    "aitken",
    "bessel_j",
    "class_order",
    "d_table",
    "d_transform",
    "euler_transform",
    "eval_expr",
    "eval_jet",
    "exact_sum_recurrence",
    "format_expr",
    "forward_differences",
    "legendre_p",
    "levin",
    "make_nodes",
    "parse_expr",
    "partial_sums",
    "solve_linear",
    "term_sequence",
    "wynn_epsilon",
]
