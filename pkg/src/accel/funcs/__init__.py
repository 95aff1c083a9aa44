"""Special functions, the expression DSL, and truncated-Taylor jets."""

from .expr import (
    BUILTIN_FUNCTIONS,
    DEFAULT_BINDINGS,
    EvalSession,
    ExprAst,
    eval_expr,
    format_expr,
    integrand_function,
    parse_expr,
    term_sequence,
)
from .jets import MAX_JET_ORDER, Jet, eval_jet
from .special import LegendreRecurrence, bessel_j, bessel_taylor_pair, legendre_p

__all__ = [
    "BUILTIN_FUNCTIONS",
    "DEFAULT_BINDINGS",
    "EvalSession",
    "ExprAst",
    "eval_expr",
    "format_expr",
    "integrand_function",
    "parse_expr",
    "term_sequence",
    "MAX_JET_ORDER",
    "Jet",
    "eval_jet",
    "LegendreRecurrence",
    "bessel_j",
    "bessel_taylor_pair",
    "legendre_p",
]
