"""Exception types shared across the package."""

from __future__ import annotations


class AccelError(Exception):
    """Base class for every error raised by this package."""


class InvalidParams(AccelError):
    """A parameter is outside its documented range."""


class NonFiniteValue(AccelError):
    """A term, node, or matrix entry evaluated to NaN or infinity."""


class SingularSystem(AccelError):
    """Gaussian elimination hit a vanishing pivot."""


class DegenerateDifference(AccelError):
    """A difference-based denominator vanished."""


class ParseError(AccelError):
    """Expression text could not be parsed.

    Carries the byte offset of the offending token and the set of token
    kinds that would have been accepted there.
    """

    def __init__(self, message: str, offset: int, expected: tuple[str, ...] = ()):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset
        self.expected = frozenset(expected)


class ContextError(AccelError):
    """An expression used the index variable of the wrong context."""


class DomainError(AccelError):
    """Evaluation left a function's domain (log of non-positive, etc.)."""


class UnboundParameter(AccelError):
    """An expression parameter has no binding."""


class QuadratureNoConvergence(AccelError):
    """Adaptive quadrature exhausted its subdivision depth budget."""
