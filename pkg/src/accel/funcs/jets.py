"""Truncated Taylor (jet) arithmetic over expression ASTs.

A jet holds the scaled derivatives ``coeffs[i] = f^(i)(t0) / i!`` of a
function at an expansion point.  Arithmetic is exact truncated-Taylor
arithmetic: products are Cauchy convolutions cut at the jet order, and the
elementary functions use the standard power-series recurrences, so the
derivatives come out to near machine precision (no finite differences
anywhere).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from ..errors import DomainError, InvalidParams, UnboundParameter
from . import expr as _expr
from .special import bessel_taylor_pair

__all__ = ["Jet", "eval_jet", "MAX_JET_ORDER"]

MAX_JET_ORDER = 8


@dataclass(frozen=True)
class Jet:
    """Truncated Taylor coefficients of an expression at a point."""

    t0: float
    coeffs: tuple[float, ...]

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def derivative(self, k: int) -> float:
        """The k-th derivative value (coefficients unscaled)."""
        if not 0 <= k <= self.order:
            raise InvalidParams(f"derivative order {k} outside jet order {self.order}")
        return self.coeffs[k] * math.factorial(k)

    @classmethod
    def constant(cls, value: float, order: int, t0: float) -> "Jet":
        return cls(t0, (float(value),) + (0.0,) * order)

    @classmethod
    def variable(cls, t0: float, order: int) -> "Jet":
        if order == 0:
            return cls(t0, (float(t0),))
        return cls(t0, (float(t0), 1.0) + (0.0,) * (order - 1))

    # -- ring operations ----------------------------------------------------

    def __add__(self, other) -> "Jet":
        other = self._coerce(other)
        return Jet(self.t0, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "Jet":
        return Jet(self.t0, tuple(-a for a in self.coeffs))

    def __sub__(self, other) -> "Jet":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Jet":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Jet":
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        out = tuple(
            math.fsum(a[j] * b[k - j] for j in range(k + 1)) for k in range(len(a))
        )
        return Jet(self.t0, out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Jet":
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if b[0] == 0.0:
            raise DomainError("jet division by a function vanishing at the point")
        out = []
        for k in range(len(a)):
            acc = a[k] - math.fsum(b[k - j] * out[j] for j in range(k))
            out.append(acc / b[0])
        return Jet(self.t0, tuple(out))

    def __rtruediv__(self, other) -> "Jet":
        return self._coerce(other) / self

    def _coerce(self, other) -> "Jet":
        if isinstance(other, Jet):
            if other.order != self.order:
                raise InvalidParams("jet orders do not match")
            return other
        return Jet.constant(float(other), self.order, self.t0)


def _compose(coeffs: Sequence[float], du: Jet) -> Jet:
    """Evaluate sum coeffs[i] * du^i by Horner; du must vanish at order 0."""
    result = Jet.constant(coeffs[-1], du.order, du.t0)
    for c in reversed(coeffs[:-1]):
        result = result * du + c
    return result


def _jet_exp(u: Jet) -> Jet:
    out = [math.exp(u.coeffs[0])]
    for k in range(1, u.order + 1):
        out.append(
            math.fsum(j * u.coeffs[j] * out[k - j] for j in range(1, k + 1)) / k
        )
    return Jet(u.t0, tuple(out))


def _jet_log(u: Jet) -> Jet:
    u0 = u.coeffs[0]
    if u0 <= 0.0:
        raise DomainError(f"log of non-positive value {u0!r}")
    out = [math.log(u0)]
    for k in range(1, u.order + 1):
        acc = k * u.coeffs[k] - math.fsum(
            j * out[j] * u.coeffs[k - j] for j in range(1, k)
        )
        out.append(acc / (k * u0))
    return Jet(u.t0, tuple(out))


def _jet_sqrt(u: Jet) -> Jet:
    u0 = u.coeffs[0]
    if u0 < 0.0:
        raise DomainError(f"sqrt of negative value {u0!r}")
    if u0 == 0.0:
        if u.order == 0:
            return Jet(u.t0, (0.0,))
        raise DomainError("sqrt is not differentiable at zero")
    w0 = math.sqrt(u0)
    out = [w0]
    for k in range(1, u.order + 1):
        acc = u.coeffs[k] - math.fsum(out[j] * out[k - j] for j in range(1, k))
        out.append(acc / (2.0 * w0))
    return Jet(u.t0, tuple(out))


def _jet_sin_cos(u: Jet) -> tuple[Jet, Jet]:
    s = [math.sin(u.coeffs[0])]
    c = [math.cos(u.coeffs[0])]
    for k in range(1, u.order + 1):
        s.append(math.fsum(j * u.coeffs[j] * c[k - j] for j in range(1, k + 1)) / k)
        c.append(-math.fsum(j * u.coeffs[j] * s[k - j] for j in range(1, k + 1)) / k)
    return Jet(u.t0, tuple(s)), Jet(u.t0, tuple(c))


def _jet_abs(u: Jet) -> Jet:
    u0 = u.coeffs[0]
    if u0 > 0.0:
        return u
    if u0 < 0.0:
        return -u
    if u.order == 0:
        return Jet(u.t0, (0.0,))
    raise DomainError("abs is not differentiable at a zero crossing")


def _jet_bessel(which: int, u: Jet) -> Jet:
    center = u.coeffs[0]
    if center < 0.0:
        raise DomainError(f"Bessel argument must be non-negative, got {center!r}")
    c0, c1 = bessel_taylor_pair(center, u.order)
    return _compose(c0 if which == 0 else c1, u - center)


def _jet_legendre(degree: float, u: Jet) -> Jet:
    rounded = round(degree)
    if abs(degree - rounded) > 1e-9 or rounded < 0:
        raise DomainError(f"legendre degree must be a non-negative integer, got {degree!r}")
    k = int(rounded)
    p_prev = Jet.constant(1.0, u.order, u.t0)
    if k == 0:
        return p_prev
    p_cur = u
    for n in range(1, k):
        p_prev, p_cur = p_cur, ((2 * n + 1) * u * p_cur - n * p_prev) / (n + 1)
    return p_cur


def _jet_power(u: Jet, v: Jet) -> Jet:
    is_const = all(c == 0.0 for c in v.coeffs[1:])
    if is_const:
        c = v.coeffs[0]
        if c == int(c) and abs(c) <= 1000:
            n = int(c)
            if n == 0:
                return Jet.constant(1.0, u.order, u.t0)
            base = u
            if n < 0:
                if u.coeffs[0] == 0.0:
                    raise DomainError("zero raised to a negative power")
                base = Jet.constant(1.0, u.order, u.t0) / u
                n = -n
            result = Jet.constant(1.0, u.order, u.t0)
            while n:
                if n & 1:
                    result = result * base
                base = base * base
                n >>= 1
            return result
        if u.coeffs[0] <= 0.0:
            raise DomainError("non-integer power needs a positive base")
        return _jet_exp(c * _jet_log(u))
    if u.coeffs[0] <= 0.0:
        raise DomainError("variable exponent needs a positive base")
    return _jet_exp(v * _jet_log(u))


def eval_jet(
    ast: "_expr.ExprAst",
    t0: float,
    order: int,
    bindings: Optional[Mapping[str, float]] = None,
) -> Jet:
    """Expand an expression as a jet of the given order at ``t0``."""
    if order < 0 or order > MAX_JET_ORDER:
        raise InvalidParams(f"jet order must be in 0..{MAX_JET_ORDER}, got {order}")
    env = dict(_expr.DEFAULT_BINDINGS)
    if bindings:
        env.update({k: float(v) for k, v in bindings.items()})
    t0 = float(t0)

    def walk(node) -> Jet:
        if isinstance(node, _expr.Literal):
            return Jet.constant(node.value, order, t0)
        if isinstance(node, _expr.Variable):
            return Jet.variable(t0, order)
        if isinstance(node, _expr.Parameter):
            try:
                return Jet.constant(env[node.name], order, t0)
            except KeyError:
                raise UnboundParameter(f"parameter {node.name!r} has no binding") from None
        if isinstance(node, _expr.Neg):
            return -walk(node.operand)
        if isinstance(node, _expr.BinOp):
            left = walk(node.left)
            right = walk(node.right)
            if node.op == "+":
                return left + right
            if node.op == "-":
                return left - right
            if node.op == "*":
                return left * right
            if node.op == "/":
                return left / right
            return _jet_power(left, right)
        if isinstance(node, _expr.Call):
            if node.name == "legendre":
                deg_jet = walk(node.args[0])
                if any(c != 0.0 for c in deg_jet.coeffs[1:]):
                    raise DomainError("legendre degree must not depend on the variable")
                return _jet_legendre(deg_jet.coeffs[0], walk(node.args[1]))
            arg = walk(node.args[0])
            if node.name == "sin":
                return _jet_sin_cos(arg)[0]
            if node.name == "cos":
                return _jet_sin_cos(arg)[1]
            if node.name == "exp":
                return _jet_exp(arg)
            if node.name == "log":
                return _jet_log(arg)
            if node.name == "sqrt":
                return _jet_sqrt(arg)
            if node.name == "abs":
                return _jet_abs(arg)
            if node.name == "besselj0":
                return _jet_bessel(0, arg)
            if node.name == "besselj1":
                return _jet_bessel(1, arg)
        raise InvalidParams(f"unknown AST node {node!r}")

    return walk(ast.root)
