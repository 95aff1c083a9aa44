"""A small expression DSL for user-defined series terms and integrands.

Grammar (bit-exact)::

    expr   := term (("+"|"-") term)*
    term   := factor (("*"|"/") factor)*
    factor := unary ("^" factor)?
    unary  := "-" unary | atom
    atom   := number | ident | ident "(" expr ("," expr)* ")" | "(" expr ")"

Identifiers match ``[A-Za-z_][A-Za-z0-9_]*``.  Numbers are plain decimal
literals (no exponent notation); the constants ``pi`` and ``e`` are
predefined parameters.  Series-context expressions use the index variable
``n``, integral-context expressions use ``t``; using the other context's
variable raises ``ContextError``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable, Mapping, Optional, Union

from ..errors import (
    ContextError,
    DomainError,
    InvalidParams,
    ParseError,
    UnboundParameter,
)
from ..realkit import TermSequence
from .special import LegendreRecurrence, bessel_j

__all__ = [
    "ExprAst",
    "parse_expr",
    "eval_expr",
    "format_expr",
    "EvalSession",
    "term_sequence",
    "BUILTIN_FUNCTIONS",
    "DEFAULT_BINDINGS",
]

BUILTIN_FUNCTIONS = {
    "sin": 1,
    "cos": 1,
    "exp": 1,
    "log": 1,
    "sqrt": 1,
    "abs": 1,
    "besselj0": 1,
    "besselj1": 1,
    "legendre": 2,
}

DEFAULT_BINDINGS = {"pi": math.pi, "e": math.e}

_INDEX_VARS = {"series": "n", "integral": "t"}


@dataclass(frozen=True)
class Literal:
    value: float


@dataclass(frozen=True)
class Variable:
    name: str


@dataclass(frozen=True)
class Parameter:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple["Node", ...]


Node = Union[Literal, Variable, Parameter, Neg, BinOp, Call]


@dataclass(frozen=True)
class ExprAst:
    """A parsed expression plus its context and free parameter names."""

    root: Node
    context: str
    parameters: frozenset


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<number>\d+\.?\d*|\.\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[+\-*/^(),]))"
)


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            bad_pos = len(text) - len(stripped)
            raise ParseError(
                f"unexpected character {text[bad_pos]!r}",
                _byte_offset(text, bad_pos),
                expected=("number", "identifier", "operator"),
            )
        kind = m.lastgroup
        value = m.group(kind)
        start = m.end() - len(value)
        tokens.append((kind if kind != "op" else value, value, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, context: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        self.index_var = _INDEX_VARS[context]
        self.wrong_var = _INDEX_VARS["integral" if context == "series" else "series"]
        self.parameters: set = set()

    def _peek(self):
        return self.tokens[self.pos]

    def _advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def _error(self, message: str, token, expected) -> ParseError:
        return ParseError(message, _byte_offset(self.text, token[2]), expected=expected)

    def _expect(self, kind: str):
        tok = self._peek()
        if tok[0] != kind:
            raise self._error(f"expected {kind!r}", tok, expected=(kind,))
        return self._advance()

    def parse(self) -> Node:
        node = self._expr()
        tok = self._peek()
        if tok[0] != "end":
            raise self._error(
                f"unexpected {tok[1]!r}", tok, expected=("+", "-", "*", "/", "^", "end")
            )
        return node

    def _expr(self) -> Node:
        node = self._term()
        while self._peek()[0] in ("+", "-"):
            op = self._advance()[0]
            node = BinOp(op, node, self._term())
        return node

    def _term(self) -> Node:
        node = self._factor()
        while self._peek()[0] in ("*", "/"):
            op = self._advance()[0]
            node = BinOp(op, node, self._factor())
        return node

    def _factor(self) -> Node:
        node = self._unary()
        if self._peek()[0] == "^":
            self._advance()
            node = BinOp("^", node, self._factor())
        return node

    def _unary(self) -> Node:
        if self._peek()[0] == "-":
            self._advance()
            return Neg(self._unary())
        return self._atom()

    def _atom(self) -> Node:
        tok = self._peek()
        if tok[0] == "number":
            self._advance()
            return Literal(float(tok[1]))
        if tok[0] == "ident":
            self._advance()
            name = tok[1]
            if self._peek()[0] == "(":
                return self._call(name, tok)
            if name == self.index_var:
                return Variable(name)
            if name == self.wrong_var:
                raise ContextError(
                    f"variable {name!r} is not available in this context "
                    f"(use {self.index_var!r})"
                )
            self.parameters.add(name)
            return Parameter(name)
        if tok[0] == "(":
            self._advance()
            node = self._expr()
            self._expect(")")
            return node
        raise self._error(
            f"expected a value, found {tok[1] or 'end of input'!r}",
            tok,
            expected=("number", "identifier", "(", "-"),
        )

    def _call(self, name: str, name_tok) -> Node:
        if name not in BUILTIN_FUNCTIONS:
            raise self._error(
                f"unknown function {name!r}",
                name_tok,
                expected=tuple(sorted(BUILTIN_FUNCTIONS)),
            )
        arity = BUILTIN_FUNCTIONS[name]
        self._expect("(")
        args = [self._expr()]
        while self._peek()[0] == ",":
            self._advance()
            args.append(self._expr())
        closing = self._peek()
        if closing[0] != ")":
            raise self._error("expected ')'", closing, expected=(")", ","))
        self._advance()
        if len(args) != arity:
            raise self._error(
                f"{name} takes {arity} argument(s), got {len(args)}",
                closing,
                expected=(")", ","),
            )
        return Call(name, tuple(args))


def parse_expr(text: str, context: str) -> ExprAst:
    """Parse DSL text in the given context ('series' or 'integral')."""
    if context not in _INDEX_VARS:
        raise InvalidParams(f"context must be 'series' or 'integral', got {context!r}")
    if not text.strip():
        raise ParseError("empty expression", 0, expected=("number", "identifier", "(", "-"))
    parser = _Parser(text, context)
    root = parser.parse()
    return ExprAst(root=root, context=context, parameters=frozenset(parser.parameters))


def _scalar_power(base: float, exponent: float) -> float:
    if exponent == int(exponent) and abs(exponent) <= 1e6:
        n = int(exponent)
        if base == 0.0 and n < 0:
            raise DomainError("zero raised to a negative power")
        try:
            return float(base ** n)
        except OverflowError as exc:
            raise DomainError("power overflow") from exc
    if base < 0.0:
        raise DomainError("negative base with non-integer exponent")
    if base == 0.0 and exponent < 0.0:
        raise DomainError("zero raised to a negative power")
    try:
        return math.pow(base, exponent)
    except (ValueError, OverflowError) as exc:
        raise DomainError(str(exc)) from exc


class EvalSession:
    """Repeated scalar evaluation of one expression with fixed bindings.

    Keeps the Legendre recurrence chains across calls, so scanning a series
    term by term costs O(1) amortized per Legendre evaluation.  Sessions are
    not meant to be shared across threads.
    """

    def __init__(self, ast: ExprAst, bindings: Optional[Mapping[str, float]] = None):
        self.ast = ast
        self.env = dict(DEFAULT_BINDINGS)
        if bindings:
            self.env.update({k: float(v) for k, v in bindings.items()})
        self._legendre: dict[float, LegendreRecurrence] = {}

    def value(self, point: float) -> float:
        return self._eval(self.ast.root, float(point))

    def _legendre_value(self, degree: float, x: float) -> float:
        rounded = round(degree)
        if abs(degree - rounded) > 1e-9 or rounded < 0:
            raise DomainError(
                f"legendre degree must be a non-negative integer, got {degree!r}"
            )
        chain = self._legendre.get(x)
        if chain is None:
            chain = self._legendre[x] = LegendreRecurrence(x)
        return chain.value(int(rounded))

    def _eval(self, node: Node, point: float) -> float:
        if isinstance(node, Literal):
            return node.value
        if isinstance(node, Variable):
            return point
        if isinstance(node, Parameter):
            try:
                return self.env[node.name]
            except KeyError:
                raise UnboundParameter(f"parameter {node.name!r} has no binding") from None
        if isinstance(node, Neg):
            return -self._eval(node.operand, point)
        if isinstance(node, BinOp):
            left = self._eval(node.left, point)
            right = self._eval(node.right, point)
            if node.op == "+":
                return left + right
            if node.op == "-":
                return left - right
            if node.op == "*":
                return left * right
            if node.op == "/":
                if right == 0.0:
                    raise DomainError("division by zero")
                return left / right
            return _scalar_power(left, right)
        if isinstance(node, Call):
            if node.name == "legendre":
                degree = self._eval(node.args[0], point)
                x = self._eval(node.args[1], point)
                return self._legendre_value(degree, x)
            arg = self._eval(node.args[0], point)
            if node.name == "sin":
                return math.sin(arg)
            if node.name == "cos":
                return math.cos(arg)
            if node.name == "exp":
                try:
                    return math.exp(arg)
                except OverflowError as exc:
                    raise DomainError("exp overflow") from exc
            if node.name == "log":
                if arg <= 0.0:
                    raise DomainError(f"log of non-positive value {arg!r}")
                return math.log(arg)
            if node.name == "sqrt":
                if arg < 0.0:
                    raise DomainError(f"sqrt of negative value {arg!r}")
                return math.sqrt(arg)
            if node.name == "abs":
                return abs(arg)
            if node.name in ("besselj0", "besselj1"):
                if arg < 0.0:
                    raise DomainError(f"Bessel argument must be non-negative, got {arg!r}")
                return bessel_j(0 if node.name == "besselj0" else 1, arg)
        raise InvalidParams(f"unknown AST node {node!r}")


def eval_expr(ast: ExprAst, bindings: Optional[Mapping[str, float]], point: float) -> float:
    """One-shot evaluation; use EvalSession for term-by-term scans."""
    return EvalSession(ast, bindings).value(point)


def term_sequence(ast: ExprAst, bindings: Optional[Mapping[str, float]] = None) -> TermSequence:
    """Wrap a series-context expression as a lazily evaluated term sequence."""
    if ast.context != "series":
        raise InvalidParams("term sequences need a series-context expression")
    session = EvalSession(ast, bindings)
    return TermSequence(lambda n: session.value(float(n)))


def integrand_function(
    ast: ExprAst, bindings: Optional[Mapping[str, float]] = None
) -> Callable[[float], float]:
    """Wrap an integral-context expression as a plain ``f(t)`` callable."""
    if ast.context != "integral":
        raise InvalidParams("integrands need an integral-context expression")
    session = EvalSession(ast, bindings)
    return session.value


def _format_number(value: float) -> str:
    text = repr(value)
    if "e" in text or "E" in text:
        # Exact decimal expansion keeps the literal inside the DSL grammar
        # (no exponent notation) and round-trips bit-exactly.
        text = format(value, ".1100f").rstrip("0")
        if text.endswith("."):
            text += "0"
    return text


def format_expr(node) -> str:
    """Render an AST back to parseable text (fully parenthesized)."""
    if isinstance(node, ExprAst):
        return format_expr(node.root)
    if isinstance(node, Literal):
        return _format_number(node.value)
    if isinstance(node, (Variable, Parameter)):
        return node.name
    if isinstance(node, Neg):
        return f"(-{format_expr(node.operand)})"
    if isinstance(node, BinOp):
        return f"({format_expr(node.left)}{node.op}{format_expr(node.right)})"
    if isinstance(node, Call):
        args = ",".join(format_expr(a) for a in node.args)
        return f"{node.name}({args})"
    raise InvalidParams(f"unknown AST node {node!r}")
