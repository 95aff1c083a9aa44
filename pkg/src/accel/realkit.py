"""Low-level numeric services shared by all transforms.

Partial sums with compensated accumulation, forward differences,
collocation-node generation, and a dense LU solver with conditioning
diagnostics.  Everything works on plain Python floats: the linear systems
built by the transforms stay small (tens of unknowns), so control over
rounding and pivoting matters more than raw speed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence, Union

from .errors import InvalidParams, NonFiniteValue, SingularSystem

__all__ = [
    "two_sum",
    "comp_sum",
    "TermSequence",
    "PartialSums",
    "partial_sums",
    "forward_differences",
    "ArithmeticIndexNodes",
    "ArithmeticNodes",
    "GeometricNodes",
    "ExplicitNodes",
    "NodeScheme",
    "make_nodes",
    "SolveReport",
    "solve_linear",
    "ILL_CONDITIONED_THRESHOLD",
]

ILL_CONDITIONED_THRESHOLD = 1e13

# Pivots below this (rows are pre-scaled to unit max) are treated as exact
# rank deficiency rather than mere ill-conditioning.
_PIVOT_FLOOR = 1e-300


def two_sum(a: float, b: float) -> tuple[float, float]:
    """Error-free transformation: ``s = fl(a+b)`` and ``s + err == a + b``."""
    s = a + b
    t = s - a
    err = (a - (s - t)) + (b - t)
    return s, err


def comp_sum(values: Iterable[float]) -> float:
    """Sum with Neumaier compensation (one rounding at the end)."""
    total = 0.0
    comp = 0.0
    for v in values:
        total, err = two_sum(total, v)
        comp += err
    return total + comp


class TermSequence:
    """Lazily evaluated series terms ``f(0), f(1), ...``.

    Values are cached, and ``evaluations`` counts how many distinct indices
    were actually computed, so callers can assert term budgets.
    """

    def __init__(self, fn: Callable[[int], float]):
        self._fn = fn
        self._cache: list[float] = []
        self.evaluations = 0

    @classmethod
    def of(cls, source: "TermSequence | Callable[[int], float] | Sequence[float]") -> "TermSequence":
        """Coerce a callable or a plain sequence of values."""
        if isinstance(source, TermSequence):
            return source
        if callable(source):
            return cls(source)
        values = [float(v) for v in source]

        def fn(n: int) -> float:
            if n >= len(values):
                raise InvalidParams(
                    f"term sequence holds {len(values)} values, index {n} requested"
                )
            return values[n]

        return cls(fn)

    def term(self, n: int) -> float:
        if n < 0:
            raise InvalidParams("term index must be non-negative")
        while len(self._cache) <= n:
            value = float(self._fn(len(self._cache)))
            self._cache.append(value)
            self.evaluations += 1
        return self._cache[n]

    __call__ = term

    def materialize(self, count: int) -> list[float]:
        """Return ``[f(0), ..., f(count-1)]``, evaluating what is missing."""
        if count < 0:
            raise InvalidParams("count must be non-negative")
        if count:
            self.term(count - 1)
        return self._cache[:count]


@dataclass(frozen=True)
class PartialSums:
    """Cumulative sums ``values[N] = f(0) + ... + f(N-1)``; ``values[0] == 0``.

    ``values`` carries one rounding per entry; ``corrections`` holds the
    accumulated compensation so that ``values[N] + corrections[N]`` is the
    running sum to roughly double-double accuracy (consecutive differences
    of those pairs reproduce the terms to within 1 ulp).
    """

    values: tuple[float, ...]
    corrections: tuple[float, ...]
    term_count: int


def partial_sums(terms, count: int) -> PartialSums:
    """Accumulate ``A_0 .. A_count`` with compensated (two-sum) addition.

    Raises ``NonFiniteValue`` on a NaN/infinite term.
    """
    if count < 1:
        raise InvalidParams("count must be >= 1")
    seq = TermSequence.of(terms)
    out = [0.0]
    corr = [0.0]
    total = 0.0
    comp = 0.0
    for n in range(count):
        t = seq.term(n)
        if not math.isfinite(t):
            raise NonFiniteValue(f"term f({n}) = {t!r}")
        total, err = two_sum(total, t)
        comp += err
        snapshot, rest = two_sum(total, comp)
        out.append(snapshot)
        corr.append(rest)
    return PartialSums(values=tuple(out), corrections=tuple(corr), term_count=count)


def forward_differences(seq: Sequence[float], k: int) -> list[float]:
    """Apply the forward difference ``(Δf)(n) = f(n+1) - f(n)`` k times."""
    if k < 0:
        raise InvalidParams("difference order must be non-negative")
    if len(seq) <= k:
        raise InvalidParams(f"need more than {k} values, got {len(seq)}")
    cur = [float(v) for v in seq]
    for _ in range(k):
        cur = [cur[i + 1] - cur[i] for i in range(len(cur) - 1)]
    return cur


@dataclass(frozen=True)
class ArithmeticIndexNodes:
    """Integer collocation indices ``start + j`` for j = 1, 2, ..."""

    start: int = 0


@dataclass(frozen=True)
class ArithmeticNodes:
    """Real collocation nodes ``start + j*step`` for j = 1, 2, ..."""

    start: float
    step: float


@dataclass(frozen=True)
class GeometricNodes:
    """Collocation nodes ``exp(rate*(j-1))`` for j = 1, 2, ..."""

    rate: float


@dataclass(frozen=True)
class ExplicitNodes:
    """A user-supplied, strictly increasing list of positive nodes."""

    nodes: tuple[float, ...]


NodeScheme = Union[ArithmeticIndexNodes, ArithmeticNodes, GeometricNodes, ExplicitNodes]


def make_nodes(scheme: NodeScheme, count: int) -> list[float]:
    """Generate the first ``count`` collocation nodes of a scheme.

    The result is strictly increasing and positive for every variant.
    """
    if count < 1:
        raise InvalidParams("node count must be >= 1")
    if isinstance(scheme, ArithmeticIndexNodes):
        if scheme.start < 0 or scheme.start != int(scheme.start):
            raise InvalidParams("index offset must be a non-negative integer")
        return [float(scheme.start + j) for j in range(1, count + 1)]
    if isinstance(scheme, ArithmeticNodes):
        if scheme.step <= 0:
            raise InvalidParams("node step must be positive")
        if scheme.start < 0:
            raise InvalidParams("node start must be non-negative")
        return [scheme.start + j * scheme.step for j in range(1, count + 1)]
    if isinstance(scheme, GeometricNodes):
        if scheme.rate <= 0:
            raise InvalidParams("geometric rate must be positive")
        return [math.exp(scheme.rate * (j - 1)) for j in range(1, count + 1)]
    if isinstance(scheme, ExplicitNodes):
        nodes = [float(v) for v in scheme.nodes]
        if len(nodes) < count:
            raise InvalidParams(f"explicit scheme holds {len(nodes)} nodes, {count} requested")
        nodes = nodes[:count]
        if nodes[0] <= 0:
            raise InvalidParams("explicit nodes must be positive")
        for a, b in zip(nodes, nodes[1:]):
            if b <= a:
                raise InvalidParams("explicit nodes must be strictly increasing")
        return nodes
    raise InvalidParams(f"unknown node scheme {scheme!r}")


@dataclass(frozen=True)
class SolveReport:
    """Solution of a dense linear system plus conditioning diagnostics."""

    solution: tuple[float, ...]
    residual_inf_norm: float
    condition_estimate: float
    refined: bool
    ill_conditioned: bool


def _lu_factor(a: list[list[float]]) -> tuple[list[list[float]], list[int]]:
    """In-place LU with partial pivoting; returns factors and row map."""
    n = len(a)
    rowmap = list(range(n))
    for col in range(n):
        pivot_row = max(range(col, n), key=lambda r: abs(a[r][col]))
        if abs(a[pivot_row][col]) < _PIVOT_FLOOR:
            raise SingularSystem(f"pivot {a[pivot_row][col]!r} in column {col}")
        if pivot_row != col:
            a[col], a[pivot_row] = a[pivot_row], a[col]
            rowmap[col], rowmap[pivot_row] = rowmap[pivot_row], rowmap[col]
        pivot = a[col][col]
        for r in range(col + 1, n):
            m = a[r][col] / pivot
            a[r][col] = m
            if m != 0.0:
                arow = a[r]
                acol = a[col]
                for c in range(col + 1, n):
                    arow[c] -= m * acol[c]
    return a, rowmap


def _lu_solve(lu: list[list[float]], rowmap: list[int], b: Sequence[float]) -> list[float]:
    n = len(lu)
    x = [b[rowmap[i]] for i in range(n)]
    for i in range(1, n):
        row = lu[i]
        x[i] -= math.fsum(row[j] * x[j] for j in range(i))
    for i in range(n - 1, -1, -1):
        row = lu[i]
        x[i] = (x[i] - math.fsum(row[j] * x[j] for j in range(i + 1, n))) / row[i]
    return x


def _lu_solve_transpose(lu: list[list[float]], rowmap: list[int], b: Sequence[float]) -> list[float]:
    n = len(lu)
    # Solve U^T y = b (forward), then L^T z = y (backward), then undo pivoting.
    y = list(b)
    for i in range(n):
        y[i] = (y[i] - math.fsum(lu[j][i] * y[j] for j in range(i))) / lu[i][i]
    for i in range(n - 1, -1, -1):
        y[i] -= math.fsum(lu[j][i] * y[j] for j in range(i + 1, n))
    x = [0.0] * n
    for i in range(n):
        x[rowmap[i]] = y[i]
    return x


def _residual(a: list[list[float]], b: Sequence[float], x: Sequence[float]) -> list[float]:
    """Rows of ``b - A x`` with compensated accumulation of the products."""
    out = []
    for i, row in enumerate(a):
        total = b[i]
        comp = 0.0
        for aij, xj in zip(row, x):
            total, err = two_sum(total, -(aij * xj))
            comp += err
        out.append(total + comp)
    return out


def _norm1_estimate_inverse(lu, rowmap) -> float:
    """Hager's 1-norm estimator for ``||A^{-1}||_1`` from the LU factors."""
    n = len(lu)
    x = [1.0 / n] * n
    estimate = 0.0
    for _ in range(5):
        y = _lu_solve(lu, rowmap, x)
        estimate = sum(abs(v) for v in y)
        xi = [1.0 if v >= 0.0 else -1.0 for v in y]
        z = _lu_solve_transpose(lu, rowmap, xi)
        j = max(range(n), key=lambda i: abs(z[i]))
        if abs(z[j]) <= sum(zi * xv for zi, xv in zip(z, x)):
            break
        x = [0.0] * n
        x[j] = 1.0
    return estimate


def solve_linear(matrix: Sequence[Sequence[float]], rhs: Sequence[float]) -> SolveReport:
    """Solve a dense square system with scaled partial pivoting.

    Each row (including its right-hand side) is first scaled by its
    max-abs entry, then LU with partial pivoting is applied, followed by
    one step of residual-based iterative refinement.  The report carries
    the recomputed residual and a 1-norm condition estimate of the
    equilibrated matrix; ``ill_conditioned`` is set above 1e13 rather than
    rejecting the solve, since extrapolation systems are routinely
    ill-conditioned yet deliver accurate leading unknowns.
    """
    n = len(matrix)
    if n == 0 or any(len(row) != n for row in matrix) or len(rhs) != n:
        raise InvalidParams("matrix must be square and match the rhs length")
    a = [[float(v) for v in row] for row in matrix]
    b = [float(v) for v in rhs]
    for i, row in enumerate(a):
        for v in row:
            if not math.isfinite(v):
                raise NonFiniteValue(f"matrix entry {v!r} in row {i}")
        if not math.isfinite(b[i]):
            raise NonFiniteValue(f"rhs entry {b[i]!r}")

    # Row equilibration (rhs scaled along).
    scaled = []
    scaled_rhs = []
    for row, bi in zip(a, b):
        s = max(abs(v) for v in row)
        if s == 0.0:
            raise SingularSystem("matrix has an all-zero row")
        scaled.append([v / s for v in row])
        scaled_rhs.append(bi / s)

    norm1 = max(sum(abs(scaled[i][j]) for i in range(n)) for j in range(n))
    lu, rowmap = _lu_factor([row[:] for row in scaled])
    x = _lu_solve(lu, rowmap, scaled_rhs)

    # One step of iterative refinement with a compensated residual.
    r = _residual(scaled, scaled_rhs, x)
    dx = _lu_solve(lu, rowmap, r)
    x = [xi + di for xi, di in zip(x, dx)]

    residual = max(abs(v) for v in _residual(a, b, x))
    condition = max(1.0, norm1 * _norm1_estimate_inverse(lu, rowmap))
    return SolveReport(
        solution=tuple(x),
        residual_inf_norm=residual,
        condition_estimate=condition,
        refined=True,
        ill_conditioned=condition > ILL_CONDITIONED_THRESHOLD,
    )
