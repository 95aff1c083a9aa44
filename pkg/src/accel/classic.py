"""Classical baseline accelerators.

Exact summation for terms satisfying a constant-coefficient linear
recurrence, Aitken's delta-squared process, Wynn's epsilon algorithm, the
Euler transform for alternating series, the Levin t/u transformations in
their closed (divided-difference) form, and the small order calculus for
combining difference-equation orders.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .errors import DegenerateDifference, InvalidParams
from .realkit import PartialSums, TermSequence, comp_sum, partial_sums

__all__ = [
    "RecurrenceCoeffs",
    "ClassOrder",
    "exact_sum_recurrence",
    "aitken",
    "wynn_epsilon",
    "euler_transform",
    "levin",
    "class_order",
]


@dataclass(frozen=True)
class RecurrenceCoeffs:
    """Coefficients of ``a_0 f(n) + a_1 f(n+1) + ... + a_k f(n+k) = 0``."""

    a: tuple[float, ...]

    def __post_init__(self):
        if len(self.a) < 2:
            raise InvalidParams("a recurrence needs order k >= 1 (at least a_0, a_1)")
        if self.a[-1] == 0.0:
            raise InvalidParams("the leading coefficient a_k must be nonzero")

    @property
    def order(self) -> int:
        return len(self.a) - 1


@dataclass(frozen=True)
class ClassOrder:
    """Order of the linear difference equation a sequence satisfies."""

    m: int
    provenance: tuple[str, ...] = ("base",)

    def __post_init__(self):
        if self.m < 1:
            raise InvalidParams("difference-equation order must be >= 1")


def exact_sum_recurrence(coeffs: RecurrenceCoeffs, sums: PartialSums, start: int) -> float:
    """Closed-form sum for terms obeying a constant-coefficient recurrence.

    Summing the recurrence over the tails turns it into the same relation
    for the remainders, which collapses to::

        S = sum_j a_j A_{start+j} / sum_j a_j

    The result is exact (up to rounding) and independent of ``start``
    whenever the terms truly satisfy the recurrence.
    """
    if start < 1:
        raise InvalidParams("start index must be a positive integer")
    k = coeffs.order
    if len(sums.values) <= start + k:
        raise InvalidParams(
            f"need partial sums up to index {start + k}, have {len(sums.values) - 1}"
        )
    denominator = comp_sum(coeffs.a)
    if denominator == 0.0:
        raise InvalidParams("recurrence coefficients sum to zero")
    numerator = comp_sum(
        aj * sums.values[start + j] for j, aj in enumerate(coeffs.a)
    )
    return numerator / denominator


def aitken(seq: Sequence[float]) -> list[float]:
    """Aitken's delta-squared process, elementwise over the sequence."""
    if len(seq) < 3:
        raise InvalidParams("Aitken needs at least 3 values")
    out = []
    for i in range(len(seq) - 2):
        d1 = seq[i + 1] - seq[i]
        d2 = seq[i + 2] - 2.0 * seq[i + 1] + seq[i]
        if d2 == 0.0:
            raise DegenerateDifference(f"second difference vanishes at index {i}")
        out.append(seq[i] - d1 * d1 / d2)
    return out


def wynn_epsilon(seq: Sequence[float]) -> float:
    """Wynn's epsilon algorithm; returns the top entry of the last complete
    even column.

    A vanishing difference produces an infinite sentinel in the odd column;
    the difference of two such sentinels is collapsed to zero, which copies
    the already-converged value through (so a constant sequence returns that
    constant).  Only a non-finite final value raises.
    """
    n = len(seq)
    if n < 3:
        raise InvalidParams("the epsilon algorithm needs at least 3 values")
    target = 2 * ((n - 1) // 2)
    prev_prev: list[float] = [0.0] * (n + 1)
    prev: list[float] = [float(v) for v in seq]
    for _ in range(target):
        cur = []
        for i in range(len(prev) - 1):
            delta = prev[i + 1] - prev[i]
            if math.isnan(delta):
                recip = 0.0
            elif delta == 0.0:
                recip = math.inf
            else:
                recip = 1.0 / delta
            cur.append(prev_prev[i + 1] + recip)
        prev_prev, prev = prev, cur
    value = prev[0]
    if not math.isfinite(value):
        raise DegenerateDifference("denominator vanished at the final stage")
    return value


def euler_transform(terms: Sequence[float], depth: int) -> float:
    """Euler transform of an alternating series given its magnitudes.

    For ``sum (-1)^n a_n`` with ``a_n = terms[n]`` returns the classical
    accelerated sum ``sum_{j<=depth} (-Delta)^j a_0 / 2^(j+1)``.
    """
    if depth < 0:
        raise InvalidParams("depth must be non-negative")
    if len(terms) <= depth:
        raise InvalidParams(f"need more than {depth} magnitudes, got {len(terms)}")
    row = [float(v) for v in terms[: depth + 1]]
    contributions = []
    for j in range(depth + 1):
        sign = -1.0 if j % 2 else 1.0
        contributions.append(sign * row[0] / 2.0 ** (j + 1))
        row = [row[i + 1] - row[i] for i in range(len(row) - 1)]
    return comp_sum(contributions)


def levin(kind: str, terms, r: int, offset: int = 0) -> float:
    """Levin transformation of order ``r`` in its closed weighted form.

    ``kind`` selects the remainder estimate: ``"t"`` uses the first
    neglected term ``f(N)``, ``"u"`` uses ``N * f(N)``.  The returned value
    solves the collocation system ``S = A_N + w_N * (b_0 + b_1/N + ... +
    b_{r-1}/N^{r-1})`` at ``N = offset+1 .. offset+r+1`` via the r-th
    forward difference identity.
    """
    if kind not in ("t", "u"):
        raise InvalidParams(f"kind must be 't' or 'u', got {kind!r}")
    if r < 1:
        raise InvalidParams("order r must be >= 1")
    if offset < 0:
        raise InvalidParams("offset must be non-negative")
    seq = TermSequence.of(terms)
    sums = partial_sums(seq, offset + r + 1)
    n1 = offset + 1
    num = []
    den = []
    for j in range(r + 1):
        n = n1 + j
        omega = seq.term(n) if kind == "t" else n * seq.term(n)
        if omega == 0.0:
            raise DegenerateDifference(f"remainder estimate vanishes at N={n}")
        weight = (-1.0) ** j * math.comb(r, j) * float(n) ** (r - 1) / omega
        num.append(weight * sums.values[n])
        den.append(weight)
    denominator = comp_sum(den)
    if denominator == 0.0:
        raise DegenerateDifference("weights cancelled exactly")
    return comp_sum(num) / denominator


def _coerce_order(value: Union[ClassOrder, int]) -> ClassOrder:
    if isinstance(value, ClassOrder):
        return value
    return ClassOrder(int(value))


def class_order(
    rule: str,
    m: Union[ClassOrder, int],
    k: Optional[Union[ClassOrder, int]] = None,
) -> ClassOrder:
    """Combine difference-equation orders: sums add, products multiply,
    and a square gives m(m+1)/2."""
    first = _coerce_order(m)
    if rule in ("sum", "product"):
        if k is None:
            raise InvalidParams(f"rule {rule!r} needs two orders")
        second = _coerce_order(k)
        combined = first.m + second.m if rule == "sum" else first.m * second.m
        return ClassOrder(
            m=combined,
            provenance=first.provenance + second.provenance + (rule,),
        )
    if rule == "square":
        if k is not None:
            raise InvalidParams("rule 'square' takes a single order")
        return ClassOrder(
            m=first.m * (first.m + 1) // 2,
            provenance=first.provenance + ("square",),
        )
    raise InvalidParams(f"unknown rule {rule!r}")
