"""The d-transformation for infinite series.

The remainder of a series whose terms satisfy an order-m linear difference
equation admits the truncated model::

    S = A_N + sum_{k=0}^{m-1} (Delta^k f)(N) N^k sum_{i=0}^{r-1} b_{k,i} / N^i

Collocating at mr+1 integer nodes N_j = offset + j turns the unknowns
(S, b_{0,0} .. b_{m-1,r-1}) into a dense linear system; the leading unknown
of the solve is the accelerated sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import AccelError, InvalidParams, NonFiniteValue
from .realkit import (
    ArithmeticIndexNodes,
    TermSequence,
    forward_differences,
    make_nodes,
    partial_sums,
    solve_linear,
)

__all__ = ["TransformParams", "TransformResult", "d_transform", "d_table", "required_terms"]


@dataclass(frozen=True)
class TransformParams:
    """Order pair (m, r), the collocation-node scheme, and the leading
    remainder power.

    ``power_offset`` weights the k-th difference by ``N^(k + power_offset
    - i)``.  The default 0 makes remainders of the form f(N) * (polynomial
    in 1/N) terminate exactly; 1 is the classical choice for monotone
    slowly convergent terms (at m=1 it is the u-type remainder estimate
    N*f(N), at 0 the t-type f(N)).
    """

    m: int
    r: int
    scheme: ArithmeticIndexNodes = ArithmeticIndexNodes(0)
    power_offset: int = 0

    def __post_init__(self):
        if self.m < 1:
            raise InvalidParams("difference order m must be >= 1")
        if self.r < 1:
            raise InvalidParams("expansion length r must be >= 1")
        if self.power_offset not in (0, 1):
            raise InvalidParams("power_offset must be 0 or 1")

    @property
    def system_size(self) -> int:
        return self.m * self.r + 1


@dataclass(frozen=True)
class TransformResult:
    """Accelerated value plus the fitted coefficients and solve diagnostics.

    ``betas`` has exactly m rows and r columns.  ``error`` is set (and
    ``value`` is NaN) only for entries of a table sweep whose individual
    solve failed.
    """

    value: float
    betas: tuple[tuple[float, ...], ...]
    condition_estimate: float
    residual: float
    nodes_used: tuple[float, ...]
    ill_conditioned: bool = False
    degenerate: bool = False
    error: Optional[str] = None


def required_terms(m: int, r: int, offset: int) -> int:
    """Series terms consumed by one transform of order (m, r) at ``offset``.

    The partial sums A_N need f(0 .. offset+mr) and the highest difference
    Delta^(m-1) f at the last node needs m further terms, so the count is
    offset + mr + m + 1.
    """
    return offset + m * r + m + 1


def _failed_result(m: int, r: int, nodes, exc: AccelError) -> TransformResult:
    return TransformResult(
        value=math.nan,
        betas=tuple((math.nan,) * r for _ in range(m)),
        condition_estimate=math.inf,
        residual=math.nan,
        nodes_used=tuple(float(x) for x in nodes),
        degenerate=True,
        error=f"{type(exc).__name__}: {exc}",
    )


def d_transform(terms, params: TransformParams) -> TransformResult:
    """Accelerate a series: solve the collocation system and return the
    leading unknown with the fitted coefficients and diagnostics."""
    if not isinstance(params.scheme, ArithmeticIndexNodes):
        raise InvalidParams("series acceleration uses integer index nodes")
    m, r = params.m, params.r
    offset = params.scheme.start
    size = params.system_size

    seq = TermSequence.of(terms)
    term_values = seq.materialize(required_terms(m, r, offset))
    for n, v in enumerate(term_values):
        if not math.isfinite(v):
            raise NonFiniteValue(f"term f({n}) = {v!r}")

    sums = partial_sums(seq, offset + m * r + 1)
    diffs = [forward_differences(term_values, k) for k in range(m)]
    nodes = make_nodes(params.scheme, size)

    matrix = []
    rhs = []
    shift = params.power_offset
    for node in nodes:
        n_int = int(node)
        row = [1.0]
        for k in range(m):
            dk = diffs[k][n_int]
            for i in range(r):
                # N^k * N^-i combined into one power to avoid huge pairs.
                row.append(-dk * float(node) ** (k + shift - i))
        matrix.append(row)
        rhs.append(sums.values[n_int])

    report = solve_linear(matrix, rhs)
    betas = tuple(
        tuple(report.solution[1 + k * r : 1 + (k + 1) * r]) for k in range(m)
    )
    return TransformResult(
        value=report.solution[0],
        betas=betas,
        condition_estimate=report.condition_estimate,
        residual=report.residual_inf_norm,
        nodes_used=tuple(nodes),
        ill_conditioned=report.ill_conditioned,
    )


def d_table(
    terms, m: int, r_values: Sequence[int], offset: int = 0, power_offset: int = 0
) -> list[TransformResult]:
    """One independent transform per r; failures become flagged entries."""
    if not r_values:
        raise InvalidParams("r_values must be non-empty")
    seq = TermSequence.of(terms)
    results = []
    for r in r_values:
        params = TransformParams(
            m=m, r=int(r), scheme=ArithmeticIndexNodes(offset), power_offset=power_offset
        )
        try:
            results.append(d_transform(seq, params))
        except AccelError as exc:
            nodes = make_nodes(params.scheme, params.system_size)
            results.append(_failed_result(m, int(r), nodes, exc))
    return results
