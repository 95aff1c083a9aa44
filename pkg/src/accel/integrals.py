"""The D-transformation for infinite integrals.

The integral analogue of the series transform: partial integrals A_x take
the place of partial sums, and derivatives f^(k)(x_j), supplied to machine
precision by truncated-Taylor jets, take the place of forward differences::

    I = A_x + sum_{k=0}^{m-1} f^(k)(x) sum_{i=0}^{r-1} b_{k,i} x^(k-i)

Collocating at mr+1 increasing nodes and solving the dense system yields
the accelerated integral as the leading unknown.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping, Optional, Sequence

from .dtrans import TransformResult, _failed_result
from .errors import AccelError, InvalidParams, NonFiniteValue
from .funcs.expr import EvalSession, ExprAst
from .funcs.jets import MAX_JET_ORDER, Jet, eval_jet
from .quadrature import QuadratureConfig, adaptive_panel
from .realkit import NodeScheme, comp_sum, make_nodes, solve_linear

__all__ = [
    "IntegrandFamily",
    "QuadratureConfig",
    "cumulative_integrals",
    "D_transform",
    "D_table",
]


@dataclass(frozen=True)
class IntegrandFamily:
    """An integrand with derivative access: value f(x) and jets at x >= 0."""

    value: Callable[[float], float]
    jet_at: Callable[[float, int], Jet]
    domain_start: float = 0.0

    @classmethod
    def from_expr(
        cls,
        ast: ExprAst,
        bindings: Optional[Mapping[str, float]] = None,
        value_overrides: Optional[Mapping[float, float]] = None,
    ) -> "IntegrandFamily":
        """Build the family from an integral-context expression.

        ``value_overrides`` patches isolated removable points, e.g. an
        integrand with a removable singularity at the origin.
        """
        if ast.context != "integral":
            raise InvalidParams("an IntegrandFamily needs an integral-context expression")
        session = EvalSession(ast, bindings)
        overrides = dict(value_overrides or {})

        def value(x: float) -> float:
            if x in overrides:
                return overrides[x]
            return session.value(x)

        def jet_at(x: float, order: int) -> Jet:
            return eval_jet(ast, x, order, bindings)

        return cls(value=value, jet_at=jet_at)


def cumulative_integrals(
    f: IntegrandFamily,
    nodes: Sequence[float],
    cfg: QuadratureConfig = QuadratureConfig(),
) -> list[float]:
    """Partial integrals A_{x_j} accumulated panel by panel.

    Each panel [x_j, x_{j+1}] (the first from the domain start) is
    integrated adaptively to ``cfg.abs_tol``, so A_{x_j} carries at most
    j * abs_tol of quadrature error.
    """
    if not nodes:
        raise InvalidParams("need at least one node")
    prev = f.domain_start
    if nodes[0] < prev:
        raise InvalidParams("nodes must not precede the domain start")
    for a, b in zip(nodes, nodes[1:]):
        if b <= a:
            raise InvalidParams("nodes must be strictly increasing")
    out = []
    panels: list[float] = []
    for x in nodes:
        panels.append(adaptive_panel(f.value, prev, x, cfg))
        out.append(comp_sum(panels))
        prev = x
    return out


def D_transform(
    f: IntegrandFamily,
    m: int,
    r: int,
    scheme: NodeScheme,
    cfg: QuadratureConfig = QuadratureConfig(),
    power_offset: int = 0,
) -> TransformResult:
    """Accelerate an infinite integral with the order-(m, r) collocation
    system; derivatives come from jets of order m-1.

    ``power_offset`` sets the leading tail power: the k-th derivative is
    weighted by ``x^(k + power_offset - i)``.  The default 0 makes
    remainders of the form f(x) * (polynomial in 1/x) terminate exactly;
    the classical safe choice for a general order-m integrand is 1, since
    integration by parts puts the leading remainder term at x^(k+1) f^(k).
    The bundled benchmark tables with slowly decaying integrands need 1.
    """
    if m < 1:
        raise InvalidParams("differential order m must be >= 1")
    if m - 1 > MAX_JET_ORDER:
        raise InvalidParams(f"m exceeds the jet derivative cap ({MAX_JET_ORDER + 1})")
    if r < 1:
        raise InvalidParams("expansion length r must be >= 1")
    if power_offset not in (0, 1):
        raise InvalidParams("power_offset must be 0 or 1")
    size = m * r + 1
    nodes = make_nodes(scheme, size)
    partials = cumulative_integrals(f, nodes, cfg)

    matrix = []
    rhs = []
    for x, a_x in zip(nodes, partials):
        if not math.isfinite(a_x):
            raise NonFiniteValue(f"partial integral at x={x} is {a_x!r}")
        jet = f.jet_at(x, m - 1)
        row = [1.0]
        for k in range(m):
            deriv = jet.coeffs[k] * math.factorial(k)
            for i in range(r):
                row.append(-deriv * x ** (k + power_offset - i))
        matrix.append(row)
        rhs.append(a_x)

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


def D_table(
    f: IntegrandFamily,
    m: int,
    r_values: Sequence[int],
    scheme: NodeScheme,
    cfg: QuadratureConfig = QuadratureConfig(),
    power_offset: int = 0,
) -> list[TransformResult]:
    """One independent transform per r; failures become flagged entries."""
    if not r_values:
        raise InvalidParams("r_values must be non-empty")
    results = []
    for r in r_values:
        try:
            results.append(D_transform(f, m, int(r), scheme, cfg, power_offset))
        except AccelError as exc:
            nodes = make_nodes(scheme, m * int(r) + 1)
            results.append(_failed_result(m, int(r), nodes, exc))
    return results
