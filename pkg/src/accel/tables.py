"""Built-in benchmark problems for the ``reproduce`` command.

Five classic acceleration benchmarks: two slowly convergent (or divergent)
Legendre series and three infinite integrals (oscillatory, Bessel-product,
and slowly decaying logarithmic).  Each case pins the transform order, the
node rule, and the published reference value it is checked against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Optional

from .realkit import ArithmeticNodes, GeometricNodes, NodeScheme

__all__ = ["BenchmarkCase", "TABLES", "table_ids"]


@dataclass(frozen=True)
class BenchmarkCase:
    table: str
    label: str
    kind: str  # "series" | "integral"
    expr: str
    m: int
    r_values: tuple[int, ...]
    reference: float
    reference_note: str
    params: Mapping[str, float] = field(default_factory=dict)
    offset: int = 0
    scheme: Optional[NodeScheme] = None
    power_offset: int = 0
    value_overrides: Optional[Mapping[float, float]] = None


_LEGENDRE_SERIES = "legendre(n, x) / ((1 - 2*n)*(2*n + 3))"
_SPHERICAL_SERIES = "cos((n + 1/2)*beta) * legendre(n, cos(phi))"

TABLES: dict[str, tuple[BenchmarkCase, ...]] = {
    "table1": (
        BenchmarkCase(
            table="table1",
            label="x=-1.5",
            kind="series",
            expr=_LEGENDRE_SERIES,
            params={"x": -1.5},
            m=2,
            r_values=(2, 4, 6, 8, 10),
            reference=0.559016994374947,
            reference_note="closed form sqrt((1-x)/8) at x=-1.5",
        ),
        BenchmarkCase(
            table="table1",
            label="x=0.5",
            kind="series",
            expr=_LEGENDRE_SERIES,
            params={"x": 0.5},
            m=2,
            r_values=(2, 4, 6, 8, 10),
            reference=0.25,
            reference_note="closed form sqrt((1-x)/8) at x=0.5",
        ),
        BenchmarkCase(
            table="table1",
            label="x=0.9",
            kind="series",
            expr=_LEGENDRE_SERIES,
            params={"x": 0.9},
            m=2,
            r_values=(2, 4, 6, 8, 10),
            reference=0.111803398874,
            reference_note="closed form sqrt((1-x)/8) at x=0.9",
        ),
    ),
    "table2": (
        BenchmarkCase(
            table="table2",
            label="beta=2pi/3, phi=pi/6",
            kind="series",
            expr=_SPHERICAL_SERIES,
            params={"beta": 2.0 * math.pi / 3.0, "phi": math.pi / 6.0},
            m=4,
            r_values=(2, 3, 4, 5, 6),
            reference=0.0,
            reference_note="closed form: 0 for 0 < phi < beta < pi",
        ),
        BenchmarkCase(
            table="table2",
            label="beta=pi/6, phi=2pi/3",
            kind="series",
            expr=_SPHERICAL_SERIES,
            params={"beta": math.pi / 6.0, "phi": 2.0 * math.pi / 3.0},
            m=4,
            r_values=(2, 3, 4, 5, 6),
            reference=0.605000333706055,
            reference_note="closed form 1/sqrt(2(cos(beta)-cos(phi)))",
        ),
    ),
    "table3": (
        BenchmarkCase(
            table="table3",
            label="a=pi/2, b=0",
            kind="integral",
            expr="sin(a*t^2 + b*t)",
            params={"a": math.pi / 2.0, "b": 0.0},
            m=2,
            r_values=(2, 4, 6, 8, 10),
            scheme=ArithmeticNodes(start=0.2, step=0.2),
            power_offset=1,
            reference=0.5,
            reference_note="known value of the Fresnel-type integral",
        ),
        BenchmarkCase(
            table="table3",
            label="a=pi/2, b=pi/2",
            kind="integral",
            expr="sin(a*t^2 + b*t)",
            params={"a": math.pi / 2.0, "b": math.pi / 2.0},
            m=2,
            r_values=(2, 4, 6, 8, 10),
            scheme=ArithmeticNodes(start=0.2, step=0.2),
            power_offset=1,
            reference=0.3992050585256,
            reference_note="known value of the Fresnel-type integral",
        ),
    ),
    "table4": (
        BenchmarkCase(
            table="table4",
            label="J0(t)J1(t)/t",
            kind="integral",
            expr="besselj0(t)*besselj1(t)/t",
            m=3,
            r_values=(2, 4, 6, 8, 10),
            scheme=ArithmeticNodes(start=0.0, step=1.0),
            power_offset=1,
            reference=0.63661977236758,
            reference_note="2/pi",
            value_overrides={0.0: 0.5},
        ),
    ),
    "table5": (
        BenchmarkCase(
            table="table5",
            label="log(1+t)/(1+t^2)",
            kind="integral",
            expr="log(1 + t)/(1 + t^2)",
            m=2,
            r_values=(2, 4, 6, 8, 10),
            scheme=GeometricNodes(rate=0.2),
            power_offset=1,
            reference=1.460362116753,
            reference_note="known value of the integral",
        ),
    ),
}


def table_ids() -> list[str]:
    return sorted(TABLES)
