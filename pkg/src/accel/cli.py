"""Command-line front end.

Subcommands: ``reproduce`` re-runs the built-in benchmark tables against
their references, ``series``/``integral`` accelerate a DSL-defined problem,
and ``classic`` applies one of the baseline methods.  Output is a human
markdown table by default, or machine-readable CSV/JSON via ``--format``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from typing import Optional, Sequence

from . import classic
from .dtrans import TransformResult, d_table
from .errors import AccelError, InvalidParams
from .funcs.expr import parse_expr, term_sequence
from .integrals import D_table, IntegrandFamily
from .quadrature import QuadratureConfig
from .realkit import (
    ArithmeticIndexNodes,
    ArithmeticNodes,
    ExplicitNodes,
    GeometricNodes,
    NodeScheme,
    partial_sums,
)
from .tables import TABLES, table_ids

__all__ = [
    "ReportRow",
    "RunReport",
    "run_reproduce",
    "run_series",
    "run_integral",
    "run_classic",
    "parse_node_spec",
    "main",
]

QUAD_TOL_ENV = "ACCEL_QUAD_TOL"
CSV_HEADER = "r,value,abs_error,cond_flag"


@dataclass
class ReportRow:
    r: int
    value: float
    abs_error: Optional[float]
    cond_flag: str = ""

    @property
    def is_error(self) -> bool:
        return self.cond_flag.startswith("error:")


@dataclass
class RunReport:
    method: str
    params: dict
    rows: list[ReportRow]
    reference: Optional[float]
    reference_note: Optional[str]
    wall_time: float
    title: str = ""

    def to_dict(self) -> dict:
        def scrub(x):
            return None if x is None or x != x else x  # NaN -> null

        return {
            "method": self.method,
            "title": self.title,
            "params": self.params,
            "reference": scrub(self.reference),
            "reference_note": self.reference_note,
            "rows": [
                {
                    "r": row.r,
                    "value": scrub(row.value),
                    "abs_error": scrub(row.abs_error),
                    "cond_flag": row.cond_flag,
                }
                for row in self.rows
            ],
            "wall_time": self.wall_time,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RunReport":
        rows = [
            ReportRow(
                r=item["r"],
                value=float("nan") if item["value"] is None else item["value"],
                abs_error=item["abs_error"],
                cond_flag=item["cond_flag"],
            )
            for item in data["rows"]
        ]
        return cls(
            method=data["method"],
            params=data["params"],
            rows=rows,
            reference=data["reference"],
            reference_note=data["reference_note"],
            wall_time=data["wall_time"],
            title=data.get("title", ""),
        )


def _fmt(value: Optional[float]) -> str:
    if value is None:
        return ""
    return format(value, ".15g")


def _flag_of(result: TransformResult) -> str:
    if result.error is not None:
        return f"error:{result.error.split(':', 1)[0]}"
    if result.degenerate:
        return "degenerate"
    if result.ill_conditioned:
        return "ill_conditioned"
    return ""


def _rows_from_results(r_values, results, reference) -> list[ReportRow]:
    rows = []
    for r, result in zip(r_values, results):
        err = None
        if reference is not None and result.error is None:
            err = abs(result.value - reference)
        rows.append(ReportRow(r=int(r), value=result.value, abs_error=err, cond_flag=_flag_of(result)))
    return rows


def _quad_config() -> QuadratureConfig:
    raw = os.environ.get(QUAD_TOL_ENV)
    if raw is None:
        return QuadratureConfig()
    try:
        return QuadratureConfig(abs_tol=float(raw))
    except (ValueError, InvalidParams) as exc:
        raise InvalidParams(f"bad {QUAD_TOL_ENV} value {raw!r}: {exc}") from exc


def _scheme_spec(scheme: NodeScheme) -> str:
    if isinstance(scheme, ArithmeticIndexNodes):
        return f"arithidx:l={scheme.start}"
    if isinstance(scheme, ArithmeticNodes):
        return f"arith:l={_fmt(scheme.start)},h={_fmt(scheme.step)}"
    if isinstance(scheme, GeometricNodes):
        return f"geom:sigma={_fmt(scheme.rate)}"
    return "explicit:" + ",".join(_fmt(v) for v in scheme.nodes)


def parse_node_spec(spec: str) -> NodeScheme:
    """Parse the node micro-grammar: ``arith:l=<real>,h=<real>``,
    ``arithidx:l=<int>``, ``geom:sigma=<real>``, ``explicit:<v1,v2,...>``."""
    kind, sep, rest = spec.partition(":")
    if not sep:
        raise InvalidParams(f"node spec {spec!r} is missing ':'")
    if kind == "explicit":
        try:
            nodes = tuple(float(v) for v in rest.split(","))
        except ValueError as exc:
            raise InvalidParams(f"bad explicit node list {rest!r}") from exc
        return ExplicitNodes(nodes)
    pairs = {}
    for item in rest.split(","):
        key, eq, value = item.partition("=")
        if not eq:
            raise InvalidParams(f"node spec item {item!r} is not key=value")
        if key in pairs:
            raise InvalidParams(f"duplicate node spec key {key!r}")
        pairs[key] = value
    try:
        if kind == "arith":
            if set(pairs) != {"l", "h"}:
                raise InvalidParams(f"arith takes keys l,h; got {sorted(pairs)}")
            return ArithmeticNodes(start=float(pairs["l"]), step=float(pairs["h"]))
        if kind == "arithidx":
            if set(pairs) != {"l"}:
                raise InvalidParams(f"arithidx takes key l; got {sorted(pairs)}")
            return ArithmeticIndexNodes(start=int(pairs["l"]))
        if kind == "geom":
            if set(pairs) != {"sigma"}:
                raise InvalidParams(f"geom takes key sigma; got {sorted(pairs)}")
            return GeometricNodes(rate=float(pairs["sigma"]))
    except ValueError as exc:
        raise InvalidParams(f"bad numeric value in node spec {spec!r}") from exc
    raise InvalidParams(f"unknown node scheme {kind!r}")


def _parse_bindings(items: Optional[Sequence[str]]) -> dict:
    bindings = {}
    for item in items or ():
        name, eq, value = item.partition("=")
        if not eq or not name:
            raise InvalidParams(f"parameter {item!r} is not name=value")
        try:
            bindings[name] = float(value)
        except ValueError as exc:
            raise InvalidParams(f"parameter {item!r} has a non-numeric value") from exc
    return bindings


def _parse_r_list(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(v) for v in text.split(","))
    except ValueError as exc:
        raise InvalidParams(f"bad r list {text!r}") from exc
    if not values or any(v < 1 for v in values):
        raise InvalidParams("r values must be positive integers")
    return values


# ---------------------------------------------------------------------------
# Runners
# ---------------------------------------------------------------------------


def _run_series_case(expr, bindings, m, r_values, offset, reference, note, title, power_offset=0):
    start = time.perf_counter()
    r_values = tuple(sorted(r_values))
    ast = parse_expr(expr, "series")
    seq = term_sequence(ast, bindings)
    results = d_table(seq, m, list(r_values), offset, power_offset)
    rows = _rows_from_results(r_values, results, reference)
    return RunReport(
        method="d",
        params={
            "expr": expr,
            "bindings": dict(bindings),
            "m": m,
            "r": list(r_values),
            "scheme": f"arithidx:l={offset}",
            "power_offset": power_offset,
        },
        rows=rows,
        reference=reference,
        reference_note=note,
        wall_time=time.perf_counter() - start,
        title=title,
    )


def _run_integral_case(
    expr, bindings, m, r_values, scheme, reference, note, title, power_offset, overrides=None
):
    start = time.perf_counter()
    r_values = tuple(sorted(r_values))
    cfg = _quad_config()
    ast = parse_expr(expr, "integral")
    family = IntegrandFamily.from_expr(ast, bindings, value_overrides=overrides)
    results = D_table(family, m, list(r_values), scheme, cfg, power_offset)
    rows = _rows_from_results(r_values, results, reference)
    return RunReport(
        method="D",
        params={
            "expr": expr,
            "bindings": dict(bindings),
            "m": m,
            "r": list(r_values),
            "scheme": _scheme_spec(scheme),
            "power_offset": power_offset,
            "quad_tol": cfg.abs_tol,
        },
        rows=rows,
        reference=reference,
        reference_note=note,
        wall_time=time.perf_counter() - start,
        title=title,
    )


def run_reproduce(table_id: str) -> list[RunReport]:
    """Run every column of a built-in benchmark table."""
    if table_id not in TABLES:
        raise InvalidParams(f"unknown table {table_id!r}; pick one of {table_ids()}")
    reports = []
    for case in TABLES[table_id]:
        title = f"{case.table} {case.label}"
        if case.kind == "series":
            reports.append(
                _run_series_case(
                    case.expr,
                    dict(case.params),
                    case.m,
                    case.r_values,
                    case.offset,
                    case.reference,
                    case.reference_note,
                    title,
                )
            )
        else:
            reports.append(
                _run_integral_case(
                    case.expr,
                    dict(case.params),
                    case.m,
                    case.r_values,
                    case.scheme,
                    case.reference,
                    case.reference_note,
                    title,
                    case.power_offset,
                    case.value_overrides,
                )
            )
    return reports


def run_series(
    expr, params=None, m=1, r_values=(1,), offset=0, reference=None, power_offset=0
) -> RunReport:
    return _run_series_case(
        expr,
        params or {},
        m,
        tuple(r_values),
        offset,
        reference,
        "user-supplied" if reference is not None else None,
        f"series {expr}",
        power_offset,
    )


def run_integral(
    expr, params=None, m=1, r_values=(1,), scheme=None, reference=None, power_offset=0
) -> RunReport:
    if scheme is None:
        raise InvalidParams("integral runs need a node scheme")
    return _run_integral_case(
        expr,
        params or {},
        m,
        tuple(r_values),
        scheme,
        reference,
        "user-supplied" if reference is not None else None,
        f"integral {expr}",
        power_offset,
    )


def run_classic(method, expr, params=None, r=4, offset=0, reference=None) -> RunReport:
    """Apply a baseline accelerator to a DSL-defined series.

    ``r`` means: number of partial sums for aitken/wynn, the transform
    order for levin-t/levin-u, and the difference depth for euler (whose
    expression gives the magnitudes of an alternating series).
    """
    start = time.perf_counter()
    ast = parse_expr(expr, "series")
    seq = term_sequence(ast, params or {})
    if method == "aitken":
        if r < 3:
            raise InvalidParams("aitken needs at least 3 partial sums")
        sums = partial_sums(seq, r - 1)
        value = classic.aitken(list(sums.values))[-1]
    elif method == "wynn":
        if r < 3:
            raise InvalidParams("wynn needs at least 3 partial sums")
        sums = partial_sums(seq, r - 1)
        value = classic.wynn_epsilon(list(sums.values))
    elif method in ("levin-t", "levin-u"):
        value = classic.levin(method[-1], seq, r, offset)
    elif method == "euler":
        magnitudes = seq.materialize(r + 1)
        value = classic.euler_transform(magnitudes, r)
    else:
        raise InvalidParams(f"unknown classic method {method!r}")
    err = abs(value - reference) if reference is not None else None
    return RunReport(
        method=method,
        params={"expr": expr, "bindings": dict(params or {}), "r": r, "l": offset},
        rows=[ReportRow(r=r, value=value, abs_error=err)],
        reference=reference,
        reference_note="user-supplied" if reference is not None else None,
        wall_time=time.perf_counter() - start,
        title=f"{method} {expr}",
    )


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------


def render_csv(reports: list[RunReport], quiet: bool) -> str:
    lines = []
    for report in reports:
        if not quiet:
            note = f" ({report.reference_note})" if report.reference_note else ""
            ref = _fmt(report.reference) if report.reference is not None else "none"
            lines.append(f"# {report.title} | method={report.method} | reference={ref}{note}")
        lines.append(CSV_HEADER)
        for row in report.rows:
            lines.append(
                f"{row.r},{_fmt(row.value)},{_fmt(row.abs_error)},{row.cond_flag}"
            )
    return "\n".join(lines) + "\n"


def render_markdown(reports: list[RunReport], quiet: bool) -> str:
    lines = []
    for report in reports:
        if not quiet:
            lines.append(f"## {report.title}")
            lines.append(
                f"method={report.method} params={json.dumps(report.params, sort_keys=True)}"
            )
            if report.reference is not None:
                lines.append(
                    f"reference={_fmt(report.reference)} ({report.reference_note})"
                )
        lines.append("| r | value | abs_error | cond_flag |")
        lines.append("|---|-------|-----------|-----------|")
        for row in report.rows:
            lines.append(
                f"| {row.r} | {_fmt(row.value)} | {_fmt(row.abs_error)} | {row.cond_flag} |"
            )
        if not quiet:
            lines.append(f"wall_time={report.wall_time:.3f}s")
            lines.append("")
    return "\n".join(lines) + "\n"


def render(reports: list[RunReport], fmt: str, quiet: bool) -> str:
    if fmt == "json":
        return json.dumps({"reports": [r.to_dict() for r in reports]}, indent=None if quiet else 2) + "\n"
    if fmt == "csv":
        return render_csv(reports, quiet)
    return render_markdown(reports, quiet)


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="accel",
        description="Convergence acceleration for slowly convergent series and infinite integrals.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--format", choices=("markdown", "csv", "json"), default="markdown")
        p.add_argument("--quiet", action="store_true", help="suppress headers and metadata")

    p_rep = sub.add_parser("reproduce", help="re-run a built-in benchmark table")
    p_rep.add_argument("table", choices=table_ids())
    add_common(p_rep)

    p_ser = sub.add_parser("series", help="accelerate an infinite series")
    p_ser.add_argument("--expr", required=True, help="series term f(n) in the DSL")
    p_ser.add_argument("--param", action="append", metavar="NAME=VALUE")
    p_ser.add_argument("--m", type=int, required=True)
    p_ser.add_argument("--r", required=True, help="single r or comma list, e.g. 2,4,6")
    p_ser.add_argument("--l", type=int, default=0, dest="offset")
    p_ser.add_argument(
        "--power-offset",
        type=int,
        choices=(0, 1),
        default=0,
        help="leading remainder power N^(k+offset); use 1 for monotone slowly convergent terms",
    )
    p_ser.add_argument("--reference", type=float)
    add_common(p_ser)

    p_int = sub.add_parser("integral", help="accelerate an infinite integral")
    p_int.add_argument("--expr", required=True, help="integrand f(t) in the DSL")
    p_int.add_argument("--param", action="append", metavar="NAME=VALUE")
    p_int.add_argument("--m", type=int, required=True)
    p_int.add_argument("--r", required=True)
    p_int.add_argument(
        "--nodes",
        required=True,
        help="arith:l=<real>,h=<real> | arithidx:l=<int> | geom:sigma=<real> | explicit:<v1,...>",
    )
    p_int.add_argument(
        "--power-offset",
        type=int,
        choices=(0, 1),
        default=0,
        help="leading tail power x^(k+offset); use 1 for slowly decaying general-order integrands",
    )
    p_int.add_argument("--reference", type=float)
    add_common(p_int)

    p_cls = sub.add_parser("classic", help="apply a baseline accelerator")
    p_cls.add_argument(
        "--method", required=True, choices=("aitken", "wynn", "levin-t", "levin-u", "euler")
    )
    p_cls.add_argument("--expr", required=True)
    p_cls.add_argument("--param", action="append", metavar="NAME=VALUE")
    p_cls.add_argument("--r", type=int, required=True, help="partial sums / order / depth")
    p_cls.add_argument("--l", type=int, default=0, dest="offset")
    p_cls.add_argument("--reference", type=float)
    add_common(p_cls)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "reproduce":
            reports = run_reproduce(args.table)
        elif args.command == "series":
            reports = [
                run_series(
                    args.expr,
                    _parse_bindings(args.param),
                    m=args.m,
                    r_values=_parse_r_list(args.r),
                    offset=args.offset,
                    reference=args.reference,
                    power_offset=args.power_offset,
                )
            ]
        elif args.command == "integral":
            reports = [
                run_integral(
                    args.expr,
                    _parse_bindings(args.param),
                    m=args.m,
                    r_values=_parse_r_list(args.r),
                    scheme=parse_node_spec(args.nodes),
                    reference=args.reference,
                    power_offset=args.power_offset,
                )
            ]
        else:
            reports = [
                run_classic(
                    args.method,
                    args.expr,
                    _parse_bindings(args.param),
                    r=args.r,
                    offset=args.offset,
                    reference=args.reference,
                )
            ]
    except AccelError as exc:
        print(f"accel: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(render(reports, args.format, args.quiet))
    flagged = any(row.is_error for report in reports for row in report.rows)
    return 1 if flagged else 0


if __name__ == "__main__":
    raise SystemExit(main())
