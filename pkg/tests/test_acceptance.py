"""Acceptance suite: every release gate runs here at its pinned tolerance.

Each test prints one PASS line on success (visible with ``pytest -s`` or in
the captured output); the test name carries the criterion number.
"""

import cmath
import math
import random

from accel.classic import (
    RecurrenceCoeffs,
    exact_sum_recurrence,
    wynn_epsilon,
)
from accel.cli import main, run_reproduce
from accel.dtrans import TransformParams, d_transform
from accel.funcs import eval_jet, parse_expr, term_sequence
from accel.funcs.special import LegendreRecurrence, bessel_j
from accel.integrals import D_transform, IntegrandFamily
from accel.quadrature import QuadratureConfig, adaptive_panel
from accel.realkit import ArithmeticNodes, partial_sums


def _report_by_label(table_id):
    return {report.title.split(" ", 1)[1]: report for report in run_reproduce(table_id)}


def _row(report, r):
    return next(row for row in report.rows if row.r == r)


def test_criterion_1_table1():
    reports = _report_by_label("table1")

    row = _row(reports["x=0.5"], 10)
    assert abs(row.value - 0.25) <= 5e-10

    row_m15 = _row(reports["x=-1.5"], 10)
    assert abs(row_m15.value - 0.559016994374947) <= 1e-8 * 0.559016994374947

    row_09 = _row(reports["x=0.9"], 10)
    assert abs(row_09.value - 0.111803398874) <= 5e-6

    for label in ("x=-1.5", "x=0.5"):
        report = reports[label]
        err2 = _row(report, 2).abs_error
        err10 = _row(report, 10).abs_error
        assert err10 * 1e3 <= err2, (label, err2, err10)
    print("[acceptance] criterion 1 (table1 reproduction): PASS")


def test_criterion_2_table2():
    reports = _report_by_label("table2")

    zero_row = _row(reports["beta=2pi/3, phi=pi/6"], 6)
    assert abs(zero_row.value) <= 1e-10

    value_row = _row(reports["beta=pi/6, phi=2pi/3"], 6)
    assert abs(value_row.value - 0.605000333706055) <= 1e-9

    # Term budget: the r=6 transform must stay within 30 series terms.
    ast = parse_expr("cos((n + 1/2)*beta) * legendre(n, cos(phi))", "series")
    seq = term_sequence(ast, {"beta": math.pi / 6.0, "phi": 2.0 * math.pi / 3.0})
    d_transform(seq, TransformParams(4, 6))
    assert seq.evaluations <= 30
    print("[acceptance] criterion 2 (table2 reproduction, <=30 terms): PASS")


def test_criterion_3_table3():
    reports = _report_by_label("table3")
    assert abs(_row(reports["a=pi/2, b=0"], 10).value - 0.5) <= 1e-8
    assert abs(_row(reports["a=pi/2, b=pi/2"], 10).value - 0.3992050585256) <= 1e-8

    # Integrand samples must stay inside [0, 4.4].
    sampled = []
    ast = parse_expr("sin(a*t^2 + b*t)", "integral")
    base = IntegrandFamily.from_expr(ast, {"a": math.pi / 2.0, "b": 0.0})

    def recording(t):
        sampled.append(t)
        return base.value(t)

    family = IntegrandFamily(value=recording, jet_at=base.jet_at)
    D_transform(family, 2, 10, ArithmeticNodes(0.2, 0.2), power_offset=1)
    assert min(sampled) >= 0.0
    assert max(sampled) <= 4.4 + 1e-12
    print("[acceptance] criterion 3 (table3 reproduction, samples in [0, 4.4]): PASS")


def test_criterion_4_table4():
    report = run_reproduce("table4")[0]
    reference = 0.63661977236758
    err10 = abs(_row(report, 10).value - reference)
    err2 = abs(_row(report, 2).value - reference)
    assert err10 <= 1e-8 * reference
    assert err2 >= 1e4 * err10
    print("[acceptance] criterion 4 (table4 reproduction, 1e4x trend): PASS")


def test_criterion_5_table5():
    report = run_reproduce("table5")[0]
    assert abs(_row(report, 10).value - 1.460362116753) <= 1e-8
    print("[acceptance] criterion 5 (table5 reproduction): PASS")


def _random_recurrence(rng):
    order = rng.choice([1, 2, 3])
    roots = []
    while len(roots) < order:
        magnitude = rng.uniform(0.15, 0.9)
        if order - len(roots) >= 2 and rng.random() < 0.5:
            phase = rng.uniform(0.3, math.pi - 0.3)
            root = magnitude * cmath.exp(1j * phase)
            roots.extend([root, root.conjugate()])
        else:
            roots.append(complex(rng.choice([-1.0, 1.0]) * magnitude))
    poly = [complex(1.0)]
    for root in roots:
        poly = poly + [0j]
        for i in range(len(poly) - 1, 0, -1):
            poly[i] -= root * poly[i - 1]
    coeffs = RecurrenceCoeffs(tuple(c.real for c in reversed(poly)))
    initial = [rng.uniform(0.2, 1.0) for _ in range(order)]
    return coeffs, initial


def test_criterion_6_recurrence_exactness():
    rng = random.Random(20240901)
    cases = 0
    while cases < 25:
        coeffs, initial = _random_recurrence(rng)
        k = coeffs.order
        a = coeffs.a
        terms = list(initial)
        while len(terms) < 10 ** 4:
            n = len(terms) - k
            acc = math.fsum(a[j] * terms[n + j] for j in range(k))
            terms.append(-acc / a[k])
        oracle = math.fsum(terms)
        if abs(oracle) < 0.05:
            continue  # keep the relative comparison meaningful
        cases += 1

        sums = partial_sums(terms, k + 4)
        closed = exact_sum_recurrence(coeffs, sums, 1)
        assert abs(closed - oracle) <= 1e-10 * abs(oracle)

        eps = wynn_epsilon(list(partial_sums(terms, 2 * k).values))
        assert abs(eps - oracle) <= 1e-10 * abs(oracle)

        dres = d_transform(terms, TransformParams(k, 3))
        assert abs(dres.value - oracle) <= 1e-8 * abs(oracle)
    print("[acceptance] criterion 6 (25 recurrence families, three routes): PASS")


def test_criterion_7_terminating_expansions():
    # Series with remainder exactly f(N) * (2 + 3/N).
    f = [0.3, 1.0]
    for n in range(1, 12):
        f.append(f[n] * (1.0 + 3.0 / n) / (2.0 + 3.0 / (n + 1)))
    total = f[0] + 5.0 * f[1]
    result = d_transform(f, TransformParams(1, 2))
    assert abs(result.value - total) <= 1e-12

    # Integral with tail exactly f(x) * (1 + 1/x) for f = t e^{-t}.
    family = IntegrandFamily.from_expr(parse_expr("t*exp(-t)", "integral"))
    integral = D_transform(family, 1, 2, ArithmeticNodes(0.0, 1.0))
    assert abs(integral.value - 1.0) <= 1e-11
    print("[acceptance] criterion 7 (terminating expansions recovered): PASS")


BESSEL_ORACLE = {
    # frozen arbitrary-precision values
    (0, 1.0): 0.7651976865579666,
    (0, 5.0): -0.1775967713143383,
    (0, 12.0): 0.047689310796833535,
    (0, 20.0): 0.16702466434058316,
    (0, 50.0): 0.055812327669251816,
    (1, 1.0): 0.4400505857449335,
    (1, 5.0): -0.32757913759146523,
    (1, 12.0): -0.2234471044906276,
    (1, 20.0): 0.06683312417585005,
    (1, 50.0): -0.09751182812517514,
}


def test_criterion_8_numerical_kernels():
    # Legendre recurrence residuals.
    for x in (-1.5, -1.0, -0.5, 0.0, 0.5, 0.9, 1.0):
        chain = LegendreRecurrence(x)
        for n in range(1, 50):
            residual = (
                (n + 1) * chain.value(n + 1)
                - (2 * n + 1) * x * chain.value(n)
                + n * chain.value(n - 1)
            )
            assert abs(residual) <= 1e-13 * max(1.0, abs(chain.value(n)))

    # Bessel fixtures.
    for (order, x), want in BESSEL_ORACLE.items():
        assert abs(bessel_j(order, x) - want) <= 1e-13 * abs(want)

    # Jet derivatives of a degree-6 polynomial are exact.
    ast = parse_expr("3*t^6 - 2*t^3 + t - 7", "integral")
    for t0 in (0.0, 0.5, 2.0):
        jet = eval_jet(ast, t0, 6)
        expected = (
            3 * t0 ** 6 - 2 * t0 ** 3 + t0 - 7,
            18 * t0 ** 5 - 6 * t0 ** 2 + 1,
            45 * t0 ** 4 - 6 * t0,
            60 * t0 ** 3 - 2,
            45 * t0 ** 2,
            18 * t0,
            3.0,
        )
        for got, want in zip(jet.coeffs, expected):
            assert abs(got - want) <= 4 * math.ulp(max(1.0, abs(want)))

    # Quadrature additivity.
    cfg = QuadratureConfig()
    for f, a, b, s in [
        (math.sin, 0.0, 3.0, 1.1),
        (lambda t: math.log(1 + t) / (1 + t * t), 0.0, 5.0, 2.7),
    ]:
        whole = adaptive_panel(f, a, b, cfg)
        split = adaptive_panel(f, a, s, cfg) + adaptive_panel(f, s, b, cfg)
        assert abs(whole - split) <= 2.0 * cfg.abs_tol
    print("[acceptance] criterion 8 (numerical kernels): PASS")


def test_criterion_9_determinism(capsys):
    for table in ("table1", "table2", "table3", "table4", "table5"):
        assert main(["reproduce", table, "--format", "csv"]) == 0
        first = capsys.readouterr().out
        assert main(["reproduce", table, "--format", "csv"]) == 0
        second = capsys.readouterr().out
        assert first.encode() == second.encode(), table
    print("[acceptance] criterion 9 (byte-identical reproduce runs): PASS")
