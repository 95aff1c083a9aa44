import math

import pytest

from accel.errors import DomainError, InvalidParams
from accel.funcs.expr import parse_expr
from accel.funcs.jets import Jet, eval_jet
from accel.funcs.special import bessel_j


def jet_of(text, t0, order, bindings=None):
    return eval_jet(parse_expr(text, "integral"), t0, order, bindings)


class TestJetBasics:
    def test_sine_maclaurin(self):
        jet = jet_of("sin(t)", 0.0, 3)
        assert jet.coeffs == (0.0, 1.0, 0.0, -1.0 / 6.0)

    def test_square_shifted(self):
        jet = jet_of("t^2", 1.0, 2)
        assert jet.coeffs == (1.0, 2.0, 1.0)

    def test_bessel_at_origin(self):
        jet = jet_of("besselj0(t)", 0.0, 3)
        assert jet.coeffs == (1.0, 0.0, -0.25, 0.0)

    def test_order_cap(self):
        ast = parse_expr("t", "integral")
        with pytest.raises(InvalidParams):
            eval_jet(ast, 0.0, 9)

    def test_derivative_scaling(self):
        jet = jet_of("t^3", 2.0, 3)
        assert jet.derivative(2) == pytest.approx(12.0, abs=0.0)
        assert jet.derivative(3) == pytest.approx(6.0, abs=0.0)

    def test_value_consistency(self):
        # coeffs[0] must equal the scalar value of the expression.
        from accel.funcs.expr import eval_expr

        for text, point in [
            ("sin(pi/2*t^2)", 1.3),
            ("log(1+t)/(1+t^2)", 0.7),
            ("besselj0(t)*besselj1(t)/t", 2.0),
        ]:
            ast = parse_expr(text, "integral")
            jet = eval_jet(ast, point, 4)
            value = eval_expr(ast, {}, point)
            assert abs(jet.coeffs[0] - value) <= 2 * math.ulp(abs(value) or 1.0)


class TestPolynomialExactness:
    def test_degree_six_polynomial_exact(self):
        # 3t^6 - 2t^3 + t - 7 expanded at dyadic points: all arithmetic exact.
        text = "3*t^6 - 2*t^3 + t - 7"
        for t0 in (0.0, 0.5, 1.0, -0.0 + 2.0):
            jet = jet_of(text, t0, 6)
            coeffs = [
                3 * t0 ** 6 - 2 * t0 ** 3 + t0 - 7,
                18 * t0 ** 5 - 6 * t0 ** 2 + 1,
                45 * t0 ** 4 - 6 * t0,
                60 * t0 ** 3 - 2,
                45 * t0 ** 2,
                18 * t0,
                3.0,
            ]
            for got, want in zip(jet.coeffs, coeffs):
                assert abs(got - want) <= 4 * math.ulp(max(1.0, abs(want)))

    def test_legendre_jet(self):
        # P3(t) = (5t^3 - 3t)/2 expanded at 0.5.
        jet = jet_of("legendre(3, t)", 0.5, 3)
        assert jet.coeffs == pytest.approx((-0.4375, 0.375, 3.75, 2.5), abs=1e-15)

    def test_legendre_degree_must_be_constant(self):
        with pytest.raises(DomainError):
            jet_of("legendre(t, t)", 2.0, 2)


class TestJetFunctions:
    def test_log_series(self):
        jet = jet_of("log(1+t)", 0.0, 5)
        want = (0.0, 1.0, -0.5, 1.0 / 3.0, -0.25, 0.2)
        assert jet.coeffs == pytest.approx(want, rel=1e-15)

    def test_exp_series(self):
        jet = jet_of("exp(t)", 0.0, 5)
        want = tuple(1.0 / math.factorial(k) for k in range(6))
        assert jet.coeffs == pytest.approx(want, rel=1e-15)

    def test_sqrt_jet(self):
        jet = jet_of("sqrt(1+t)", 0.0, 3)
        assert jet.coeffs == pytest.approx((1.0, 0.5, -0.125, 0.0625), rel=1e-15)

    def test_quotient_jet(self):
        jet = jet_of("1/(1-t)", 0.0, 4)
        assert jet.coeffs == pytest.approx((1.0,) * 5, rel=1e-15)

    def test_division_by_vanishing_jet(self):
        with pytest.raises(DomainError):
            jet_of("1/t", 0.0, 2)

    def test_variable_exponent(self):
        # t^t = exp(t log t) at t0=2: value 4, derivative 4(log 2 + 1).
        jet = jet_of("t^t", 2.0, 1)
        assert jet.coeffs[0] == pytest.approx(4.0, rel=1e-15)
        assert jet.coeffs[1] == pytest.approx(4.0 * (math.log(2.0) + 1.0), rel=1e-14)

    @pytest.mark.parametrize("x", [0.5, 1.0, 5.0, 20.0])
    def test_bessel_derivative_relation(self, x):
        jet = jet_of("besselj0(t)", x, 1)
        assert abs(jet.coeffs[1] + bessel_j(1, x)) <= 1e-10

    def test_bessel_product_jet_against_leibniz(self):
        # d/dt [J0 J1] = J0'J1 + J0 J1' with the ODE-supplied derivatives.
        x = 3.0
        jet = jet_of("besselj0(t)*besselj1(t)", x, 1)
        j0, j1 = bessel_j(0, x), bessel_j(1, x)
        want = -j1 * j1 + j0 * (j0 - j1 / x)
        assert jet.coeffs[1] == pytest.approx(want, rel=1e-13)

    def test_abs_jet(self):
        jet = jet_of("abs(t^2 - 9)", 2.0, 2)
        # t^2 - 9 < 0 at t=2, so abs flips the sign of the whole jet.
        assert jet.coeffs == (5.0, -4.0, -1.0)


class TestJetAlgebra:
    def test_mixed_scalar_ops(self):
        u = Jet.variable(2.0, 3)
        v = 1.0 + u * 2.0 - 3.0
        assert v.coeffs == (2.0, 2.0, 0.0, 0.0)
        w = 6.0 / (u + 1.0)
        assert w.coeffs[0] == pytest.approx(2.0)

    def test_order_mismatch(self):
        with pytest.raises(InvalidParams):
            Jet.variable(0.0, 2) + Jet.variable(0.0, 3)
