import math
import random

import pytest

from accel.errors import InvalidParams, QuadratureNoConvergence
from accel.quadrature import QuadratureConfig, adaptive_panel, kronrod_panel


class TestKronrodPanel:
    def test_polynomials_exact(self):
        # The 15-point rule integrates low-degree polynomials to roundoff.
        for k in range(11):
            value, _, _ = kronrod_panel(lambda x, k=k: x ** k, 0.0, 1.0)
            assert abs(value - 1.0 / (k + 1)) <= 1e-14

    def test_error_estimate_scales(self):
        _, err_wide, _ = kronrod_panel(math.sin, 0.0, 3.0)
        _, err_narrow, _ = kronrod_panel(math.sin, 0.0, 0.5)
        assert err_narrow < err_wide

    def test_absolute_value_integral(self):
        _, _, resabs = kronrod_panel(math.sin, 0.0, math.pi)
        assert resabs == pytest.approx(2.0, abs=1e-10)


class TestAdaptivePanel:
    def test_sine_half_period(self):
        value = adaptive_panel(math.sin, 0.0, math.pi)
        assert abs(value - 2.0) <= 1e-13

    def test_oscillatory(self):
        value = adaptive_panel(lambda t: math.sin(math.pi / 2 * t * t), 0.0, 4.4)
        # Piecewise reference at the roundoff floor.
        f = lambda t: math.sin(math.pi / 2 * t * t)
        cfg = QuadratureConfig(abs_tol=1e-14)
        tight = math.fsum(
            adaptive_panel(f, 0.4 * i, 0.4 * (i + 1), cfg) for i in range(11)
        )
        assert abs(value - tight) <= 2e-13

    def test_empty_interval(self):
        assert adaptive_panel(math.sin, 1.0, 1.0) == 0.0

    def test_reversed_bounds(self):
        with pytest.raises(InvalidParams):
            adaptive_panel(math.sin, 2.0, 1.0)

    def test_additivity(self):
        cfg = QuadratureConfig()
        rng = random.Random(5)
        integrands = [
            math.sin,
            lambda t: math.log(1.0 + t) / (1.0 + t * t),
            lambda t: math.exp(-t) * math.cos(3.0 * t),
        ]
        for f in integrands:
            for _ in range(5):
                a = rng.uniform(0.0, 2.0)
                b = a + rng.uniform(0.5, 4.0)
                s = rng.uniform(a + 1e-3, b - 1e-3)
                whole = adaptive_panel(f, a, b, cfg)
                split = adaptive_panel(f, a, s, cfg) + adaptive_panel(f, s, b, cfg)
                assert abs(whole - split) <= 2.0 * cfg.abs_tol

    def test_non_convergence(self):
        with pytest.raises(QuadratureNoConvergence):
            adaptive_panel(lambda t: 1.0 / t if t > 0 else 0.0, 0.0, 1.0)

    def test_config_validation(self):
        with pytest.raises(InvalidParams):
            QuadratureConfig(abs_tol=0.0)
        with pytest.raises(InvalidParams):
            QuadratureConfig(max_depth=-1)
