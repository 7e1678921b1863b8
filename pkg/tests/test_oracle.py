import math

import numpy as np
import pytest

from mirror_radiation import emission, oracle
from mirror_radiation.kernels import Channel, Orientation, PhysicalConfig, kernel_free, kernel_reflected
from mirror_radiation.oracle import QuadratureError, adaptive_quad


class TestAdaptiveQuad:
    def test_sine(self):
        assert adaptive_quad(math.sin, 0.0, math.pi, tol=1e-12).value == pytest.approx(2.0, rel=1e-12)

    def test_polynomial_weight(self):
        r = adaptive_quad(lambda u: (1 - u * u) * u * u, -1.0, 1.0)
        assert r.value == pytest.approx(4 / 15, rel=1e-12)

    def test_oscillatory(self):
        f = lambda t: math.cos(10 * math.cos(t)) ** 2 * math.sin(t)
        assert adaptive_quad(f, 0.0, math.pi).value == pytest.approx(1 + math.sin(20) / 20, rel=1e-10)

    def test_reports_work(self):
        r = adaptive_quad(math.exp, 0.0, 1.0)
        assert r.evaluations >= oracle.MIN_RULE_SIZE and r.intervals >= 1
        assert r.abs_error_estimate <= 1e-10

    def test_raises_when_budget_exhausted(self):
        wild = lambda t: math.sin(1.0 / t) / t if t > 0 else 0.0
        with pytest.raises(QuadratureError):
            adaptive_quad(wild, 0.0, 1.0, tol=1e-12, max_intervals=5)

    def test_rejects_bad_interval(self):
        with pytest.raises(ValueError):
            adaptive_quad(math.sin, 1.0, 1.0)
        with pytest.raises(ValueError):
            adaptive_quad(math.sin, 0.0, 1.0, tol=0.0)


class TestKernelOracles:
    @pytest.mark.parametrize("channel", list(Channel))
    def test_free(self, channel):
        cfg = PhysicalConfig()
        for nu in (1.2, 2.0, 5.5):
            assert kernel_free(channel, nu, cfg) == pytest.approx(
                oracle.free_kernel_oracle(channel, nu, cfg), rel=1e-12
            )

    @pytest.mark.parametrize("x", [0.25, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0])
    @pytest.mark.parametrize("channel,orientation", [(c, o) for c in Channel for o in Orientation])
    def test_reflected(self, channel, orientation, x):
        cfg = PhysicalConfig(distance_a=0.7)
        nu = cfg.omega + x / cfg.distance_a
        closed = kernel_reflected(channel, orientation, nu, cfg)
        assert closed == pytest.approx(oracle.reflected_kernel_oracle(channel, orientation, nu, cfg), rel=1e-8)

    def test_below_threshold_is_zero(self):
        cfg = PhysicalConfig(distance_a=1.0)
        assert oracle.reflected_kernel_oracle(Channel.EE, Orientation.PARALLEL, 0.5, cfg) == 0.0

    def test_reflected_needs_mirror(self):
        with pytest.raises(ValueError):
            oracle.reflected_kernel_oracle(Channel.EE, Orientation.PARALLEL, 2.0, PhysicalConfig())


class TestSpectrumOracles:
    @pytest.mark.parametrize("omega_a", [10.0, 50.0])
    @pytest.mark.parametrize("ka", [0.3, 0.99, 1.01, 5.0, 9.0, 10.0, 11.0, 20.0])
    def test_decay(self, ka, omega_a):
        cfg = PhysicalConfig(omega=omega_a, distance_a=1.0)
        closed = emission.decay_spectrum_closed(ka, cfg, 2.5)
        assert closed == pytest.approx(oracle.decay_spectrum_oracle(ka, cfg, 2.5), rel=1e-8)

    @pytest.mark.parametrize("ka", [0.5, 3.0, 12.0])
    def test_excitation(self, ka):
        cfg = PhysicalConfig(omega=10.0, distance_a=1.0)
        closed = emission.excitation_spectrum(ka, cfg, 1.0)
        assert closed == pytest.approx(oracle.excitation_spectrum_oracle(ka, cfg, 1.0), rel=1e-8)

    def test_zero_weight(self):
        assert oracle.decay_spectrum_oracle(1.0, PhysicalConfig(distance_a=1.0), 0.0) == 0.0

    def test_large_distance_limit(self):
        # the oscillating part averages out far from the mirror
        cfg = PhysicalConfig(omega=1.0, distance_a=400.0)
        k = np.array([0.5, 1.5])
        num = np.array([oracle.decay_spectrum_oracle(kk, cfg, 1.0) for kk in k])
        lead = cfg.coupling_e2 * k**3 * (k**2 - 2 * k + 2) / (18 * math.pi**2)
        np.testing.assert_allclose(num, lead, rtol=1e-2)
