import math
import warnings

import numpy as np
import pytest

from mirror_radiation.kernels import Orientation
from mirror_radiation.trajectory import (
    GriddedSpectrum,
    LineSpectrum,
    Monochromatic,
    MotionSpec,
    NonRelativisticWarning,
    Sampled,
    read_trajectory,
    write_trajectory,
)

PERP = Orientation.PERPENDICULAR


def sinusoid(y0=1e-3, omega_cm=2.0, periods=128, per_period=64):
    dt = 2 * math.pi / omega_cm / per_period
    t = np.arange(periods * per_period) * dt
    return t, y0 * np.sin(omega_cm * t)


class TestMonochromatic:
    def test_line_weight(self):
        spec = MotionSpec.monochromatic(PERP, 0.01, 0.5, 40.0).spectrum()
        assert isinstance(spec, LineSpectrum)
        assert spec.frequencies.tolist() == [0.5]
        assert spec.weights[0] == pytest.approx(0.01**2 * 40.0 / 4, rel=1e-15)

    def test_parseval(self):
        m = MotionSpec.monochromatic(PERP, 0.02, 3.0, 10.0)
        spec = m.spectrum()
        # int dnu/2pi |y|^2 over both signs = 2 w = int y^2 dt
        assert 2 * spec.weights.sum() == pytest.approx(m.square_integral, rel=1e-15)

    @pytest.mark.parametrize("kwargs", [dict(amplitude=-1.0), dict(omega_cm=0.0), dict(observation_time=0.0)])
    def test_validation(self, kwargs):
        base = dict(amplitude=1e-3, omega_cm=1.0, observation_time=1.0)
        with pytest.raises(ValueError):
            Monochromatic(**{**base, **kwargs})

    def test_fast_motion_warns(self):
        with pytest.warns(NonRelativisticWarning):
            MotionSpec.monochromatic(PERP, 0.2, 1.0, 1.0)

    def test_slow_motion_is_silent(self):
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            MotionSpec.monochromatic(PERP, 1e-3, 1.0, 1.0)


class TestSampled:
    def test_peak_weight_and_parseval(self):
        t, y = sinusoid()
        motion = MotionSpec(PERP, Sampled(t, y))
        spec = motion.spectrum()
        assert isinstance(spec, GriddedSpectrum)
        w = 1e-6 * motion.observation_time / 4
        i = int(np.argmin(np.abs(spec.nu_grid - 2.0)))
        peak = spec.density[i - 3 : i + 4].sum() * spec.spacing / (2 * math.pi)
        assert peak == pytest.approx(w, rel=1e-6)
        total = 2 * np.trapezoid(spec.density, spec.nu_grid) / (2 * math.pi)
        assert total == pytest.approx(motion.square_integral, rel=1e-3)

    def test_psd_is_density_over_time(self):
        t, y = sinusoid(periods=16)
        spec = MotionSpec(PERP, Sampled(t, y)).spectrum()
        np.testing.assert_allclose(spec.psd * spec.observation_time, spec.density)

    def test_interpolation_is_even_and_vanishes_beyond_grid(self):
        t, y = sinusoid(periods=16)
        spec = MotionSpec(PERP, Sampled(t, y)).spectrum()
        nu = np.array([0.3, 1.7, 2.2])
        np.testing.assert_array_equal(spec.interpolate(nu), spec.interpolate(-nu))
        assert spec.interpolate(spec.nu_grid[-1] * 1.5) == 0.0

    def test_observation_time(self):
        t = np.arange(100) * 0.25
        s = Sampled(t, np.zeros_like(t))
        assert s.dt == 0.25 and s.observation_time == 25.0

    @pytest.mark.parametrize(
        "times",
        [np.arange(8.0), np.r_[np.arange(20.0), 19.5], np.r_[np.arange(10.0), np.arange(10.0, 20.0, 2.0)]],
    )
    def test_rejects_bad_grids(self, times):
        with pytest.raises(ValueError):
            Sampled(times, np.zeros_like(times))

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            Sampled(np.arange(20.0), np.zeros(19))


class TestFiles:
    def test_round_trip(self, tmp_path):
        t, y = sinusoid(periods=2)
        path = tmp_path / "traj.txt"
        write_trajectory(path, t, y)
        t2, y2 = read_trajectory(path)
        np.testing.assert_array_equal(t, t2)
        np.testing.assert_array_equal(y, y2)

    def test_requires_units_header(self, tmp_path):
        path = tmp_path / "traj.txt"
        path.write_text("0 0\n1 0\n")
        with pytest.raises(ValueError, match="units"):
            read_trajectory(path)

    def test_rejects_malformed_rows(self, tmp_path):
        path = tmp_path / "traj.txt"
        path.write_text("# units: natural\n0 0 0\n")
        with pytest.raises(ValueError):
            read_trajectory(path)

    def test_ignores_comments(self, tmp_path):
        path = tmp_path / "traj.txt"
        path.write_text("# units: natural\n# header\n0 1  # first\n\n1 2\n")
        t, y = read_trajectory(path)
        assert t.tolist() == [0.0, 1.0] and y.tolist() == [1.0, 2.0]
