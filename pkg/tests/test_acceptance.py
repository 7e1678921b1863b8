"""Acceptance criteria, one test each.

Every test records a ``PASS``/``FAIL`` line in ``RESULTS``; the conftest
prints them at the end of the session.  Run this file directly to get the
lines without pytest.
"""
import io
import math
import warnings
from contextlib import redirect_stdout

import numpy as np

from mirror_radiation import oracle
from mirror_radiation.cli import main as cli_main
from mirror_radiation.effective_action import im_gamma, ratio_curves
from mirror_radiation.emission import (
    ExcitationThresholdWarning,
    decay_spectrum_closed,
    dynamic_decay_angular,
    full_spectrum,
    static_decay_rate,
)
from mirror_radiation.kernels import (
    SERIES_SWITCH,
    Channel,
    Orientation,
    PhysicalConfig,
    envelope_closed,
    envelope_f,
    envelope_series,
    kernel_free,
    kernel_reflected,
    kernel_total,
)
from mirror_radiation.trajectory import MotionSpec, Sampled

RESULTS: dict[int, str] = {}
PERP = Orientation.PERPENDICULAR


def record(number, title, ok, detail):
    RESULTS[number] = f"{'PASS' if ok else 'FAIL'} criterion {number:2d} {title}: {detail}"
    assert ok, RESULTS[number]


def max_rel(a, b):
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    return float(np.max(np.abs(a - b) / np.abs(b)))


def test_01_intercepts():
    expected = {
        Channel.EE: (0.3, 2.1),
        Channel.EB: (1.5, 0.0),
        Channel.BB: (0.75, 1.5),
    }
    worst = 0.0
    for channel, (r1, r2) in expected.items():
        m1, m2 = ratio_curves(channel, [1e-3])
        worst = max(worst, abs(m1[0] - r1), abs(m2[0] - r2))
    record(1, "x->0 intercepts", worst <= 1e-2, f"max abs deviation {worst:.2e} <= 1e-2")


def test_02_free_identity():
    cfg = PhysicalConfig()
    nu = np.linspace(cfg.omega, 6 * cfg.omega, 1001)[1:]
    total = sum(kernel_free(c, nu, cfg) for c in Channel)
    target = cfg.coupling_e2 / (24 * math.pi * cfg.mass_m * cfg.omega) * (nu - cfg.omega) ** 3 * (nu**2 + cfg.omega**2)
    err = max_rel(total, target)
    record(2, "free-space identity", err <= 1e-12, f"max rel error {err:.2e} <= 1e-12 on {nu.size} points")


def test_03_oracle_equivalence():
    cfg = PhysicalConfig(distance_a=1.5)
    worst = 0.0
    for x in (0.25, 0.5, 1, 2, 5, 10, 20):
        nu = cfg.omega + x / cfg.distance_a
        for c in Channel:
            for o in Orientation:
                ref = oracle.reflected_kernel_oracle(c, o, nu, cfg)
                worst = max(worst, max_rel(kernel_reflected(c, o, nu, cfg), ref))
    record(3, "reflected kernels vs quadrature oracle", worst <= 1e-8, f"max rel error {worst:.2e} <= 1e-8")


def test_04_decay_spectrum():
    worst = 0.0
    for omega_a in (10.0, 50.0):
        cfg = PhysicalConfig(omega=omega_a, distance_a=1.0)
        for ka in (5.0, 9.0, 10.0, 11.0, 20.0):
            worst = max(worst, max_rel(decay_spectrum_closed(ka, cfg, 1.0), oracle.decay_spectrum_oracle(ka, cfg, 1.0)))
    record(4, "decay spectrum vs theta quadrature", worst <= 1e-8, f"max rel error {worst:.2e} <= 1e-8")


def test_05_static_limit():
    cfg = PhysicalConfig()
    ratio = static_decay_rate(cfg).rate / (cfg.coupling_e2 * cfg.omega**2 / (6 * math.pi * cfg.mass_m))
    detail = f"rate / (e^2 Omega^2 / 6 pi m) = {ratio:.12f}"
    if abs(ratio - 3) < 1e-3:
        detail += " (factor 3: the 1/3 polarization average is missing)"
    record(5, "static free-space decay rate", abs(ratio - 1) <= 1e-6, detail)


def test_06_peak_structure():
    cfg = PhysicalConfig(distance_a=10.0)
    table = full_spectrum(cfg, MotionSpec.monochromatic(PERP, 1e-3, 0.3, 100.0), "full")
    found = table.line_positions() / cfg.omega
    lines_ok = found.size == 3 and np.allclose(found, [0.7, 1.0, 1.3], rtol=0, atol=1e-12)
    sizes = []
    for omega_cm in (0.2, 0.5, 0.99, 1.0):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ExcitationThresholdWarning)
            t = full_spectrum(cfg, MotionSpec.monochromatic(PERP, 1e-3, omega_cm, 100.0), "excitation")
        sizes.append(t.k.size)
    ok = lines_ok and sizes == [0, 0, 0, 0]
    record(6, "peak structure", ok, f"features at k/Omega {found.tolist()}; excitation rows for Omega_cm <= Omega {sizes}")


def test_07_angular_tables():
    cfg = PhysicalConfig(omega=10.0, distance_a=1.0)
    d9, d11 = dynamic_decay_angular(9.0, cfg), dynamic_decay_angular(11.0, cfg)
    symmetric = all(np.array_equal(d.total, d.total[::-1]) for d in (d9, d11))
    dist = float(np.linalg.norm(d9.total - d11.total) / np.linalg.norm(d9.total))
    record(7, "angular tables ka=9, ka=11", symmetric and dist > 0.1, f"exact symmetry {symmetric}; relative L2 distance {dist:.3f} > 0.1")


def test_08_envelope_properties():
    x = np.linspace(0.0, 50.0, 50001)[1:]
    same = float(np.max(np.abs(envelope_f(4, x) - envelope_f(6, x))))
    xl = np.linspace(3.0, 1000.0, 100001)
    bound = all(bool(np.all(np.abs(envelope_f(i, xl)) <= 3 / xl)) for i in range(1, 7))
    band = np.linspace(0.5 * SERIES_SWITCH, 2 * SERIES_SWITCH, 1001)
    # measured against the envelope scale |f_i(0)|: f2 has a zero inside the band
    overlap = max(
        float(np.max(np.abs(envelope_series(i, band) - envelope_closed(i, band)))) / abs(envelope_f(i, 1e-12))
        for i in range(1, 7)
    )
    ok = same <= 1e-12 and bound and overlap <= 1e-10
    record(8, "envelope properties", ok, f"|f4 - f6| {same:.1e}; |f_i| <= 3/x {bound}; series overlap {overlap:.1e}")


def test_09_golden_rule():
    cfg = PhysicalConfig(distance_a=5.0)
    y0, omega_cm = 1e-3, 2.0
    period = 2 * math.pi / omega_cm
    expected = y0**2 * sum(kernel_total(c, PERP, omega_cm, cfg) for c in Channel)
    mono = im_gamma(cfg, MotionSpec.monochromatic(PERP, y0, omega_cm, 128 * period)).rate
    t = np.arange(128 * 64) * (period / 64)
    sampled = im_gamma(cfg, MotionSpec(PERP, Sampled(t, y0 * np.sin(omega_cm * t)))).rate
    e_mono, e_samp = abs(mono / expected - 1), abs(sampled / expected - 1)
    ok = e_mono <= 1e-12 and e_samp <= 0.05
    record(9, "golden-rule consistency", ok, f"monochromatic rel {e_mono:.1e} <= 1e-12; sampled rel {e_samp:.2e} <= 5e-2")


def test_10_proportionality_report():
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli_main(["validate"])
    report = [l for l in buf.getvalue().splitlines() if "proportionality" in l]
    # exploratory: only the presence of the report is required
    ok = code == 0 and len(report) == 1 and "std/mean" in report[0]
    record(10, "proportionality report", ok, report[0].split(": ", 1)[1] if report else "missing")


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_"):
            try:
                fn()
            except AssertionError:
                pass
    for n in sorted(RESULTS):
        print(RESULTS[n])
