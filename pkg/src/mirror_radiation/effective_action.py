"""Imaginary part of the effective action and the vacuum persistence.

Im Gamma = int dnu/(2 pi) m(nu) |y(nu)|^2, resolved by channel (EE, EB, BB)
and geometry (free, reflected).  Persistence is exp(-2 Im Gamma).
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .kernels import Channel, Orientation, PhysicalConfig, kernel_free, kernel_reflected
from .trajectory import GriddedSpectrum, LineSpectrum, MotionSpec

__all__ = ["ImGammaReport", "CoarseGridWarning", "im_gamma", "contract", "ratio_curves"]

GEOMETRIES = ("free", "reflected")

# Bins added just above threshold, where the kernel rises as (nu - Omega)^3.
_THRESHOLD_BAND = 1.1
_THRESHOLD_POINTS = 200


class CoarseGridWarning(UserWarning):
    """Gridded spectrum too coarse to resolve the threshold region."""


@dataclass(frozen=True)
class ImGammaReport:
    orientation: Orientation
    contributions: dict[tuple[Channel, str], float]
    observation_time: float
    im_gamma_total: float = field(init=False)
    vacuum_persistence: float = field(init=False)
    rate: float = field(init=False)

    def __post_init__(self) -> None:
        total = math.fsum(self.contributions[c, g] for c in Channel for g in GEOMETRIES)
        object.__setattr__(self, "im_gamma_total", total)
        object.__setattr__(self, "vacuum_persistence", math.exp(-2.0 * total))
        object.__setattr__(self, "rate", 2.0 * total / self.observation_time)

    def channel_total(self, channel: Channel) -> float:
        channel = Channel(channel)
        return self.contributions[channel, "free"] + self.contributions[channel, "reflected"]

    def as_row(self) -> dict[str, float]:
        row = {f"{c.value}_{g}": self.contributions[c, g] for c in Channel for g in GEOMETRIES}
        row["im_gamma_total"] = self.im_gamma_total
        row["rate"] = self.rate
        row["vacuum_persistence"] = self.vacuum_persistence
        row["observation_time"] = self.observation_time
        return row


def _kernel(channel, orientation, geometry, nu, cfg):
    if geometry == "free":
        return kernel_free(channel, nu, cfg)
    if cfg.is_free_space:
        return np.zeros_like(np.asarray(nu, dtype=float))
    return kernel_reflected(channel, orientation, nu, cfg)


def _refined_grid(spectrum: GriddedSpectrum, omega: float) -> tuple[np.ndarray, np.ndarray]:
    nu = spectrum.nu_grid
    extra = np.linspace(omega, min(_THRESHOLD_BAND * omega, nu[-1]), _THRESHOLD_POINTS)
    grid = np.union1d(nu, extra[extra <= nu[-1]])
    return grid, spectrum.interpolate(grid)


def contract(kernel_values, spectrum: LineSpectrum | GriddedSpectrum, nu=None) -> float:
    """int dnu/(2 pi) m(nu) |y(nu)|^2 over both signs of nu.

    For a line spectrum ``kernel_values`` are m at the line frequencies; for a
    gridded one they are m on ``nu`` (trapezoid rule, even extension).
    """
    m = np.asarray(kernel_values, dtype=float)
    if isinstance(spectrum, LineSpectrum):
        return float(2.0 * np.dot(spectrum.weights, m))
    density = spectrum.interpolate(nu)
    return float(2.0 * np.trapezoid(m * density, nu) / (2 * math.pi))


def im_gamma(cfg: PhysicalConfig, motion: MotionSpec) -> ImGammaReport:
    """Channel- and geometry-resolved Im Gamma for the given motion."""
    orientation = motion.orientation
    spectrum = motion.spectrum()
    if isinstance(spectrum, LineSpectrum):
        nu = spectrum.frequencies
    else:
        span = spectrum.nu_grid[-1] - cfg.omega
        if span > 0 and spectrum.spacing > span / 100:
            warnings.warn(
                f"grid spacing {spectrum.spacing:.3g} is coarse relative to the "
                f"above-threshold band ({span:.3g})",
                CoarseGridWarning,
                stacklevel=2,
            )
        nu, _ = _refined_grid(spectrum, cfg.omega)
    contributions = {
        (c, g): contract(_kernel(c, orientation, g, nu, cfg), spectrum, nu)
        for c in Channel
        for g in GEOMETRIES
    }
    report = ImGammaReport(orientation, contributions, spectrum.observation_time)
    if report.im_gamma_total < 0:
        warnings.warn(
            "total Im Gamma is negative: the reflected kernels overshoot the free "
            "ones at this distance, persistence exceeds 1",
            RuntimeWarning,
            stacklevel=2,
        )
    return report


def ratio_curves(channel: Channel, x_grid, cfg: PhysicalConfig | None = None):
    """m1 = 1 + m_par/m0 and m2 = 1 + m_perp/m0 against x = a (|nu| - Omega).

    The ratios depend on x only; ``cfg`` fixes the a and Omega used to
    realise each x as a frequency.
    """
    cfg = cfg or PhysicalConfig(distance_a=1.0)
    if cfg.is_free_space:
        raise ValueError("ratio curves need a finite mirror distance")
    x = np.asarray(x_grid, dtype=float)
    if np.any(x <= 0):
        raise ValueError("x must be > 0")
    nu = cfg.omega + x / cfg.distance_a
    free = kernel_free(channel, nu, cfg)
    m1 = 1 + kernel_reflected(channel, Orientation.PARALLEL, nu, cfg) / free
    m2 = 1 + kernel_reflected(channel, Orientation.PERPENDICULAR, nu, cfg) / free
    return m1, m2
