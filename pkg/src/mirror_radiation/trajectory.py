"""Center-of-mass motion models and their spectral densities |y(nu)|^2.

Fourier convention: y(nu) = int dt exp(i nu t) y(t).  Only nu >= 0 is
stored; consumers use the even extension, so that for a line spectrum

    int dnu/(2 pi) |y(nu)|^2 g(nu) = sum_j w_j [g(nu_j) + g(-nu_j)] .

Squared energy deltas are regularized by 2 pi delta(0) -> T, which makes
every probability linear in the observation time T.
"""
from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

import numpy as np
from scipy.signal import get_window

from .kernels import Orientation

__all__ = [
    "NonRelativisticWarning",
    "Monochromatic",
    "Sampled",
    "MotionSpec",
    "LineSpectrum",
    "GriddedSpectrum",
    "line_spectrum",
    "sampled_spectrum",
    "read_trajectory",
    "write_trajectory",
]

logger = logging.getLogger(__name__)

MAX_SPEED = 0.1
MIN_SAMPLES = 16


class NonRelativisticWarning(UserWarning):
    """The trajectory is too fast for the first-order-in-velocity model."""


@dataclass(frozen=True)
class Monochromatic:
    """y(t) = amplitude * sin(omega_cm * t) observed for a time T."""

    amplitude: float
    omega_cm: float
    observation_time: float

    def __post_init__(self) -> None:
        if self.amplitude < 0:
            raise ValueError("amplitude must be >= 0")
        if not self.omega_cm > 0:
            raise ValueError("omega_cm must be > 0")
        if not self.observation_time > 0:
            raise ValueError("observation_time must be > 0")

    @property
    def peak_speed(self) -> float:
        return self.amplitude * self.omega_cm

    @property
    def square_integral(self) -> float:
        """int y^2 dt over the observation window."""
        return 0.5 * self.amplitude**2 * self.observation_time


@dataclass(frozen=True)
class Sampled:
    """Uniformly sampled displacement record, tapered by ``window`` before the DFT."""

    times: np.ndarray
    displacements: np.ndarray
    window: str = "hann"

    def __post_init__(self) -> None:
        t = np.asarray(self.times, dtype=float)
        y = np.asarray(self.displacements, dtype=float)
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "displacements", y)
        if t.ndim != 1 or t.shape != y.shape:
            raise ValueError("times and displacements must be 1-d arrays of equal length")
        if t.size < MIN_SAMPLES:
            raise ValueError(f"need at least {MIN_SAMPLES} samples, got {t.size}")
        dt = np.diff(t)
        if np.any(dt <= 0):
            raise ValueError("time grid must be strictly increasing")
        if np.max(np.abs(dt - dt.mean())) > 1e-6 * dt.mean():
            raise ValueError("time grid must be uniformly spaced")

    @property
    def dt(self) -> float:
        return float((self.times[-1] - self.times[0]) / (self.times.size - 1))

    @property
    def observation_time(self) -> float:
        return self.dt * self.times.size

    @property
    def peak_speed(self) -> float:
        return float(np.max(np.abs(np.diff(self.displacements)))) / self.dt

    @property
    def square_integral(self) -> float:
        return float(np.sum(self.displacements**2) * self.dt)


MotionModel = Union[Monochromatic, Sampled]


@dataclass(frozen=True)
class MotionSpec:
    """A motion model together with its direction relative to the mirror."""

    orientation: Orientation
    model: MotionModel

    def __post_init__(self) -> None:
        object.__setattr__(self, "orientation", Orientation(self.orientation))
        speed = self.model.peak_speed
        if speed >= MAX_SPEED:
            warnings.warn(
                f"peak speed {speed:.3g} exceeds {MAX_SPEED}; first-order velocity "
                "expansion is unreliable",
                NonRelativisticWarning,
                stacklevel=3,
            )

    @classmethod
    def monochromatic(cls, orientation, amplitude, omega_cm, observation_time) -> "MotionSpec":
        return cls(orientation, Monochromatic(amplitude, omega_cm, observation_time))

    @property
    def observation_time(self) -> float:
        return self.model.observation_time

    @property
    def square_integral(self) -> float:
        return self.model.square_integral

    def spectrum(self) -> "LineSpectrum | GriddedSpectrum":
        if isinstance(self.model, Monochromatic):
            return line_spectrum(self)
        return sampled_spectrum(self)


@dataclass(frozen=True)
class LineSpectrum:
    """Discrete |y(nu)|^2 = sum_j 2 pi w_j [delta(nu - nu_j) + delta(nu + nu_j)]."""

    frequencies: np.ndarray
    weights: np.ndarray
    observation_time: float

    def __post_init__(self) -> None:
        f = np.atleast_1d(np.asarray(self.frequencies, dtype=float))
        w = np.atleast_1d(np.asarray(self.weights, dtype=float))
        object.__setattr__(self, "frequencies", f)
        object.__setattr__(self, "weights", w)
        if f.shape != w.shape:
            raise ValueError("one weight per line")
        if np.any(f <= 0) or np.unique(f).size != f.size:
            raise ValueError("line frequencies must be positive and distinct")
        if np.any(w < 0):
            raise ValueError("line weights must be non-negative")


@dataclass(frozen=True)
class GriddedSpectrum:
    """|y(nu)|^2 on a uniform grid nu >= 0 (not divided by T; see ``psd``)."""

    nu_grid: np.ndarray
    density: np.ndarray
    observation_time: float
    window: str = field(default="hann")

    @property
    def spacing(self) -> float:
        return float(self.nu_grid[1] - self.nu_grid[0])

    @property
    def psd(self) -> np.ndarray:
        """|y(nu)|^2 / T, the observation-time independent spectral density."""
        return self.density / self.observation_time

    def interpolate(self, nu) -> np.ndarray:
        """Even extension of the density, linear between bins, zero beyond the grid."""
        nu = np.abs(np.asarray(nu, dtype=float))
        return np.interp(nu, self.nu_grid, self.density, right=0.0)


def line_spectrum(motion: MotionSpec) -> LineSpectrum:
    model = motion.model
    if not isinstance(model, Monochromatic):
        raise TypeError("line_spectrum needs a monochromatic motion")
    weight = 0.25 * model.amplitude**2 * model.observation_time
    return LineSpectrum([model.omega_cm], [weight], model.observation_time)


def sampled_spectrum(motion: MotionSpec) -> GriddedSpectrum:
    """Windowed periodogram of a sampled trajectory.

    The taper is scaled to unit mean square so that a long stationary record
    keeps its energy: 2 * int_0^inf dnu/(2 pi) |y|^2 ~= int y^2 dt.
    """
    model = motion.model
    if not isinstance(model, Sampled):
        raise TypeError("sampled_spectrum needs a sampled motion")
    n, dt = model.times.size, model.dt
    taper = get_window(model.window, n, fftbins=True)
    taper = taper / math.sqrt(np.mean(taper**2))
    y_nu = np.fft.rfft(model.displacements * taper) * dt
    nu = 2 * math.pi * np.fft.rfftfreq(n, dt)
    return GriddedSpectrum(nu, np.abs(y_nu) ** 2, model.observation_time, model.window)


def read_trajectory(path: str | Path) -> tuple[np.ndarray, np.ndarray]:
    """Read a two-column ``time displacement`` file with a ``# units: natural`` header."""
    path = Path(path)
    units_ok = False
    rows = []
    with path.open() as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip().lower().replace(" ", "")
                if body == "units:natural":
                    units_ok = True
                continue
            parts = line.split("#", 1)[0].split()
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected 'time displacement'")
            rows.append((float(parts[0]), float(parts[1])))
    if not units_ok:
        raise ValueError(f"{path}: missing '# units: natural' header comment")
    if not rows:
        raise ValueError(f"{path}: no samples")
    data = np.array(rows)
    logger.debug("read %d samples from %s", len(rows), path)
    return data[:, 0], data[:, 1]


def write_trajectory(path: str | Path, times, displacements) -> None:
    with Path(path).open("w", newline="\n") as fh:
        fh.write("# units: natural\n# time displacement\n")
        for t, y in zip(times, displacements):
            fh.write(f"{t:.17g} {y:.17g}\n")
