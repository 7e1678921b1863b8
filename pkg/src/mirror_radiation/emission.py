"""Photon emission by a moving atom in front of a perfect mirror.

Transition-amplitude observables for motion normal to the mirror (the mirror
is the z = 0 plane and the atom sits at r0 = (0, 0, a)):

* the static spontaneous-emission line at k = Omega and its O(y^2) correction,
* the motion-induced decay sidebands, resolved in angle and in k,
* ground-state excitation with photon emission, obtained from the decay
  results by flipping the sign of Omega in the integrands.

Decay probabilities average over the three initial polarizations of the
excited oscillator (factor 1/3).  The excitation spectrum inherits that
factor by default; ``polarization="summed"`` instead sums over the three
final atomic states (factor 3 larger).
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from scipy import integrate

from .kernels import Orientation, PhysicalConfig
from .trajectory import GriddedSpectrum, LineSpectrum, MotionSpec

__all__ = [
    "PhotonMode",
    "AngularDistribution",
    "StaticEmission",
    "SpectrumTable",
    "ExcitationThresholdWarning",
    "mode_normalization",
    "mode_function",
    "angular_grid",
    "static_decay_rate",
    "static_correction",
    "dynamic_decay_angular",
    "excitation_angular",
    "decay_spectrum_closed",
    "excitation_spectrum",
    "full_spectrum",
]

Polarization = Literal["as-printed", "summed"]
POLARIZATIONS = ("as-printed", "summed")
DEFAULT_ANGULAR_POINTS = 2001

# Below this k*a the closed-form spectrum cancels like 1/(ka)^5.
_SPECTRUM_SERIES_SWITCH = 1.0
_SPECTRUM_SERIES_TERMS = 20


class ExcitationThresholdWarning(UserWarning):
    """Center-of-mass frequency below the atomic gap; nothing to excite."""


@dataclass(frozen=True)
class PhotonMode:
    """Half-space photon mode: wavevector (kx, ky, kz > 0) and polarization 1 or 2."""

    k_par: tuple[float, float]
    k_z: float
    polarization: int

    def __post_init__(self) -> None:
        if self.polarization not in (1, 2):
            raise ValueError("polarization must be 1 or 2")
        if not self.k_z > 0:
            raise ValueError("k_z must be > 0 for the half-space mode set")

    @classmethod
    def from_angles(cls, k: float, theta: float, phi: float, polarization: int) -> "PhotonMode":
        st = math.sin(theta)
        return cls((k * st * math.cos(phi), k * st * math.sin(phi)), k * math.cos(theta), polarization)

    @property
    def k(self) -> float:
        return math.sqrt(self.k_par[0] ** 2 + self.k_par[1] ** 2 + self.k_z**2)


def mode_normalization(k: float) -> float:
    """N_k = sqrt(2 / ((2 pi)^3 k))."""
    return math.sqrt(2.0 / ((2 * math.pi) ** 3 * k))


def mode_function(mode: PhotonMode, position) -> np.ndarray:
    """Spatial mode factor g^(lambda)(x), without N_k and the time phase.

    lambda = 1 is transverse electric, (k_par_hat x z_hat) sin(k_z z);
    lambda = 2 is [z_hat |k_par| cos(k_z z) - i k_par_hat k_z sin(k_z z)] / k.
    Both carry exp(i k_par . x_par).  For normal incidence k_par_hat is
    taken along x.
    """
    x, y, z = (float(c) for c in position)
    kx, ky = mode.k_par
    kpar = math.hypot(kx, ky)
    khat = (kx / kpar, ky / kpar) if kpar > 0 else (1.0, 0.0)
    phase = np.exp(1j * (kx * x + ky * y))
    s, c = math.sin(mode.k_z * z), math.cos(mode.k_z * z)
    if mode.polarization == 1:
        vec = np.array([khat[1] * s, -khat[0] * s, 0.0], dtype=complex)
    else:
        k = mode.k
        vec = np.array(
            [-1j * khat[0] * mode.k_z * s / k, -1j * khat[1] * mode.k_z * s / k, kpar * c / k],
            dtype=complex,
        )
    return vec * phase


def _mode_weight(k: float, u: float, a: float) -> float:
    """sum_lambda |g^(lambda)(r0)|^2 for direction cos(theta) = u at distance a.

    In free space the squared sine/cosine factors are replaced by their
    average over a quarter-period shift of the atom, which is exact.
    """
    theta = math.acos(u)
    modes = [PhotonMode.from_angles(k, theta, 0.0, lam) for lam in (1, 2)]
    if math.isinf(a):
        shift = math.pi / (2 * modes[0].k_z)
        return sum(
            0.5 * (np.vdot(g, g).real + np.vdot(h, h).real)
            for m in modes
            for g, h in [(mode_function(m, (0, 0, 0)), mode_function(m, (0, 0, shift)))]
        )
    return sum(np.vdot(g, g).real for g in (mode_function(m, (0, 0, a)) for m in modes))


def _static_prefactor(cfg: PhysicalConfig) -> float:
    # (1/3) polarization average * e^2/(2 m Omega) * 2 pi * N_k^2 * k^2 * k^2, at k = Omega
    k = cfg.omega
    return (cfg.coupling_e2 / (6 * cfg.mass_m * cfg.omega)) * 2 * math.pi * mode_normalization(k) ** 2 * k**4


def _hemisphere(fn) -> float:
    value, _ = integrate.quad(fn, 0.0, 1.0, epsabs=0.0, epsrel=1e-12, limit=2000)
    return 2 * math.pi * value


def angular_grid(n_points: int = DEFAULT_ANGULAR_POINTS, lo: float = -1.0) -> np.ndarray:
    """cos(theta) grid, uniform, mirror-symmetric to the last bit when lo = -1."""
    if n_points < 2:
        raise ValueError("need at least two angular points")
    u = np.linspace(lo, 1.0, n_points)
    if lo == -1.0:
        u = 0.5 * (u - u[::-1])
    return u


@dataclass(frozen=True)
class StaticEmission:
    """Static decay rate and its density per unit solid angle over the hemisphere."""

    rate: float
    cos_theta: np.ndarray
    angular_density: np.ndarray


def static_decay_rate(cfg: PhysicalConfig, n_points: int = DEFAULT_ANGULAR_POINTS) -> StaticEmission:
    """Spontaneous decay rate of the atom at rest, with T 2 pi delta(Omega - k) stripped."""
    k, a = cfg.omega, cfg.distance_a
    pref = _static_prefactor(cfg)
    rate = pref * _hemisphere(lambda u: _mode_weight(k, u, a))
    u = angular_grid(n_points, lo=0.0)[1:]
    density = pref * np.array([_mode_weight(k, ui, a) for ui in u])
    return StaticEmission(rate, u, density)


def static_correction(cfg: PhysicalConfig, motion: MotionSpec) -> float:
    """O(y^2) correction to the static decay rate (per unit observation time).

    Interference of the second-order amplitude with the static one.  For
    normal motion d_z^2 acting on either mode gives -k_z^2, so the result is
    the static integrand weighted by k_z^2 and by int y^2 dt; it is never
    positive.  The mixed-polarization part of the second-order amplitude
    (the one built from the partner mode lambda') drops out: on the static
    line k = Omega its time integral is int y ydot dt = [y^2 / 2], a boundary
    term that vanishes for motion starting and ending at r0.
    """
    if motion.orientation is not Orientation.PERPENDICULAR:
        raise ValueError("the static correction is derived for motion normal to the mirror")
    k, a = cfg.omega, cfg.distance_a
    mean_square = motion.square_integral / motion.observation_time
    if mean_square == 0:
        return 0.0
    angular = _hemisphere(lambda u: (k * u) ** 2 * _mode_weight(k, u, a))
    return -_static_prefactor(cfg) * angular * mean_square


@dataclass(frozen=True)
class AngularDistribution:
    """p1 (TE) and p2 (TM) angular profiles on a grid of theta.

    Values are as in dP = C |y|^2 k^3 p sin(theta) d(theta) dk, i.e. already
    integrated over the azimuth.
    """

    theta: np.ndarray
    p1: np.ndarray
    p2: np.ndarray

    @property
    def total(self) -> np.ndarray:
        return self.p1 + self.p2

    @property
    def cos_theta(self) -> np.ndarray:
        return np.cos(self.theta)


def _profiles(k: float, omega: float, a: float, u: np.ndarray):
    # even in u: evaluate on |u| so that theta -> pi - theta is exact
    au = np.abs(u)
    st2 = 1.0 - au * au
    ph = k * a * au
    cos2, sin2 = np.cos(ph) ** 2, np.sin(ph) ** 2
    p1 = omega**2 * cos2 * au * au
    p2 = k**2 * st2 * au * au * sin2 + (omega - k * st2) ** 2 * cos2
    return p1, p2


def _angular(k, omega, cfg, n_points):
    if k < 0:
        raise ValueError("photon wavenumber must be >= 0")
    if cfg.is_free_space:
        raise ValueError("angular profiles need a finite mirror distance")
    u = angular_grid(n_points)[::-1]  # theta ascending
    p1, p2 = _profiles(k, omega, cfg.distance_a, u)
    return AngularDistribution(np.arccos(u), p1, p2)


def dynamic_decay_angular(k: float, cfg: PhysicalConfig, n_points: int = DEFAULT_ANGULAR_POINTS) -> AngularDistribution:
    """Angular profile of the motion-induced decay photon of wavenumber k.

    With a = 1 the arguments read as (ka, Omega a) and the profiles come out
    in units of 1/a^2, which is how they are usually plotted.
    """
    return _angular(k, cfg.omega, cfg, n_points)


def excitation_angular(k: float, cfg: PhysicalConfig, n_points: int = DEFAULT_ANGULAR_POINTS) -> AngularDistribution:
    """Angular profile for excitation: the decay profile with Omega -> -Omega."""
    return _angular(k, -cfg.omega, cfg, n_points)


def _reduced_spectrum(k, omega, a):
    """S = k^3/12 * int_{-1}^{1} (p1 + p2) du, so that dP/dk = e^2 |y|^2 S / (pi^2 m Omega)."""
    k = np.asarray(k, dtype=float)
    lead = 8 * k**3 * (k**2 - 2 * k * omega + 2 * omega**2) / 144
    if math.isinf(a):
        return lead
    out = np.empty_like(k)
    small = k * a < _SPECTRUM_SERIES_SWITCH
    big = ~small
    kb = k[big]
    out[big] = lead[big] + (
        6 * a * kb * (a**2 * (kb + omega) ** 2 - 6) * np.cos(2 * a * kb)
        + 3 * (4 * a**4 * kb**2 * omega**2 - a**2 * (9 * kb**2 + 2 * kb * omega + omega**2) + 6)
        * np.sin(2 * a * kb)
    ) / (144 * a**5)
    out[small] = _reduced_spectrum_series(k[small], omega, a)
    return out


def _reduced_spectrum_series(k, omega, a):
    """Series of the reduced spectrum in (ka)^2 for small ka.

    p1 + p2 = A(u) + B(u) cos(2 k a u) with A, B polynomials in u^2, and
    int u^{2j} cos(2 k a u) du is expanded term by term.
    """
    k = np.asarray(k, dtype=float)
    d = omega - k
    a0, a1 = 0.5 * d**2, 0.5 * (omega**2 + 2 * k * omega - k**2)
    b = (0.5 * d**2, 0.5 * (omega**2 + 2 * k * omega - 3 * k**2), k**2)
    total = 2 * a0 + 2 * a1 / 3
    x2 = (2 * k * a) ** 2
    term = np.ones_like(k)
    for n in range(_SPECTRUM_SERIES_TERMS):
        if n:
            term = -term * x2 / ((2 * n - 1) * (2 * n))
        moment = sum(bj * 2 / (2 * n + 2 * j + 1) for j, bj in enumerate(b))
        total = total + term * moment
    return k**3 * total / 12


def _spectrum_prefactor(cfg: PhysicalConfig) -> float:
    return cfg.coupling_e2 / (math.pi**2 * cfg.mass_m * cfg.omega)


def _as_output(k, value):
    return value if np.ndim(k) else float(value)


def decay_spectrum_closed(k, cfg: PhysicalConfig, spectral_weight):
    """dP/dk of the motion-induced decay photon, theta integrated.

    ``spectral_weight`` is |y_perp(k - Omega)|^2.  In free space only the
    non-oscillating term survives.
    """
    if np.any(np.asarray(k) <= 0):
        raise ValueError("photon wavenumber must be positive")
    value = _spectrum_prefactor(cfg) * np.asarray(spectral_weight) * _reduced_spectrum(k, cfg.omega, cfg.distance_a)
    return _as_output(k, value)


def excitation_spectrum(k, cfg: PhysicalConfig, spectral_weight, polarization: Polarization = "as-printed"):
    """dP/dk for excitation with photon emission; weight is |y_perp(k + Omega)|^2."""
    if polarization not in POLARIZATIONS:
        raise ValueError(f"polarization must be one of {POLARIZATIONS}")
    if np.any(np.asarray(k) <= 0):
        raise ValueError("photon wavenumber must be positive")
    factor = 3.0 if polarization == "summed" else 1.0
    value = factor * _spectrum_prefactor(cfg) * np.asarray(spectral_weight) * _reduced_spectrum(
        k, -cfg.omega, cfg.distance_a
    )
    return _as_output(k, value)


MODES = ("decay", "excitation", "full")
_MODE_CHANNELS = {
    "decay": ("static", "static_correction", "dynamic"),
    "excitation": ("excitation",),
    "full": ("static", "static_correction", "dynamic", "excitation"),
}


@dataclass(frozen=True)
class SpectrumTable:
    """Emitted-photon spectrum by channel.

    ``kind == "lines"``: each row is a discrete line at ``k`` and the values
    are probabilities.  ``kind == "density"``: values are dP/dk on a grid and
    the static line (a delta at k = Omega) is reported in ``static_lines``.
    """

    kind: str
    k: np.ndarray
    values: dict[str, np.ndarray]
    observation_time: float
    static_lines: dict[str, float] = field(default_factory=dict)

    @property
    def channels(self) -> tuple[str, ...]:
        return tuple(self.values)

    def rows(self, per_time: bool = False) -> list[dict[str, float]]:
        scale = 1.0 / self.observation_time if per_time else 1.0
        return [
            {"k": float(kj), **{c: float(v[i]) * scale for c, v in self.values.items()}}
            for i, kj in enumerate(self.k)
        ]

    def line_positions(self, channel: str | None = None) -> np.ndarray:
        """k of the rows where ``channel`` (or any channel) is non-zero."""
        if channel is None:
            mask = np.any([v != 0 for v in self.values.values()], axis=0) if self.values else []
        else:
            mask = self.values[channel] != 0
        return self.k[np.asarray(mask, dtype=bool)] if len(self.k) else self.k


def _static_lines(cfg, motion):
    t = motion.observation_time
    return {
        "static": static_decay_rate(cfg).rate * t,
        "static_correction": static_correction(cfg, motion) * t,
    }


def _merge_lines(entries, channels, t):
    ks: list[float] = []
    table: list[dict[str, float]] = []
    for k, channel, p in entries:
        if p == 0:
            continue
        for i, kk in enumerate(ks):
            if math.isclose(kk, k, rel_tol=1e-12):
                table[i][channel] += p
                break
        else:
            ks.append(k)
            table.append(dict.fromkeys(channels, 0.0))
            table[-1][channel] = p
    order = np.argsort(ks)
    k_arr = np.asarray(ks, dtype=float)[order]
    values = {c: np.array([table[i][c] for i in order], dtype=float) for c in channels}
    return SpectrumTable("lines", k_arr, values, t)


def full_spectrum(
    cfg: PhysicalConfig,
    motion: MotionSpec,
    mode: str = "full",
    polarization: Polarization = "as-printed",
) -> SpectrumTable:
    """Assemble the emitted-photon spectrum for motion normal to the mirror.

    For monochromatic motion at Omega_cm this is a list of lines: the static
    line at Omega, sidebands at Omega +- Omega_cm (the lower one only when
    Omega_cm < Omega), and an excitation line at Omega_cm - Omega when
    Omega_cm > Omega.  A sampled trajectory gives densities on a k grid.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if motion.orientation is not Orientation.PERPENDICULAR:
        raise ValueError(
            "emission spectra are available for perpendicular motion only; "
            "use im_gamma for the parallel kernels"
        )
    channels = _MODE_CHANNELS[mode]
    omega = cfg.omega
    t = motion.observation_time
    spectrum = motion.spectrum()
    decay = "dynamic" in channels
    excite = "excitation" in channels

    if isinstance(spectrum, LineSpectrum):
        entries = []
        if decay:
            for channel, p in _static_lines(cfg, motion).items():
                entries.append((omega, channel, p))
        for nu, w in zip(spectrum.frequencies, spectrum.weights):
            strength = 2 * math.pi * w
            if decay:
                for k in (omega + nu, omega - nu):
                    if k > 0:
                        entries.append((k, "dynamic", decay_spectrum_closed(k, cfg, strength)))
            if excite and nu > omega:
                k = nu - omega
                entries.append((k, "excitation", excitation_spectrum(k, cfg, strength, polarization)))
        if mode == "excitation" and not np.any(spectrum.frequencies > omega):
            warnings.warn(
                "center-of-mass frequency does not exceed Omega: excitation spectrum is empty",
                ExcitationThresholdWarning,
                stacklevel=2,
            )
        return _merge_lines(entries, channels, t)

    assert isinstance(spectrum, GriddedSpectrum)
    dnu = spectrum.spacing
    k = np.arange(1, int(math.floor((omega + spectrum.nu_grid[-1]) / dnu)) + 1) * dnu
    values: dict[str, np.ndarray] = {}
    static = {}
    if decay:
        static = _static_lines(cfg, motion)
        values["dynamic"] = decay_spectrum_closed(k, cfg, spectrum.interpolate(k - omega))
    if excite:
        values["excitation"] = excitation_spectrum(k, cfg, spectrum.interpolate(k + omega), polarization)
    return SpectrumTable("density", k, values, t, static)
