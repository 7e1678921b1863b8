"""Radiation from a harmonically bound atom oscillating near a perfect mirror.

Spectral rate kernels of the imaginary part of the effective action, and
decay/excitation photon spectra from first-order transition amplitudes.
Natural units (hbar = c = 1), Heaviside-Lorentz charge.
"""
from .kernels import (
    DEFAULT_COUPLING_E2,
    FREE_SPACE,
    Channel,
    Orientation,
    PhysicalConfig,
    envelope_f,
    kernel_free,
    kernel_reflected,
    kernel_total,
)
from .trajectory import Monochromatic, MotionSpec, Sampled, read_trajectory, write_trajectory
from .effective_action import ImGammaReport, im_gamma, ratio_curves
from .emission import (
    PhotonMode,
    SpectrumTable,
    decay_spectrum_closed,
    dynamic_decay_angular,
    excitation_angular,
    excitation_spectrum,
    full_spectrum,
    mode_function,
    static_correction,
    static_decay_rate,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_COUPLING_E2",
    "FREE_SPACE",
    "Channel",
    "Orientation",
    "PhysicalConfig",
    "envelope_f",
    "kernel_free",
    "kernel_reflected",
    "kernel_total",
    "Monochromatic",
    "MotionSpec",
    "Sampled",
    "read_trajectory",
    "write_trajectory",
    "ImGammaReport",
    "im_gamma",
    "ratio_curves",
    "PhotonMode",
    "SpectrumTable",
    "decay_spectrum_closed",
    "dynamic_decay_angular",
    "excitation_angular",
    "excitation_spectrum",
    "full_spectrum",
    "mode_function",
    "static_correction",
    "static_decay_rate",
]
