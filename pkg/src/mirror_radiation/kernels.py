"""Spectral rate kernels m(nu) for an atom oscillating near a perfect mirror.

The imaginary part of the effective action is a contraction of the motion's
spectral density with these kernels,

    Im Gamma = int dnu/(2 pi) m(nu) |y(nu)|^2 .

Each kernel is the free-space piece plus a reflected (image) piece that
depends on the atom-mirror distance through x = a (|nu| - Omega).  All
quantities are in natural units (hbar = c = 1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

__all__ = [
    "Channel",
    "Orientation",
    "PhysicalConfig",
    "FREE_SPACE",
    "DEFAULT_COUPLING_E2",
    "SERIES_SWITCH",
    "envelope_f",
    "envelope_closed",
    "envelope_series",
    "kernel_free",
    "kernel_reflected",
    "kernel_total",
    "zero_distance_ratio",
]

FREE_SPACE = math.inf
DEFAULT_COUPLING_E2 = 4.0 * math.pi / 137.0

# Below this x the closed forms lose digits to 1/x^5 cancellations.
SERIES_SWITCH = 0.5


class Channel(str, Enum):
    """Field correlator a kernel comes from."""

    EE = "ee"
    EB = "eb"
    BB = "bb"


class Orientation(str, Enum):
    """Direction of the center-of-mass oscillation relative to the mirror."""

    PARALLEL = "par"
    PERPENDICULAR = "perp"


@dataclass(frozen=True)
class PhysicalConfig:
    """Physical constants of the atom + mirror problem.

    Parameters
    ----------
    coupling_e2 : float
        Squared charge e^2 (Heaviside-Lorentz, so e^2 = 4 pi alpha).
    mass_m : float
        Electron mass.
    omega : float
        Atomic transition frequency Omega.
    distance_a : float
        Mean atom-mirror distance; ``FREE_SPACE`` (inf) removes the mirror.
    """

    coupling_e2: float = DEFAULT_COUPLING_E2
    mass_m: float = 1.0
    omega: float = 1.0
    distance_a: float = FREE_SPACE

    def __post_init__(self) -> None:
        for name in ("coupling_e2", "mass_m", "omega", "distance_a"):
            value = getattr(self, name)
            if not (value > 0):
                raise ValueError(f"{name} must be positive, got {value!r}")
        for name in ("coupling_e2", "mass_m", "omega"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    @property
    def is_free_space(self) -> bool:
        return math.isinf(self.distance_a)

    @property
    def scale(self) -> float:
        """Common factor e^2 / (pi m Omega) of every kernel."""
        return self.coupling_e2 / (math.pi * self.mass_m * self.omega)


# Taylor coefficients of f_i in powers of x^2, exact from the closed forms.
_SERIES_TEXT = {
    1: "14/15 -52/105 76/945 -40/6237 124/405405 -296/30405375 344/1550674125 "
       "-16/4208972625 4/78746051475 -488/896523796042875 536/112065474505359375 "
       "-1168/33283445928091734375 632/2895659795743980890625 "
       "-16/13728834090409697634375",
    2: "11/15 -34/35 46/189 -116/4455 2/1287 -164/2764125 188/119282625 "
       "-424/13749310575 118/254766637125 -4/725930199225 284/5336451166921875 "
       "-8/18793588892203125 332/115826391829759235625 "
       "-712/43220403617956455515625",
    3: "1/3 -2/15 2/105 -4/2835 2/31185 -4/2027025 4/91216125 -8/10854718875 "
       "2/206239658625 -4/38979295480125 4/4482618980214375 "
       "-8/1232720219558953125 4/99850337784275203125 "
       "-8/37643577344671751578125",
    4: "2/3 -4/5 4/21 -8/405 4/3465 -8/184275 8/7016625 -16/723647925 "
       "4/12131744625 -8/2051541867375 8/213458046676875 "
       "-16/53596531285171875 8/3994013511371008125 "
       "-16/1394206568321175984375",
    5: "1/3 2/15 -2/35 4/567 -2/4455 4/225225 -4/8292375 8/834978375 "
       "-2/13749310575 4/2292899734125 -4/235927314748125 "
       "8/58700962836140625 -4/4341319034098921875 "
       "8/1505743093786870063125",
}
_SERIES_TEXT[6] = _SERIES_TEXT[4]

SERIES_COEFFICIENTS: dict[int, tuple[Fraction, ...]] = {
    i: tuple(Fraction(tok) for tok in text.split()) for i, text in _SERIES_TEXT.items()
}
_SERIES_FLOAT = {i: np.array([float(c) for c in co]) for i, co in SERIES_COEFFICIENTS.items()}


def envelope_closed(index: int, x):
    """Closed-form envelope f_index(x).  Accurate only for x >~ 0.25."""
    x = np.asarray(x, dtype=float)
    c, s = np.cos(2 * x), np.sin(2 * x)
    if index == 1:
        return 3 * (1 / x**4 - 1 / (2 * x**2)) * c + 0.5 * (-3 / x**5 + 5.5 / x**3) * s
    if index == 2:
        return (-3 / x**4 + 2.5 / x**2) * c + 0.25 * (6 / x**5 - 13 / x**3 + 6 / x) * s
    if index == 3:
        return -c / (4 * x**2) + s / (8 * x**3)
    if index == 4:
        return c / x**2 - (1 / (2 * x**3) - 1 / x) * s
    if index == 5:
        return -c / x**2 + 0.5 * (1 / x**3 - 1 / x) * s
    if index == 6:
        return c / x**2 + (-1 / (2 * x**3) + 1 / x) * s
    raise ValueError(f"envelope index must be 1..6, got {index!r}")


def envelope_series(index: int, x):
    """Truncated Taylor series of f_index about x = 0 (Horner in x^2)."""
    if index not in _SERIES_FLOAT:
        raise ValueError(f"envelope index must be 1..6, got {index!r}")
    x2 = np.asarray(x, dtype=float) ** 2
    out = np.zeros_like(x2)
    for c in _SERIES_FLOAT[index][::-1]:
        out = out * x2 + c
    return out


def envelope_f(index: int, x):
    """Envelope f_index(x) for x > 0, switching to the series below ``SERIES_SWITCH``."""
    if index not in _SERIES_FLOAT:
        raise ValueError(f"envelope index must be 1..6, got {index!r}")
    xa = np.asarray(x, dtype=float)
    if np.any(~(xa > 0)):
        raise ValueError("envelope functions are defined for x > 0 only")
    small = xa < SERIES_SWITCH
    out = np.empty_like(xa)
    out[small] = envelope_series(index, xa[small])
    with np.errstate(all="ignore"):
        out[~small] = envelope_closed(index, xa[~small])
    return out if out.ndim else float(out)


# (coefficient, power of |nu|, power of k) for free-space kernels, in units of e^2/(pi m Omega)
_FREE = {
    Channel.EE: (1 / 24, 0, 5),
    Channel.EB: (-1 / 12, 1, 4),
    Channel.BB: (1 / 12, 2, 3),
}

# (coefficient, envelope index) of the reflected kernels; powers as in _FREE
_REFLECTED = {
    (Channel.EE, Orientation.PARALLEL): (-1 / 32, 1),
    (Channel.EE, Orientation.PERPENDICULAR): (1 / 16, 2),
    (Channel.EB, Orientation.PARALLEL): (-1 / 8, 3),
    (Channel.EB, Orientation.PERPENDICULAR): (1 / 8, 4),
    (Channel.BB, Orientation.PARALLEL): (-1 / 16, 5),
    (Channel.BB, Orientation.PERPENDICULAR): (1 / 16, 6),
}


def _above_threshold(nu, omega):
    nu = np.asarray(nu, dtype=float)
    absnu = np.abs(nu)
    k = absnu - omega
    return nu, absnu, k, k > 0


def _finish(nu, out):
    return out if nu.ndim else float(out)


def kernel_free(channel: Channel, nu, cfg: PhysicalConfig):
    """Free-space kernel m^(0)_channel(nu); exactly zero for |nu| <= Omega."""
    channel = Channel(channel)
    coef, p_nu, p_k = _FREE[channel]
    nu, absnu, k, live = _above_threshold(nu, cfg.omega)
    out = np.zeros_like(absnu)
    out[live] = coef * cfg.scale * absnu[live] ** p_nu * k[live] ** p_k
    return _finish(nu, out)


def kernel_reflected(channel: Channel, orientation: Orientation, nu, cfg: PhysicalConfig):
    """Image-charge correction m^{par|perp}_channel(nu) at distance ``cfg.distance_a``.

    The reflected part alone may be negative; only the total is a rate.
    """
    if cfg.is_free_space:
        raise ValueError("reflected kernels need a finite mirror distance")
    channel, orientation = Channel(channel), Orientation(orientation)
    coef, index = _REFLECTED[channel, orientation]
    _, p_nu, p_k = _FREE[channel]
    nu, absnu, k, live = _above_threshold(nu, cfg.omega)
    out = np.zeros_like(absnu)
    if np.any(live):
        kl = k[live]
        env = np.asarray(envelope_f(index, kl * cfg.distance_a))
        out[live] = coef * cfg.scale * absnu[live] ** p_nu * kl**p_k * env
    return _finish(nu, out)


def kernel_total(channel: Channel, orientation: Orientation, nu, cfg: PhysicalConfig):
    """Free plus reflected kernel; the reflected part is absent in free space."""
    free = kernel_free(channel, nu, cfg)
    if cfg.is_free_space:
        return free
    return free + kernel_reflected(channel, orientation, nu, cfg)


def zero_distance_ratio(channel: Channel, orientation: Orientation) -> Fraction:
    """Exact limit of reflected/free as x -> 0+."""
    coef, index = _REFLECTED[Channel(channel), Orientation(orientation)]
    free_coef = _FREE[Channel(channel)][0]
    return Fraction(coef / free_coef).limit_denominator(64) * SERIES_COEFFICIENTS[index][0]
