"""Brute-force reconstructions of the closed forms, for validation only.

Nothing here imports the envelope algebra of :mod:`mirror_radiation.kernels`
or the angular profiles of :mod:`mirror_radiation.emission`; every check
starts again from the momentum-space integrands.  The radial integral is
collapsed by the on-shell delta function, k = |nu| - Omega, and only the
angular integral over u = cos(theta) is done numerically.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from scipy import integrate

from .kernels import Channel, Orientation, PhysicalConfig

__all__ = [
    "QuadratureError",
    "QuadratureResult",
    "adaptive_quad",
    "free_kernel_oracle",
    "reflected_kernel_oracle",
    "decay_spectrum_oracle",
    "excitation_spectrum_oracle",
]

ABS_FLOOR = 1e-15
MIN_RULE_SIZE = 21  # one Gauss-Kronrod 10/21 panel


class QuadratureError(RuntimeError):
    """Adaptive quadrature ran out of subdivisions or hit round-off."""


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error_estimate: float
    evaluations: int
    intervals: int


def adaptive_quad(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-10,
    max_intervals: int = 10_000,
) -> QuadratureResult:
    """Globally adaptive Gauss-Kronrod quadrature of ``f`` on [lo, hi].

    Targets ``|error| <= tol * |I| + 1e-15`` and raises
    :class:`QuadratureError` when the subdivision budget is exhausted
    before the estimate meets that bound.
    """
    if not lo < hi:
        raise ValueError(f"need lo < hi, got [{lo}, {hi}]")
    if not tol > 0:
        raise ValueError("tol must be positive")
    out = integrate.quad(
        f, lo, hi, epsabs=ABS_FLOOR, epsrel=tol, limit=max_intervals, full_output=1
    )
    value, err, info = out[0], out[1], out[2]
    if len(out) > 3:
        # QUADPACK flags round-off even when the estimate already meets the
        # bound; only a missed bound is a failure.
        if err > tol * abs(value) + ABS_FLOOR or info.get("last", 0) >= max_intervals:
            raise QuadratureError(out[3].strip().splitlines()[0])
    return QuadratureResult(float(value), float(err), int(info["neval"]), int(info["last"]))


# How each term of the action reduces once Delta_Omega * Delta_k is combined
# into Delta_{Omega+k} and the delta function fixes k:
#   "yy"   : y(t) y(t') Delta Delta                  -> + c k
#   "ydy"  : y(t) ydot(t') Delta d_t Delta  (~ -nu^2) -> - c |nu| k^2
#   "dydy" : ydot(t) ydot(t') Delta Delta   (~ +nu^2) -> + c nu^2 k
# each times e^2/(16 pi m Omega) * int_{-1}^{1} du W(k, u).
def _reduction_factor(kind: str, c: float, absnu: float, k: float) -> float:
    if kind == "yy":
        return c * k
    if kind == "ydy":
        return -c * absnu * k**2
    if kind == "dydy":
        return c * absnu**2 * k
    raise ValueError(kind)


# Term of the action: (i c e^2 / m) int y y int d^3k/(2pi)^3 W(k) ...
# W given as k-power times a polynomial in u; in-plane weights are averaged
# over the azimuth of k_par for motion along one in-plane axis.
_REFLECTED_TERMS = {
    (Channel.EE, Orientation.PARALLEL): ("yy", -0.25, 4, lambda u: (1 - u * u) * (1 + 2 * u * u)),
    (Channel.EE, Orientation.PERPENDICULAR): ("yy", 0.5, 4, lambda u: u * u * (1 + 2 * u * u)),
    (Channel.EB, Orientation.PARALLEL): ("ydy", 1.0, 2, lambda u: 0.5 * (1 - u * u)),
    (Channel.EB, Orientation.PERPENDICULAR): ("ydy", 1.0, 2, lambda u: -2 * u * u),
    (Channel.BB, Orientation.PARALLEL): ("dydy", -0.5, 2, lambda u: 1 - 2 * u * u),
    (Channel.BB, Orientation.PERPENDICULAR): ("dydy", -0.5, 2, lambda u: -2 * u * u),
}

# Free-space terms for motion along one axis (taken as z).
_FREE_TERMS = {
    Channel.EE: ("yy", 0.5, 4, lambda u: 2 * u * u),
    Channel.EB: ("ydy", 1.0, 2, lambda u: 2 * u * u),
    Channel.BB: ("dydy", 0.5, 2, lambda u: 1 + u * u),
}


def _kernel_from_term(term, nu, cfg, oscillating, tol):
    kind, c, k_power, weight = term
    absnu = abs(float(nu))
    k = absnu - cfg.omega
    if k <= 0:
        return 0.0
    if oscillating:
        phase = 2 * k * cfg.distance_a
        integrand = lambda u: weight(u) * math.cos(phase * u)
    else:
        integrand = weight
    angular = adaptive_quad(integrand, -1.0, 1.0, tol=tol).value
    pref = cfg.coupling_e2 / (16 * math.pi * cfg.mass_m * cfg.omega)
    return pref * _reduction_factor(kind, c, absnu, k) * k**k_power * angular


def free_kernel_oracle(channel: Channel, nu: float, cfg: PhysicalConfig, tol: float = 1e-10) -> float:
    """Free-space kernel by angular quadrature of the direction-resolved weight."""
    return _kernel_from_term(_FREE_TERMS[Channel(channel)], nu, cfg, False, tol)


def reflected_kernel_oracle(
    channel: Channel,
    orientation: Orientation,
    nu: float,
    cfg: PhysicalConfig,
    tol: float = 1e-10,
) -> float:
    """Reflected kernel by quadrature of W(u) cos(2 k a u) over u in [-1, 1]."""
    if cfg.is_free_space:
        raise ValueError("reflected kernels need a finite mirror distance")
    term = _REFLECTED_TERMS[Channel(channel), Orientation(orientation)]
    return _kernel_from_term(term, nu, cfg, True, tol)


def _dynamic_integrand(k: float, omega: float, a: float):
    def g(theta: float) -> float:
        ct, st = math.cos(theta), math.sin(theta)
        cos2 = math.cos(k * a * ct) ** 2
        sin2 = math.sin(k * a * ct) ** 2
        lam1 = omega**2 * cos2 * ct**2
        lam2 = k**2 * st**2 * ct**2 * sin2 + (omega - k * st**2) ** 2 * cos2
        return (lam1 + lam2) * st

    return g


def _spectrum_oracle(k, omega, cfg, spectral_weight, tol):
    if not k > 0:
        raise ValueError("photon wavenumber must be positive")
    if cfg.is_free_space:
        raise ValueError("the oracle integrates the finite-distance profile")
    if spectral_weight == 0:
        return 0.0
    angular = adaptive_quad(_dynamic_integrand(k, omega, cfg.distance_a), 0.0, math.pi, tol=tol).value
    pref = cfg.coupling_e2 / (12 * math.pi**2 * cfg.mass_m * cfg.omega)
    return pref * spectral_weight * k**3 * angular


def decay_spectrum_oracle(
    k: float, cfg: PhysicalConfig, spectral_weight: float, tol: float = 1e-10
) -> float:
    """dP/dk of the motion-induced decay by theta quadrature of p1 + p2.

    ``spectral_weight`` is |y_perp(k - Omega)|^2.
    """
    return _spectrum_oracle(k, cfg.omega, cfg, spectral_weight, tol)


def excitation_spectrum_oracle(
    k: float, cfg: PhysicalConfig, spectral_weight: float, tol: float = 1e-10
) -> float:
    """Excitation counterpart (Omega -> -Omega in the integrand), polarization as printed.

    ``spectral_weight`` is |y_perp(k + Omega)|^2.
    """
    return _spectrum_oracle(k, -cfg.omega, cfg, spectral_weight, tol)
