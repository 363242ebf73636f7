"""Rough-surface scattering gains, SINR assembly, and secrecy evaluation.

The scattering kernel is the mean scattered power of a perfectly
conducting Gaussian-rough rectangular plate in the tangent-plane
(Kirchhoff) approximation: a coherent term carrying the flat-plate
diffraction pattern and an incoherent series that grows with the
roughness parameter g = (sigma_h * v_z)^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .constants import SPEED_OF_LIGHT
from .errors import NumericError, ParameterError
from .thz import (ThzInterferenceStats, ThzScenario, received_power,
                  thz_interference_stats)

_SERIES_EPS = 1e-12
_ROUGH_LIMIT_G = 300.0

CONVENTIONS = ("as_printed", "bounded")
WILLIE_ANTENNAS = ("directional", "omni")


@dataclass(frozen=True)
class ScatterSurface:
    """Gaussian rough surface statistics and the illuminated plate.

    The plate is square with half-sides sqrt(area)/2 unless overridden.
    """

    height_std: float               # sigma_h, m
    corr_length: float              # l_c, m
    area: float                     # illuminated area, m^2
    half_x: float | None = None
    half_y: float | None = None

    def __post_init__(self):
        if self.height_std < 0.0:
            raise ParameterError("surface height deviation must be >= 0")
        if self.corr_length <= 0.0 or self.area <= 0.0:
            raise ParameterError("correlation length and area must be > 0")

    @property
    def lx(self) -> float:
        return math.sqrt(self.area) / 2.0 if self.half_x is None else self.half_x

    @property
    def ly(self) -> float:
        return math.sqrt(self.area) / 2.0 if self.half_y is None else self.half_y


@dataclass(frozen=True)
class ScatterGeometry:
    """Incidence/scattering angles, radians: theta_in and theta_out in
    [0, pi/2), azimuth theta_az in [0, 2*pi)."""

    theta_in: float
    theta_out: float
    theta_az: float = 0.0

    def __post_init__(self):
        half_pi = math.pi / 2.0
        if not (0.0 <= self.theta_in < half_pi and 0.0 <= self.theta_out < half_pi):
            raise ParameterError("polar angles must lie in [0, pi/2)")
        if not (0.0 <= self.theta_az < 2.0 * math.pi):
            raise ParameterError("azimuth must lie in [0, 2*pi)")

    @classmethod
    def from_degrees(cls, theta_in: float, theta_out: float,
                     theta_az: float = 0.0) -> "ScatterGeometry":
        return cls(math.radians(theta_in), math.radians(theta_out),
                   math.radians(theta_az))


@dataclass(frozen=True)
class SecrecyReport:
    """Mean SINRs and the normalized secrecy capacity at one sweep point."""

    sinr_bob: float
    sinr_willie: float
    secrecy: float
    params: dict

    def __post_init__(self):
        if self.sinr_bob < 0.0 or self.sinr_willie < 0.0:
            raise ParameterError("SINRs must be nonnegative")


def _sinc(x: float) -> float:
    if abs(x) < 1e-8:
        return 1.0 - x * x / 6.0
    return math.sin(x) / x


def kirchhoff_gain(frequency: float, surface: ScatterSurface,
                   geom: ScatterGeometry) -> float:
    """Mean scattered power gain relative to the incident power.

    G = e^-g * [rho0^2 + (pi*l_c^2*F^2/A) * sum_m g^m/(m!*m) *
    exp(-v_xy^2*l_c^2/(4m))] with the wave vector change v of the plate
    and the geometry factor F; rho0 is the flat-plate diffraction lobe.
    For g > 300 the coherent term is dead and the series collapses to its
    rough-surface limit (pi*l_c^2*F^2/(A*g)) * exp(-v_xy^2*l_c^2/(4g)).
    """
    k = 2.0 * math.pi * frequency / SPEED_OF_LIGHT
    s1, c1 = math.sin(geom.theta_in), math.cos(geom.theta_in)
    s2, c2 = math.sin(geom.theta_out), math.cos(geom.theta_out)
    s3, c3 = math.sin(geom.theta_az), math.cos(geom.theta_az)
    if c1 <= 0.0:
        raise ParameterError("grazing incidence is outside the model's validity")
    vx = k * (s1 - s2 * c3)
    vy = -k * s2 * s3
    vz = -k * (c1 + c2)
    vxy2 = vx * vx + vy * vy
    g = (surface.height_std * vz) ** 2
    f_geom = (1.0 + c1 * c2 - s1 * s2 * c3) / (c1 * (c1 + c2))
    rho0 = _sinc(vx * surface.lx) * _sinc(vy * surface.ly)
    diffuse_coef = math.pi * surface.corr_length ** 2 * f_geom ** 2 / surface.area
    lc2_quarter = vxy2 * surface.corr_length ** 2 / 4.0

    if g > _ROUGH_LIMIT_G:
        return diffuse_coef / g * math.exp(-lc2_quarter / g)

    att = math.exp(-g)
    if g == 0.0:
        return att * rho0 * rho0
    total = 0.0
    term = 1.0
    cap = 50 + 10 * math.ceil(g)
    for m in range(1, cap + 1):
        term *= g / m
        inc = term / m * math.exp(-lc2_quarter / m)
        total += inc
        if term / m < _SERIES_EPS * (total + 1e-300) and m > g:
            break
    else:
        raise NumericError("scattering series did not converge within the cap")
    return att * (rho0 * rho0 + diffuse_coef * total)


def normalized_secrecy_capacity(sinr_bob: float, sinr_willie: float,
                                convention: str = "as_printed",
                                clamp: bool = False) -> float:
    """Covertness feasibility score comparing the two receivers' SINRs.

    as_printed: [log(1+SINR_B) - log(SINR_W)] / log(1+SINR_B); exceeds 1
    whenever SINR_W < 1 and diverges as SINR_W -> 0.
    bounded:    [log(1+SINR_B) - log(1+SINR_W)] / log(1+SINR_B); equals 1
    when the warden receives nothing and 0 at SINR parity.
    """
    if convention not in CONVENTIONS:
        raise ParameterError(f"unknown convention {convention!r}")
    if sinr_bob <= 0.0 or sinr_willie <= 0.0:
        raise ParameterError("SINRs must be > 0")
    denom = math.log1p(sinr_bob)
    if denom == 0.0:
        raise NumericError("degenerate denominator: log(1 + SINR_B) = 0")
    if convention == "as_printed":
        val = (denom - math.log(sinr_willie)) / denom
    else:
        val = (denom - math.log1p(sinr_willie)) / denom
    if clamp:
        val = min(1.0, max(0.0, val))
    return val


def mean_sinr_taylor(p_rx: float, noise: float,
                     stats: ThzInterferenceStats) -> float:
    """Second-order mean SINR: P/(N+E[I]) + P*Var[I]/(N+E[I])^3."""
    denom = noise + stats.mean
    if denom <= 0.0:
        raise ParameterError("noise plus mean interference must be > 0")
    return p_rx / denom + p_rx * stats.variance / denom ** 3


def evaluate_scenario(s: ThzScenario, surface: ScatterSurface,
                      geom_bob: ScatterGeometry, geom_willie: ScatterGeometry,
                      willie_antenna: str = "directional",
                      convention: str = "as_printed",
                      clamp: bool = False) -> SecrecyReport:
    """Assemble both mean SINRs and the secrecy score for one sweep point.

    An omnidirectional warden gets receive gain 1 and full coverage in his
    interference statistics; everything else (blocking model, horizon,
    absorption) matches the receiver's.
    """
    if willie_antenna not in WILLIE_ANTENNAS:
        raise ParameterError(f"unknown warden antenna {willie_antenna!r}")
    gain_bob = kirchhoff_gain(s.frequency, surface, geom_bob)
    gain_willie = kirchhoff_gain(s.frequency, surface, geom_willie)
    noise = s.noise_power

    p_rx_bob = received_power(s.amp_const, s.d_ab, s.absorption) * gain_bob
    sinr_bob = mean_sinr_taylor(p_rx_bob, noise, thz_interference_stats(s))

    if willie_antenna == "omni":
        s_w = replace(s, rx_gain=1.0, coverage=1.0)
    else:
        s_w = s
    p_rx_willie = received_power(s_w.amp_const, s_w.d_aw, s_w.absorption) * gain_willie
    sinr_willie = mean_sinr_taylor(p_rx_willie, noise, thz_interference_stats(s_w))

    secrecy = normalized_secrecy_capacity(sinr_bob, sinr_willie, convention, clamp)
    return SecrecyReport(
        sinr_bob=sinr_bob, sinr_willie=sinr_willie, secrecy=secrecy,
        params={
            "frequency": s.frequency, "intensity": s.intensity,
            "sigma_h": surface.height_std, "corr_length": surface.corr_length,
            "theta_in_deg": math.degrees(geom_bob.theta_in),
            "theta_bob_deg": math.degrees(geom_bob.theta_out),
            "theta_willie_deg": math.degrees(geom_willie.theta_out),
            "willie_antenna": willie_antenna, "convention": convention,
            "gain_bob": gain_bob, "gain_willie": gain_willie,
        })


def select_reflection_point(candidates, bob_position):
    """Pick the reflection point for the covert NLOS link.

    candidates are (position, surface, theta_in) tuples.  Nearest to the
    receiver wins; ties break toward the largest incidence angle, then
    input order.
    """
    cands = list(candidates)
    if not cands:
        raise ParameterError("no reflection-point candidates")
    bx, by = bob_position

    def key(item):
        (px, py), _surface, theta_in = item
        return (math.hypot(px - bx, py - by), -theta_in)

    return min(cands, key=key)
