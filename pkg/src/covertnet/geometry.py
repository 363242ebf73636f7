"""Spatial point processes, fading marks, and path-loss laws.

This is the randomness substrate for every Monte Carlo experiment: Poisson
fields with per-point fading/power marks, the three path-loss laws, and the
nearest-interferer distance distribution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError, SingularityError


@dataclass(frozen=True)
class Region:
    """Simulation arena: a disk or an axis-aligned square."""

    shape: str                         # "disk" or "square"
    size: float                        # radius (disk) or side length (square), m
    center: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        if self.shape not in ("disk", "square"):
            raise ParameterError(f"unknown region shape {self.shape!r}")
        if not self.size > 0.0:
            raise ParameterError("region size must be positive")

    @classmethod
    def disk(cls, radius: float, center=(0.0, 0.0)) -> "Region":
        return cls("disk", float(radius), tuple(center))

    @classmethod
    def square(cls, side: float, center=(0.0, 0.0)) -> "Region":
        return cls("square", float(side), tuple(center))

    def area(self) -> float:
        if self.shape == "disk":
            return math.pi * self.size ** 2
        return self.size ** 2

    def sample_points(self, count: int, rng: np.random.Generator) -> np.ndarray:
        """Uniform points in the region, shape (count, 2).

        Disk points use inverse-CDF radii (r = R * sqrt(u)) rather than
        rejection, so the draw count per point is fixed.
        """
        cx, cy = self.center
        if self.shape == "disk":
            r = self.size * np.sqrt(rng.random(count))
            theta = rng.uniform(0.0, 2.0 * np.pi, count)
            return np.column_stack((cx + r * np.cos(theta), cy + r * np.sin(theta)))
        half = self.size / 2.0
        x = rng.uniform(cx - half, cx + half, count)
        y = rng.uniform(cy - half, cy + half, count)
        return np.column_stack((x, y))


@dataclass(frozen=True)
class PathLossLaw:
    """Distance-to-gain map l(r).

    unbounded: r^-alpha (singular at the origin)
    truncated: r^-alpha for r >= guard, else 0 (guard-zone model)
    bounded:   min(1, r^-alpha)
    """

    kind: str
    alpha: float = 4.0
    guard: float = 0.0

    def __post_init__(self):
        if self.kind not in ("unbounded", "truncated", "bounded"):
            raise ParameterError(f"unknown path-loss law {self.kind!r}")
        if self.alpha < 2.0:
            raise ParameterError("path-loss exponent must be >= 2")
        if self.guard < 0.0:
            raise ParameterError("guard radius must be >= 0")

    @classmethod
    def unbounded(cls, alpha: float) -> "PathLossLaw":
        return cls("unbounded", float(alpha))

    @classmethod
    def truncated(cls, alpha: float, guard: float) -> "PathLossLaw":
        return cls("truncated", float(alpha), float(guard))

    @classmethod
    def bounded(cls, alpha: float) -> "PathLossLaw":
        return cls("bounded", float(alpha))

    def gain(self, r):
        arr = np.asarray(r, dtype=float)
        if np.any(arr < 0.0):
            raise ParameterError("distance must be >= 0")
        if self.kind == "unbounded":
            if np.any(arr == 0.0):
                raise SingularityError("unbounded path loss is singular at r = 0")
            out = arr ** (-self.alpha)
        elif self.kind == "truncated":
            out = np.zeros_like(arr)
            mask = arr >= self.guard
            # guard = 0 degenerates to the unbounded law; guard against 0^-a
            valid = mask & (arr > 0.0)
            out[valid] = arr[valid] ** (-self.alpha)
            if self.guard == 0.0 and np.any(mask & (arr == 0.0)):
                raise SingularityError("truncated law with zero guard is singular at r = 0")
        else:  # bounded
            out = np.ones_like(arr)
            far = arr > 1.0
            out[far] = arr[far] ** (-self.alpha)
        if np.ndim(r) == 0:
            return float(out)
        return out


def path_gain(law: PathLossLaw, r):
    """Evaluate the path-loss law at distance r (scalar or array)."""
    return law.gain(r)


@dataclass
class PointField:
    """One realization of a marked point process.

    xy     : (N, 2) point coordinates, all inside `region`
    fading : (N,) nonnegative per-point fading powers (unit mean)
    power  : (N,) per-point transmit powers, W
    """

    xy: np.ndarray
    fading: np.ndarray
    power: np.ndarray
    region: Region = field(default_factory=lambda: Region.square(100.0))

    def __post_init__(self):
        self.xy = np.asarray(self.xy, dtype=float).reshape(-1, 2)
        n = len(self.xy)
        self.fading = np.broadcast_to(np.asarray(self.fading, dtype=float), (n,)).copy()
        self.power = np.broadcast_to(np.asarray(self.power, dtype=float), (n,)).copy()
        if np.any(self.fading < 0.0) or np.any(self.power < 0.0):
            raise ParameterError("marks must be nonnegative")

    def __len__(self) -> int:
        return len(self.xy)

    def distances_to(self, point) -> np.ndarray:
        px, py = point
        return np.hypot(self.xy[:, 0] - px, self.xy[:, 1] - py)


def sample_fading_power(rng: np.random.Generator, size=None):
    """Unit-mean exponential fading power (squared Rayleigh amplitude)."""
    if size is None:
        return float(rng.exponential(1.0))
    return rng.exponential(1.0, size)


def sample_ppp(region: Region, intensity: float, rng: np.random.Generator,
               power: float = 1.0, fading: str = "rayleigh") -> PointField:
    """Sample a Poisson point process with marks attached at sampling time.

    fading="rayleigh" draws unit-mean exponential powers, "constant" pins
    every mark to 1 (static channel mode).
    """
    if intensity < 0.0:
        raise ParameterError("intensity must be >= 0")
    if fading not in ("rayleigh", "constant"):
        raise ParameterError(f"unknown fading mode {fading!r}")
    count = int(rng.poisson(intensity * region.area()))
    xy = region.sample_points(count, rng)
    if fading == "rayleigh":
        marks = sample_fading_power(rng, count)
    else:
        marks = np.ones(count)
    return PointField(xy=xy, fading=marks, power=np.full(count, float(power)),
                      region=region)


def nearest_interferer_cdf(intensity: float, distance: float) -> float:
    """P{nearest point of a planar PPP is closer than `distance`}."""
    if intensity < 0.0 or distance < 0.0:
        raise ParameterError("intensity and distance must be >= 0")
    return float(-np.expm1(-math.pi * intensity * distance * distance))
