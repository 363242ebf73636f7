"""Aggregate-interference machinery for the AWGN analysis.

Monte Carlo realizations of the interference power, its Campbell-theorem
moments under the guard-zone law, the Taylor approximation of the mean
reciprocal, and the power-law tail bound with its dominating distribution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DivergenceError, DomainError, ParameterError, SingularityError
from .geometry import PathLossLaw, PointField, sample_fading_power

_DIM_CONSTANTS = {1: 2.0, 2: math.pi, 3: 4.0 * math.pi / 3.0}

# one Monte Carlo chunk; fixed so the draw sequence never depends on workers
_CHUNK_POINTS = 4_000_000

_MEAN_FADING = 1.0          # E[psi],   unit-mean exponential
_MEAN_FADING_SQ = 2.0       # E[psi^2], fixed by the fading model


@dataclass(frozen=True)
class ShotNoiseParams:
    """Parameters of the guard-zone shot noise in d dimensions."""

    intensity: float            # points per unit d-volume
    alpha: float                # path-loss exponent
    dim: int = 2                # spatial dimension
    guard: float = 1.0          # exclusion radius, m
    power: float = 1.0          # per-point transmit power, W

    def __post_init__(self):
        if self.dim not in _DIM_CONSTANTS:
            raise ParameterError("dimension must be 1, 2 or 3")
        if self.intensity < 0.0:
            raise ParameterError("intensity must be >= 0")
        if self.guard <= 0.0:
            raise ParameterError("guard radius must be > 0 for moment formulas")
        if self.power < 0.0:
            raise ParameterError("power must be >= 0")

    @property
    def dim_constant(self) -> float:
        """Unit-ball volume factor c_d: 2, pi, or 4*pi/3."""
        return _DIM_CONSTANTS[self.dim]


@dataclass(frozen=True)
class TailBoundParams:
    """Constants of the power-law CCDF upper bound on the interference."""

    delta: float                # 2/alpha
    kappa: float                # m^2
    eta: float                  # 2*kappa/(2 - delta)
    beta: float                 # reference received power, W

    def __post_init__(self):
        if not (0.0 < self.delta < 1.0):
            raise ParameterError("delta must lie in (0, 1)")
        if self.kappa <= 0.0 or self.eta <= 0.0 or self.beta <= 0.0:
            raise ParameterError("kappa, eta, beta must be > 0")

    @property
    def support_floor(self) -> float:
        """Smallest x where the normalized bound density is defined (lambda=1)."""
        return self.beta


def realize_interference_power(field: PointField, law: PathLossLaw, receiver=(0.0, 0.0),
                               rng: np.random.Generator | None = None,
                               fading: str = "per_link") -> float:
    """One realization of sum_k P_k * l(d_k) * psi_k at the receiver.

    fading="per_link" redraws unit-mean exponential marks for this receiver
    (independent links); "shared" reuses the field's own marks so one field
    realization can be replayed for several receivers.
    """
    if fading not in ("per_link", "shared"):
        raise ParameterError(f"unknown fading mode {fading!r}")
    if len(field) == 0:
        return 0.0
    d = field.distances_to(receiver)
    if law.kind == "unbounded" and np.any(d == 0.0):
        raise SingularityError("interferer located exactly at the receiver")
    gain = law.gain(d)
    if fading == "per_link":
        if rng is None:
            raise ParameterError("per-link fading requires a random generator")
        psi = sample_fading_power(rng, len(field))
    else:
        psi = field.fading
    return float(np.sum(field.power * gain * psi))


def truncation_radius(alpha: float, guard: float, bias: float = 1e-3) -> float:
    """Arena radius making the ignored tail mean < `bias` of the total.

    The mean beyond R under the truncated law scales as (guard/R)^(alpha-2).
    """
    if alpha <= 2.0:
        raise DivergenceError("planar mean requires alpha > 2")
    return guard * bias ** (-1.0 / (alpha - 2.0))


def simulate_interference_powers(params: ShotNoiseParams, trials: int,
                                 rng: np.random.Generator,
                                 arena_radius: float | None = None) -> np.ndarray:
    """Batched planar Monte Carlo of the guard-zone shot noise.

    Samples PPP radii on a disk of `arena_radius` (default: truncation bias
    1e-3) via inverse-CDF, applies the truncated law, and sums per trial.
    Chunked to bounded memory; the draw sequence depends only on `rng`.
    """
    if params.dim != 2:
        raise ParameterError("the Monte Carlo sampler is planar (dim = 2)")
    radius = truncation_radius(params.alpha, params.guard) if arena_radius is None \
        else float(arena_radius)
    if radius <= params.guard:
        raise ParameterError("arena radius must exceed the guard radius")
    per_trial = params.intensity * math.pi * radius * radius
    out = np.empty(trials)
    chunk_trials = max(1, int(_CHUNK_POINTS / max(per_trial, 1.0)))
    done = 0
    g2 = params.guard * params.guard
    while done < trials:
        m = min(chunk_trials, trials - done)
        counts = rng.poisson(per_trial, size=m)
        total = int(counts.sum())
        r2 = (radius * radius) * rng.random(total)   # r = R*sqrt(u), squared
        psi = rng.exponential(1.0, total)
        with np.errstate(divide="ignore"):
            if params.alpha == 4.0:
                w = psi / (r2 * r2)
            else:
                w = psi * r2 ** (-params.alpha / 2.0)
        w[r2 < g2] = 0.0
        cs = np.empty(total + 1)
        cs[0] = 0.0
        np.cumsum(w, out=cs[1:])
        ends = np.cumsum(counts)
        out[done:done + m] = params.power * (cs[ends] - cs[ends - counts])
        done += m
    return out


def campbell_mean(params: ShotNoiseParams) -> float:
    """Mean interference power under the guard-zone law (finite for alpha > d)."""
    if params.alpha <= params.dim:
        raise DivergenceError("mean diverges unless alpha > dimension")
    d, cd = params.dim, params.dim_constant
    return (params.intensity * d * cd / (params.alpha - d)
            * _MEAN_FADING * params.power * params.guard ** (d - params.alpha))


def campbell_var(params: ShotNoiseParams) -> float:
    """Variance of the interference power (finite for 2*alpha > d)."""
    if 2.0 * params.alpha <= params.dim:
        raise DivergenceError("variance diverges unless 2*alpha > dimension")
    d, cd = params.dim, params.dim_constant
    return (params.intensity * d * cd / (2.0 * params.alpha - d)
            * _MEAN_FADING_SQ * params.power ** 2
            * params.guard ** (d - 2.0 * params.alpha))


def reciprocal_mean_factor(intensity: float, alpha: float, dim: int = 2) -> float:
    """Density-dependent factor f of E[1/interference] = f / P_t at guard 1.

    f = (1/lambda) * (alpha-d)/(d*c_d) * [1 + 2(alpha-d)^2 / ((2alpha-d)*d*c_d*lambda)]
    Strictly positive and strictly decreasing in the density.
    """
    if intensity <= 0.0:
        raise DivergenceError("the reciprocal-mean expansion requires intensity > 0")
    if dim not in _DIM_CONSTANTS:
        raise ParameterError("dimension must be 1, 2 or 3")
    if alpha <= dim:
        raise DivergenceError("requires alpha > dimension")
    d = float(dim)
    cd = _DIM_CONSTANTS[dim]
    lead = (alpha - d) / (d * cd) / intensity
    bracket = 1.0 + 2.0 * (alpha - d) ** 2 / ((2.0 * alpha - d) * d * cd) / intensity
    return lead * bracket


def reciprocal_mean_taylor(params: ShotNoiseParams) -> float:
    """Second-order Taylor estimate of E[1 / interference power].

    Expansion around the mean: 1/E + Var/E^3, reduced to f(lambda)/P_t.
    Normalized to guard radius 1 (the closed form assumes it).
    """
    if params.guard != 1.0:
        raise ParameterError("the closed form is normalized to guard radius 1")
    return reciprocal_mean_factor(params.intensity, params.alpha, params.dim) / params.power


def tail_bound_params(intensity: float, alpha: float, power: float,
                      d_ab: float, psi_ab: float = 1.0) -> TailBoundParams:
    """Constants of the CCDF upper bound for a link at distance d_ab.

    delta = 2/alpha; kappa = pi^2*delta/sin(pi*delta) * d_ab^2 (unit-mean
    exponential fading); eta = 2*kappa/(2-delta); beta = P*psi*d_ab^-alpha.
    """
    if alpha <= 2.0:
        raise ParameterError("the tail bound requires alpha > 2")
    if intensity < 0.0 or power <= 0.0 or d_ab <= 0.0 or psi_ab <= 0.0:
        raise ParameterError("intensity >= 0 and power, d_ab, psi_ab > 0 required")
    delta = 2.0 / alpha
    kappa = math.pi ** 2 * delta / math.sin(math.pi * delta) * d_ab ** 2
    eta = 2.0 * kappa / (2.0 - delta)
    beta = power * psi_ab * d_ab ** (-alpha)
    return TailBoundParams(delta=delta, kappa=kappa, eta=eta, beta=beta)


def tail_support_floor(t: TailBoundParams, intensity: float) -> float:
    """Left edge of the normalized dominating density: (eta*lambda)^(1/delta)*beta."""
    if intensity <= 0.0:
        raise ParameterError("intensity must be > 0")
    return (t.eta * intensity) ** (1.0 / t.delta) * t.beta


def interference_ccdf_upper(x, t: TailBoundParams, intensity: float):
    """Leading-order CCDF upper bound min(1, eta*lambda*beta^delta*x^-delta).

    Defined on x >= (eta*lambda)^(1/delta) * beta, where it equals 1; the
    O(x^-2delta) remainder of the underlying expansion is dropped.
    """
    floor = tail_support_floor(t, intensity)
    arr = np.asarray(x, dtype=float)
    if np.any(arr < floor * (1.0 - 1e-12)):
        raise DomainError(f"x below the bound's support floor {floor:.6g}")
    val = np.minimum(1.0, t.eta * intensity * t.beta ** t.delta * arr ** (-t.delta))
    if np.ndim(x) == 0:
        return float(val)
    return val


def sample_dominating_tail(t: TailBoundParams, intensity: float,
                           rng: np.random.Generator, size=None):
    """Draw from the Pareto-form density that dominates the interference.

    Inverse CDF: x = x_min * u^(-1/delta) with u uniform on (0, 1].
    """
    floor = tail_support_floor(t, intensity)
    u = 1.0 - rng.random(size)   # (0, 1]
    val = floor * u ** (-1.0 / t.delta)
    if size is None:
        return float(val)
    return val
