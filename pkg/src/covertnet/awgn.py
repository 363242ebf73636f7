"""Detection-side covertness analysis for noisy AWGN networks.

The warden's detection-error lower bound and the covert distance it
implies, radiometer simulation under silent / transmitting / alternating
schedules, the receiver's decoding-error bound and covert bit count, and
the spatial-throughput comparison between hiding in interference and
hiding behind a dedicated jammer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericError, ParameterError
from .geometry import PathLossLaw, Region, path_gain, sample_ppp
from .shot_noise import realize_interference_power, reciprocal_mean_factor
from .streams import derive_stream, run_indexed

_CHUNK_POINTS = 4_000_000

MODES = ("silent", "transmitting", "alternating")


def _power_law(r2: np.ndarray, alpha: float) -> np.ndarray:
    """r^-alpha from squared distances; fast paths for the common exponents."""
    with np.errstate(divide="ignore"):
        if alpha == 4.0:
            out = r2 * r2
            return np.reciprocal(out, out=out)
        if alpha == 2.0:
            return np.reciprocal(r2)
        return r2 ** (-alpha / 2.0)


@dataclass(frozen=True)
class AwgnScenario:
    """Full parameter record for the covertness experiments.

    power is the covert transmitter's power; interferer_power defaults to
    the same value (a network of identical nodes). per_sample_field redraws
    the interferer field at every channel use instead of once per trace.
    """

    power: float = 1.0                  # Alice's transmit power, W
    alpha: float = 4.0
    intensity: float = 1.0              # interferer density, per m^2
    d_aw: float = 1.0                   # transmitter-to-warden distance, m
    d_ab: float = 1.0                   # transmitter-to-receiver distance, m
    noise_w: float = 1.0                # warden background noise power, W
    noise_b: float = 1.0                # receiver background noise power, W
    n: int = 500                        # channel uses per trace
    tx_prob: float = 0.5                # alternating-mode transmission probability
    law: PathLossLaw = PathLossLaw.bounded(4.0)
    arena: Region = Region.square(100.0)
    interferer_power: float | None = None
    per_sample_field: bool = False

    def __post_init__(self):
        if min(self.power, self.intensity, self.noise_w, self.noise_b) < 0.0:
            raise ParameterError("powers, density and noise floors must be >= 0")
        if not (0.0 <= self.tx_prob <= 1.0):
            raise ParameterError("transmission probability must lie in [0, 1]")
        if self.n < 1:
            raise ParameterError("need at least one channel use")
        if self.d_aw <= 0.0 or self.d_ab <= 0.0:
            raise ParameterError("distances must be > 0")
        if self.interferer_power is not None and self.interferer_power < 0.0:
            raise ParameterError("interferer power must be >= 0")

    @property
    def network_power(self) -> float:
        return self.power if self.interferer_power is None else self.interferer_power


@dataclass
class DetectorTrace:
    """Per-sample energies and the radiometer statistic of one trace."""

    energies: np.ndarray    # [y_i^2], W
    statistic: float        # T(y), mean energy
    mode: str

    def __post_init__(self):
        self.energies = np.asarray(self.energies, dtype=float)
        if np.any(self.energies < 0.0):
            raise ParameterError("energies must be nonnegative")


@dataclass(frozen=True)
class DetectionOutcome:
    """Empirical false-alarm, missed-detection, and mean error probabilities."""

    p_fa: float
    p_md: float
    threshold: float

    @property
    def p_e(self) -> float:
        return 0.5 * (self.p_fa + self.p_md)


# --------------------------------------------------------------------------
# analytic side

def willie_error_lower_bound(n: int, d_aw: float, alpha: float, intensity: float,
                             dim: int = 2, guard: float = 1.0) -> float:
    """Lower bound on the warden's mean detection error probability.

    max(0, 1/2 - sqrt(n/8) * f(lambda) / (2 * d_aw^alpha)).  The transmit
    power cancels, so the bound carries no power argument at all.
    """
    if guard != 1.0:
        raise ParameterError("the closed form is normalized to guard radius 1")
    if n < 1 or d_aw <= 0.0:
        raise ParameterError("need n >= 1 and d_aw > 0")
    f = reciprocal_mean_factor(intensity, alpha, dim)
    return max(0.0, 0.5 - math.sqrt(n / 8.0) * f / (2.0 * d_aw ** alpha))


def covert_distance(n: int, alpha: float, intensity: float, dim: int = 2,
                    epsilon: float = 0.05) -> float:
    """Distance beyond which the warden's error bound exceeds 1/2 - epsilon.

    [f(lambda) / (4*sqrt(2)*epsilon)]^(1/alpha) * n^(1/(2*alpha)); grows
    with the trace length and shrinks with density and epsilon.
    """
    if epsilon <= 0.0:
        raise ParameterError("epsilon must be > 0")
    f = reciprocal_mean_factor(intensity, alpha, dim)
    return (f / (4.0 * math.sqrt(2.0) * epsilon)) ** (1.0 / alpha) \
        * n ** (1.0 / (2.0 * alpha))


def bob_error_upper_bound(n: int, rate: float, intensity: float,
                          alpha: float = 4.0) -> float:
    """Upper bound on the receiver's mean decoding error, clamped to [0, 1].

    2^(nR) * pi^(7/2) * lambda / (3 * sqrt(n)); the closed form exists for
    path-loss exponent 4 only, other exponents are rejected.
    """
    if alpha != 4.0:
        raise ParameterError("closed-form decoding bound requires alpha = 4")
    if n < 1 or rate < 0.0 or intensity < 0.0:
        raise ParameterError("need n >= 1, rate >= 0, intensity >= 0")
    # 2^(nR) overflows quickly; work in log2
    log2_bound = n * rate + math.log2(math.pi ** 3.5 * intensity / (3.0 * math.sqrt(n))) \
        if intensity > 0.0 else -math.inf
    if log2_bound >= 0.0:
        return 1.0
    return max(0.0, 2.0 ** log2_bound)


def covert_bits(n: int, intensity: float, epsilon: float, alpha: float = 4.0) -> float:
    """Bits deliverable with decoding error <= epsilon in n channel uses.

    log2(3 * epsilon * sqrt(n) / (pi^(7/2) * lambda)), clamped at 0; grows
    by exactly one bit when n quadruples and decreases with density.
    """
    if alpha != 4.0:
        raise ParameterError("closed-form covert bit count requires alpha = 4")
    if n < 1 or epsilon <= 0.0 or intensity <= 0.0:
        raise ParameterError("need n >= 1, epsilon > 0, intensity > 0")
    return max(0.0, math.log2(3.0 * epsilon * math.sqrt(n) / (math.pi ** 3.5 * intensity)))


def power_condition_threshold(noise_b: float, intensity: float,
                              psi_ab: float = 1.0) -> float:
    """Transmit power above which the decoding-bound simplification holds.

    9 * noise / (4 * pi^4 * lambda^2 * psi).  Reported for diagnostics only;
    covertness itself is power-free, so nothing enforces it.
    """
    if noise_b < 0.0 or intensity <= 0.0 or psi_ab <= 0.0:
        raise ParameterError("need noise >= 0, intensity > 0, psi > 0")
    return 9.0 * noise_b / (4.0 * math.pi ** 4 * intensity ** 2 * psi_ab)


def spatial_throughput(scheme: str, intensity: float, xi: float, d_ab: float,
                       alpha: float, n: int | None = None,
                       c: float | None = None) -> float:
    """Expected density of successful transmissions per m^2.

    scheme="jammer": lambda * exp(-d^alpha * xi * sqrt(n) / (c * lambda^(alpha/2)))
    (power shrinks with the codeword length, so it decays to zero in n).
    scheme="interference": lambda * exp(-pi*lambda*xi^delta*d^2*Gamma(1+delta)*
    Gamma(1-delta)) with delta=2/alpha, independent of n.

    n may be any positive real so crossover points can be bracketed on the
    continuous relaxation.
    """
    if xi <= 0.0 or intensity < 0.0 or d_ab <= 0.0:
        raise ParameterError("need xi > 0, intensity >= 0, d_ab > 0")
    if scheme == "jammer":
        if c is None or c <= 0.0 or n is None or n <= 0:
            raise ParameterError("jammer scheme requires c > 0 and n > 0")
        expo = d_ab ** alpha * xi * math.sqrt(n) / (c * intensity ** (alpha / 2.0))
        return intensity * math.exp(-expo)
    if scheme == "interference":
        delta = 2.0 / alpha
        expo = (math.pi * intensity * xi ** delta * d_ab ** 2
                * math.gamma(1.0 + delta) * math.gamma(1.0 - delta))
        return intensity * math.exp(-expo)
    raise ParameterError(f"unknown throughput scheme {scheme!r}")


def throughput_crossover(intensity: float, xi: float, d_ab: float, alpha: float,
                         c: float) -> float:
    """Continuous n at which the jammer scheme's throughput falls to the
    interference scheme's constant level."""
    tau_i = spatial_throughput("interference", intensity, xi, d_ab, alpha)
    q = d_ab ** alpha * xi / (c * intensity ** (alpha / 2.0))
    return (math.log(intensity / tau_i) / q) ** 2


# --------------------------------------------------------------------------
# simulation side

def sample_interference_pool(s: AwgnScenario, count: int, rng: np.random.Generator,
                       unit_power: bool = False) -> np.ndarray:
    """Per-sample interference powers over the square arena, receiver centered.

    Draws a fresh Poisson field per sample, batched and chunked.  With
    unit_power=True the per-node power is 1 so callers can rescale.
    """
    if s.arena.shape != "square":
        raise ParameterError("the batched sampler assumes a square arena")
    power = 1.0 if unit_power else s.network_power
    side = s.arena.size
    per = s.intensity * s.arena.area()
    out = np.empty(count)
    chunk = max(1, int(_CHUNK_POINTS / max(per, 1.0)))
    alpha = s.law.alpha
    done = 0
    while done < count:
        m = min(chunk, count - done)
        counts = rng.poisson(per, size=m)
        total = int(counts.sum())
        x = rng.uniform(-side / 2.0, side / 2.0, total)
        y = rng.uniform(-side / 2.0, side / 2.0, total)
        r2 = x * x + y * y
        psi = rng.exponential(1.0, total)
        g = _power_law(r2, alpha)
        if s.law.kind == "bounded":
            np.minimum(g, 1.0, out=g)
        elif s.law.kind == "truncated":
            g[r2 < s.law.guard ** 2] = 0.0
        w = psi * g
        cs = np.empty(total + 1)
        cs[0] = 0.0
        np.cumsum(w, out=cs[1:])
        ends = np.cumsum(counts)
        out[done:done + m] = power * (cs[ends] - cs[ends - counts])
        done += m
    return out


def _trace_field_power(s: AwgnScenario, rng: np.random.Generator) -> float:
    """Interference power of one static field (default trace mode)."""
    field = sample_ppp(s.arena, s.intensity, rng, power=s.network_power)
    return realize_interference_power(field, s.law, receiver=s.arena.center,
                                      fading="shared")


def _mode_indicator(mode: str, bern: np.ndarray) -> np.ndarray:
    if mode == "silent":
        return np.zeros_like(bern)
    if mode == "transmitting":
        return np.ones_like(bern)
    return bern


def simulate_radiometer(s: AwgnScenario, mode: str,
                        rng: np.random.Generator) -> DetectorTrace:
    """One radiometer trace of n per-sample energies and their average.

    Every mode consumes the random stream identically (channel fading, the
    interferer field, detector noise, symbols, slot indicators), so feeding
    two modes generators with the same seed sequence yields paired traces
    differing only in the transmitter's contribution.
    """
    if mode not in MODES:
        raise ParameterError(f"unknown radiometer mode {mode!r}; use one of {MODES}")
    n = s.n
    psi_a = rng.exponential(1.0)
    if s.per_sample_field:
        pool = sample_interference_pool(s, n, rng)
    else:
        pool = np.full(n, _trace_field_power(s, rng))
    g = rng.standard_normal(n)
    z = rng.standard_normal(n)
    sym = rng.standard_normal(n)
    bern = (rng.random(n) < s.tx_prob).astype(float)
    active = _mode_indicator(mode, bern)
    amp = math.sqrt(s.power * path_gain(s.law, s.d_aw) * psi_a)
    y = active * amp * sym + np.sqrt(pool) * g + math.sqrt(s.noise_w) * z
    energies = y * y
    return DetectorTrace(energies=energies, statistic=float(energies.mean()), mode=mode)


def best_threshold(t_h0: np.ndarray, t_h1: np.ndarray,
                   grid_size: int = 256) -> DetectionOutcome:
    """Grid-optimal radiometer threshold over pooled statistics.

    256 candidate thresholds span the pooled range; the one minimizing the
    empirical (P_FA + P_MD)/2 wins, first on the grid on ties.
    """
    t_h0 = np.asarray(t_h0, dtype=float)
    t_h1 = np.asarray(t_h1, dtype=float)
    lo = min(t_h0.min(), t_h1.min())
    hi = max(t_h0.max(), t_h1.max())
    if hi <= lo:
        raise NumericError("degenerate threshold grid: all statistics equal")
    grid = np.linspace(lo, hi, grid_size)
    p_fa = (t_h0[None, :] > grid[:, None]).mean(axis=1)
    p_md = (t_h1[None, :] <= grid[:, None]).mean(axis=1)
    p_e = 0.5 * (p_fa + p_md)
    k = int(np.argmin(p_e))
    return DetectionOutcome(p_fa=float(p_fa[k]), p_md=float(p_md[k]),
                            threshold=float(grid[k]))


def fixed_threshold(t_h0: np.ndarray, t_h1: np.ndarray, gamma: float) -> DetectionOutcome:
    t_h0 = np.asarray(t_h0, dtype=float)
    t_h1 = np.asarray(t_h1, dtype=float)
    return DetectionOutcome(p_fa=float((t_h0 > gamma).mean()),
                            p_md=float((t_h1 <= gamma).mean()),
                            threshold=float(gamma))


def willie_error_empirical(s: AwgnScenario, trials: int, threshold_rule="best",
                           rng: np.random.Generator | None = None,
                           seed: int | None = None) -> DetectionOutcome:
    """Paired silent/transmitting radiometer trials and the resulting
    empirical detection-error probabilities.

    Each trial replays one seed sequence for both hypotheses, so H0 and H1
    share the interference field and detector noise.  threshold_rule is
    "best" (grid optimum) or a numeric threshold.
    """
    if trials < 100:
        raise ParameterError("need at least 100 trials for stable error estimates")
    if rng is None:
        rng = derive_stream(0 if seed is None else seed, 0)
    children = rng.bit_generator.seed_seq.spawn(trials)
    t0 = np.empty(trials)
    t1 = np.empty(trials)
    for i, ss in enumerate(children):
        t0[i] = simulate_radiometer(s, "silent", np.random.default_rng(ss)).statistic
        t1[i] = simulate_radiometer(s, "transmitting", np.random.default_rng(ss)).statistic
    if threshold_rule == "best":
        return best_threshold(t0, t1)
    return fixed_threshold(t0, t1, float(threshold_rule))


# --------------------------------------------------------------------------
# paired sweep engines (figure workloads and the dispersion analysis)

def _paired_run(s: AwgnScenario, n: int, rng: np.random.Generator):
    """Shared randomness for one run: unit-power pool plus detector draws."""
    psi_a = rng.exponential(1.0)
    pool_unit = sample_interference_pool(s, n, rng, unit_power=True)
    g = rng.standard_normal(n)
    z = rng.standard_normal(n)
    sym = rng.standard_normal(n)
    bern = (rng.random(n) < s.tx_prob).astype(float)
    return psi_a, pool_unit, g, z, sym, bern


def _statistic(s: AwgnScenario, shared, mode: str, d_aw: float, alice_power: float,
               network_power: float) -> float:
    psi_a, pool_unit, g, z, sym, bern = shared
    active = _mode_indicator(mode, bern)
    amp = math.sqrt(alice_power * path_gain(s.law, d_aw) * psi_a)
    y = active * amp * sym + np.sqrt(network_power * pool_unit) * g \
        + math.sqrt(s.noise_w) * z
    return float(np.mean(y * y))


def transmit_power_sweep(s: AwgnScenario, powers, runs: int, seed: int,
                         workers: int = 1, stream_tag: int = 6):
    """Radiometer statistics versus transmit power, all nodes at each power.

    Full common random numbers across the power sweep and across modes:
    each run draws one environment and replays it for every (power, mode)
    cell.  Returns {(power, mode): array of per-run statistics}.
    """
    powers = [float(p) for p in powers]

    def one_run(r: int):
        shared = _paired_run(s, s.n, derive_stream(seed, (stream_tag, r)))
        return {(p, m): _statistic(s, shared, m, s.d_aw, p, p)
                for p in powers for m in MODES}

    per_run = run_indexed(one_run, runs, workers)
    return {key: np.array([row[key] for row in per_run])
            for key in ((p, m) for p in powers for m in MODES)}


def distance_sweep(s: AwgnScenario, d_values, runs: int, seed: int,
                   workers: int = 1, stream_tag: int = 7):
    """Radiometer statistics versus warden distance at fixed powers.

    Shares each run's environment across distances and modes (the
    interference does not depend on the transmitter's position).
    """
    d_values = [float(d) for d in d_values]

    def one_run(r: int):
        shared = _paired_run(s, s.n, derive_stream(seed, (stream_tag, r)))
        return {(d, m): _statistic(s, shared, m, d, s.power, s.network_power)
                for d in d_values for m in MODES}

    per_run = run_indexed(one_run, runs, workers)
    return {key: np.array([row[key] for row in per_run])
            for key in ((d, m) for d in d_values for m in MODES)}


def _quartiles(values: np.ndarray) -> dict:
    q1, med, q3 = np.percentile(values, [25.0, 50.0, 75.0])
    return {"q1": float(q1), "median": float(med), "q3": float(q3),
            "iqr": float(q3 - q1), "mean": float(values.mean()),
            "lo": float(values.min()), "hi": float(values.max())}


def iqr_dispersion_sweep(s: AwgnScenario, n_list, runs: int, seed: int,
                         d_aw_values=None, modes=MODES, workers: int = 1):
    """Quartile table of the radiometer statistic per (mode, d_aw, n) cell.

    Cells within one (run, n) share the interferer-power pool (the costly
    part) but draw fresh detector noise, symbols and channel fading, so the
    per-cell quartile estimates stay nearly uncorrelated.  Returns a list
    of row dicts ordered by (n, d_aw, mode).
    """
    if runs < 20:
        raise ParameterError("the dispersion protocol specifies at least 20 runs per cell")
    n_list = [int(n) for n in n_list]
    d_values = [float(d) for d in (d_aw_values if d_aw_values is not None else (s.d_aw,))]

    def one_run(r: int):
        stats = {}
        for ni, n in enumerate(n_list):
            pool_unit = sample_interference_pool(s, n, derive_stream(seed, (8, r, ni)),
                                           unit_power=True)
            pool = s.network_power * pool_unit
            for di, d in enumerate(d_values):
                for mi, mode in enumerate(modes):
                    cell = derive_stream(seed, (8, r, ni, di, mi))
                    psi_a = cell.exponential(1.0)
                    g = cell.standard_normal(n)
                    z = cell.standard_normal(n)
                    sym = cell.standard_normal(n)
                    bern = (cell.random(n) < s.tx_prob).astype(float)
                    active = _mode_indicator(mode, bern)
                    amp = math.sqrt(s.power * path_gain(s.law, d) * psi_a)
                    y = active * amp * sym + np.sqrt(pool) * g \
                        + math.sqrt(s.noise_w) * z
                    stats[(n, d, mode)] = float(np.mean(y * y))
        return stats

    per_run = run_indexed(one_run, runs, workers)
    rows = []
    for n in n_list:
        for d in d_values:
            for mode in modes:
                vals = np.array([pr[(n, d, mode)] for pr in per_run])
                row = {"n": n, "d_aw": d, "mode": mode}
                row.update(_quartiles(vals))
                rows.append(row)
    return rows
