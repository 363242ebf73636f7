"""Covert-communication analysis in Poisson interference fields.

Closed-form covertness/reliability/secrecy expressions for noisy AWGN
networks and THz-band scattering links, cross-validated against
deterministic seeded Monte Carlo, with a CLI that reproduces the full
evaluation figure suite.
"""

__version__ = "0.1.0"

from .errors import (ConfigError, CovertnetError, DivergenceError, DomainError,
                     NumericError, ParameterError, SingularityError, UsageError)
from .geometry import (PathLossLaw, PointField, Region, nearest_interferer_cdf,
                       path_gain, sample_fading_power, sample_ppp)
from .shot_noise import (ShotNoiseParams, TailBoundParams, campbell_mean,
                         campbell_var, interference_ccdf_upper,
                         realize_interference_power, reciprocal_mean_factor,
                         reciprocal_mean_taylor, sample_dominating_tail,
                         simulate_interference_powers, tail_bound_params,
                         tail_support_floor)
from .awgn import (AwgnScenario, DetectionOutcome, DetectorTrace,
                   bob_error_upper_bound, covert_bits, covert_distance,
                   iqr_dispersion_sweep, power_condition_threshold,
                   simulate_radiometer, spatial_throughput,
                   throughput_crossover, willie_error_empirical,
                   willie_error_lower_bound)
from .thz import (ThzInterferenceStats, ThzScenario, antenna_gain,
                  blocking_prob, coverage_prob, exp_integral_ei,
                  johnson_nyquist_psd, realize_thz_interference,
                  received_power, thz_interference_stats)
from .scattering import (ScatterGeometry, ScatterSurface, SecrecyReport,
                         evaluate_scenario, kirchhoff_gain, mean_sinr_taylor,
                         normalized_secrecy_capacity, select_reflection_point)
from .streams import derive_stream
from .config import ExperimentConfig, parse_config
from .results import ResultTable
from .figures import FIGURES, run_figure
from .selftest import run_selftest
