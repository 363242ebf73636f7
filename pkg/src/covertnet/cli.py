"""Command-line interface: deterministic experiment runner.

Exit codes: 0 success, 2 usage error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import __version__
from .errors import CovertnetError, UsageError
from .results import ResultTable


def _add_common(parser, trials_default=None):
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--out", type=str, default=None,
                        help="directory for CSV output (default: print only)")
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--config", type=str, default=None)
    if trials_default is not None:
        parser.add_argument("--trials", type=int, default=trials_default)


def _parse_floats(text: str):
    return [float(tok) for tok in text.replace(",", " ").split()]


def _emit(table: ResultTable, out_dir, name: str) -> None:
    print(table.pretty())
    if out_dir:
        path = table.write_csv(Path(out_dir) / f"{name}.csv")
        print(f"wrote {path}")


def _load_awgn(args):
    from .awgn import AwgnScenario
    from .config import parse_config
    if args.config:
        cfg = parse_config(args.config)
        if cfg.awgn is None:
            raise UsageError(f"{args.config} has no [awgn] section")
        return cfg.awgn
    return AwgnScenario(
        power=args.power, intensity=args.intensity, d_aw=args.d_aw,
        n=args.n, noise_w=args.noise_w, per_sample_field=False,
        interferer_power=args.interferer_power)


def _cmd_fig(args) -> int:
    from .figures import FIGURES, run_figure
    ids = sorted(FIGURES) if args.id == "all" else [args.id]
    out = args.out or "."
    for fig_id in ids:
        table, paths = run_figure(fig_id, seed=args.seed, out_dir=out,
                                  workers=args.workers, svg=not args.no_svg)
        print(f"fig{fig_id}: {len(table.rows)} rows -> "
              + ", ".join(str(p) for p in paths))
    return 0


def _cmd_awgn_bound(args) -> int:
    from .awgn import (covert_distance, power_condition_threshold,
                       willie_error_lower_bound)
    table = ResultTable(
        columns=["d_aw", "error_lower_bound"],
        meta={"tool": "covertnet", "version": __version__, "command": "awgn bound",
              "n": args.n, "alpha": args.alpha, "lambda": args.intensity,
              "epsilon": args.epsilon})
    for d in _parse_floats(args.d_aw):
        table.add_row(d, willie_error_lower_bound(args.n, d, args.alpha,
                                                  args.intensity))
    d_cov = covert_distance(args.n, args.alpha, args.intensity,
                            epsilon=args.epsilon)
    table.meta["covert_distance"] = d_cov
    # reliability-side power condition, reported but never enforced
    table.meta["decoding_power_condition_w"] = power_condition_threshold(
        1.0, args.intensity)
    _emit(table, args.out, "awgn_bound")
    print(f"covert distance at epsilon={args.epsilon}: {d_cov:.6g} m")
    return 0


def _cmd_awgn_detect(args) -> int:
    from .awgn import willie_error_lower_bound, willie_error_empirical
    from .streams import derive_stream
    s = _load_awgn(args)
    outcome = willie_error_empirical(s, args.trials,
                                     rng=derive_stream(args.seed, 0))
    bound = willie_error_lower_bound(s.n, s.d_aw, s.alpha, s.intensity)
    table = ResultTable(
        columns=["p_fa", "p_md", "p_e", "threshold", "analytic_lower_bound"],
        meta={"tool": "covertnet", "version": __version__,
              "command": "awgn detect", "seed": args.seed, "trials": args.trials,
              "power": s.power, "lambda": s.intensity, "d_aw": s.d_aw, "n": s.n})
    table.add_row(outcome.p_fa, outcome.p_md, outcome.p_e, outcome.threshold,
                  bound)
    _emit(table, args.out, "awgn_detect")
    return 0


def _cmd_awgn_throughput(args) -> int:
    from .awgn import spatial_throughput, throughput_crossover
    table = ResultTable(
        columns=["n", "jammer", "interference"],
        meta={"tool": "covertnet", "version": __version__,
              "command": "awgn throughput", "lambda": args.intensity,
              "xi": args.xi, "d_ab": args.d_ab, "alpha": args.alpha, "c": args.c})
    tau_i = spatial_throughput("interference", args.intensity, args.xi,
                               args.d_ab, args.alpha)
    for n in _parse_floats(args.n):
        tau_j = spatial_throughput("jammer", args.intensity, args.xi, args.d_ab,
                                   args.alpha, n=n, c=args.c)
        table.add_row(n, tau_j, tau_i)
    table.meta["crossover_n"] = throughput_crossover(args.intensity, args.xi,
                                                     args.d_ab, args.alpha, args.c)
    _emit(table, args.out, "awgn_throughput")
    return 0


def _thz_scenario(args):
    from .config import parse_config
    from .thz import ThzScenario
    if args.config:
        cfg = parse_config(args.config)
        if cfg.thz is None:
            raise UsageError(f"{args.config} has no [thz] section")
        return cfg
    from .config import ExperimentConfig
    from .scattering import ScatterGeometry, ScatterSurface
    cfg = ExperimentConfig(kind="thz")
    cfg.thz = ThzScenario(frequency=args.frequency,
                          phi=math.radians(args.phi_deg),
                          intensity=args.intensity)
    cfg.surface = ScatterSurface(args.sigma_h, 1.8e-3, 4e-4)
    cfg.geom_bob = ScatterGeometry.from_degrees(args.theta1, args.theta1)
    cfg.geom_willie = ScatterGeometry.from_degrees(args.theta1, args.theta_w)
    return cfg


def _cmd_thz_interference(args) -> int:
    from .streams import derive_stream
    from .thz import sample_thz_interference_powers, thz_interference_stats
    cfg = _thz_scenario(args)
    s = cfg.thz
    stats = thz_interference_stats(s)
    table = ResultTable(
        columns=["quantity", "closed_form", "monte_carlo"],
        meta={"tool": "covertnet", "version": __version__,
              "command": "thz interference", "seed": args.seed,
              "trials": args.trials, "frequency": s.frequency,
              "lambda": s.intensity, "phi_rad": s.phi,
              "blocker_radius": s.blocker_radius, "horizon": s.horizon,
              "absorption": s.absorption})
    if args.trials > 0:
        mc = sample_thz_interference_powers(s, args.trials,
                                            derive_stream(args.seed, 0))
        table.add_row("mean", stats.mean, float(mc.mean()))
        table.add_row("variance", stats.variance, float(mc.var(ddof=1)))
    else:
        table.add_row("mean", stats.mean, float("nan"))
        table.add_row("variance", stats.variance, float("nan"))
    _emit(table, args.out, "thz_interference")
    return 0


def _cmd_thz_secrecy(args) -> int:
    from .scattering import evaluate_scenario, normalized_secrecy_capacity
    from .scattering import ScatterGeometry
    cfg = _thz_scenario(args)
    sweep = cfg.sweep_values if cfg.sweep_name == "theta_w" else None
    if getattr(args, "theta_w_sweep", None):
        sweep = _parse_floats(args.theta_w_sweep)
    if not sweep:
        sweep = [math.degrees(cfg.geom_willie.theta_out)]
    table = ResultTable(
        columns=["theta_w_deg", "sinr_bob", "sinr_willie", "cs", "cs_bounded"],
        meta={"tool": "covertnet", "version": __version__,
              "command": "thz secrecy", "frequency": cfg.thz.frequency,
              "lambda": cfg.thz.intensity, "sigma_h": cfg.surface.height_std,
              "theta1_deg": math.degrees(cfg.geom_bob.theta_in),
              "willie_antenna": cfg.willie_antenna})
    t1 = math.degrees(cfg.geom_bob.theta_in)
    for tw in sweep:
        gw = ScatterGeometry.from_degrees(t1, tw)
        rep = evaluate_scenario(cfg.thz, cfg.surface, cfg.geom_bob, gw,
                                cfg.willie_antenna)
        table.add_row(tw, rep.sinr_bob, rep.sinr_willie, rep.secrecy,
                      normalized_secrecy_capacity(rep.sinr_bob, rep.sinr_willie,
                                                  "bounded"))
    _emit(table, args.out, "thz_secrecy")
    return 0


def _cmd_selftest(args) -> int:
    from .selftest import run_selftest
    table = run_selftest(seed=args.seed, workers=args.workers)
    _emit(table, args.out, "selftest")
    failures = [r for r in table.rows if r[-1] != "pass"]
    if failures:
        print(f"{len(failures)} check(s) FAILED", file=sys.stderr)
        return 3
    print(f"all {len(table.rows)} checks passed")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="covertnet",
        description="Covertness, reliability and secrecy analysis in Poisson "
                    "interference fields: closed forms cross-validated against "
                    "deterministic Monte Carlo.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_fig = sub.add_parser("fig", help="run a built-in experiment preset")
    p_fig.add_argument("id", help="figure id (3..14) or 'all'")
    p_fig.add_argument("--no-svg", action="store_true")
    _add_common(p_fig)
    p_fig.set_defaults(fn=_cmd_fig)

    p_awgn = sub.add_parser("awgn", help="AWGN-network covertness analyses")
    awgn_sub = p_awgn.add_subparsers(dest="subcommand", required=True)

    p_bound = awgn_sub.add_parser("bound", help="detection-error lower bound")
    p_bound.add_argument("--n", type=int, default=500)
    p_bound.add_argument("--d-aw", type=str, default="1,2,4")
    p_bound.add_argument("--alpha", type=float, default=4.0)
    p_bound.add_argument("--lambda", dest="intensity", type=float, default=1.0)
    p_bound.add_argument("--epsilon", type=float, default=0.05)
    _add_common(p_bound)
    p_bound.set_defaults(fn=_cmd_awgn_bound)

    p_detect = awgn_sub.add_parser("detect", help="empirical radiometer detection")
    p_detect.add_argument("--power", type=float, default=10.0)
    p_detect.add_argument("--interferer-power", type=float, default=1.0)
    p_detect.add_argument("--lambda", dest="intensity", type=float, default=1.0)
    p_detect.add_argument("--d-aw", type=float, default=1.0)
    p_detect.add_argument("--n", type=int, default=500)
    p_detect.add_argument("--noise-w", type=float, default=1.0)
    _add_common(p_detect, trials_default=1000)
    p_detect.set_defaults(fn=_cmd_awgn_detect)

    p_tp = awgn_sub.add_parser("throughput", help="spatial-throughput comparison")
    p_tp.add_argument("--lambda", dest="intensity", type=float, default=0.1)
    p_tp.add_argument("--xi", type=float, default=1.0)
    p_tp.add_argument("--d-ab", type=float, default=1.0)
    p_tp.add_argument("--alpha", type=float, default=4.0)
    p_tp.add_argument("--c", type=float, default=1.0)
    p_tp.add_argument("--n", type=str, default="100,10000,1000000")
    _add_common(p_tp)
    p_tp.set_defaults(fn=_cmd_awgn_throughput)

    p_thz = sub.add_parser("thz", help="THz-band interference and secrecy")
    thz_sub = p_thz.add_subparsers(dest="subcommand", required=True)

    p_int = thz_sub.add_parser("interference", help="aggregate interference moments")
    p_int.add_argument("--frequency", type=float, default=500e9)
    p_int.add_argument("--phi-deg", type=float, default=10.0)
    p_int.add_argument("--lambda", dest="intensity", type=float, default=0.01)
    p_int.add_argument("--sigma-h", type=float, default=5.8e-5)
    p_int.add_argument("--theta1", type=float, default=60.0)
    p_int.add_argument("--theta-w", type=float, default=55.0)
    _add_common(p_int, trials_default=0)
    p_int.set_defaults(fn=_cmd_thz_interference)

    p_sec = thz_sub.add_parser("secrecy", help="normalized secrecy capacity sweep")
    p_sec.add_argument("--frequency", type=float, default=500e9)
    p_sec.add_argument("--phi-deg", type=float, default=10.0)
    p_sec.add_argument("--lambda", dest="intensity", type=float, default=0.01)
    p_sec.add_argument("--sigma-h", type=float, default=5.8e-5)
    p_sec.add_argument("--theta1", type=float, default=60.0)
    p_sec.add_argument("--theta-w", type=float, default=55.0)
    p_sec.add_argument("--theta-w-sweep", type=str, default=None,
                       help="comma list of warden angles in degrees")
    _add_common(p_sec)
    p_sec.set_defaults(fn=_cmd_thz_secrecy)

    p_self = sub.add_parser("selftest", help="oracle cross-checks")
    _add_common(p_self)
    p_self.set_defaults(fn=_cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CovertnetError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
