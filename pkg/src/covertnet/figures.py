"""Built-in experiment presets (figure ids 3..14) with pinned manifests.

Every builder embeds its complete parameter set in the table header,
including `assumed_*` entries for values the evaluation protocol leaves
open.  A fixed seed makes every CSV byte-reproducible; worker count only
changes scheduling, never results.
"""

from __future__ import annotations

import math

import numpy as np

from . import __version__
from .awgn import (AwgnScenario, MODES, distance_sweep, iqr_dispersion_sweep,
                   sample_interference_pool, simulate_radiometer,
                   transmit_power_sweep)
from .errors import UsageError
from .geometry import PathLossLaw, Region
from .results import ResultTable
from .scattering import (ScatterGeometry, ScatterSurface, evaluate_scenario,
                         kirchhoff_gain, normalized_secrecy_capacity)
from .streams import derive_stream
from .thz import ThzScenario


def _meta(fig: int, seed: int, description: str, **params) -> dict:
    meta = {"tool": "covertnet", "version": __version__, "figure": fig,
            "seed": seed, "description": description}
    meta.update(params)
    return meta


def _awgn_baseline(**overrides) -> AwgnScenario:
    base = dict(power=1.0, alpha=4.0, intensity=1.0, d_aw=1.0, noise_w=1.0,
                law=PathLossLaw.bounded(4.0), arena=Region.square(100.0))
    base.update(overrides)
    return AwgnScenario(**base)


# --------------------------------------------------------------------------
# scattering path-gain grid

def fig3(seed: int, workers: int = 1) -> ResultTable:
    surface = ScatterSurface(height_std=0.01e-3, corr_length=0.1e-3, area=4e-4)
    freq = 500e9
    table = ResultTable(
        columns=["theta1_deg", "theta2_deg", "gain", "gain_db"],
        meta=_meta(3, seed, "scattering path gain over incidence/scattering angles",
                   frequency_hz=freq, sigma_h_m=surface.height_std,
                   corr_length_m=surface.corr_length, area_m2=surface.area,
                   theta3_deg=0.0, grid_deg="0..89 step 1",
                   note="grazing 90 deg excluded (model invalid at cos(theta1)=0)",
                   plot="heat", plot_x="theta1_deg", plot_y="theta2_deg",
                   plot_value="gain_db"))
    for t1 in range(90):
        for t2 in range(90):
            g = kirchhoff_gain(freq, surface, ScatterGeometry.from_degrees(t1, t2))
            db = 10.0 * math.log10(g) if g > 0 else -400.0
            table.add_row(t1, t2, g, db)
    return table


# --------------------------------------------------------------------------
# noise vs aggregate interference traces

def fig4(seed: int, workers: int = 1) -> ResultTable:
    s = _awgn_baseline(per_sample_field=True, n=1000)
    rng = derive_stream(seed, (4, 0))
    count = 1000
    pool = sample_interference_pool(s, count, rng)
    g = rng.standard_normal(count)
    z = rng.standard_normal(count)
    noise = math.sqrt(s.noise_w) * z
    interference = np.sqrt(pool) * g
    table = ResultTable(
        columns=["index", "noise", "interference"],
        meta=_meta(4, seed, "realizations of background noise and aggregate interference",
                   intensity_per_m2=s.intensity, power_w=s.power, alpha=s.alpha,
                   law="bounded", arena="square 100 m", noise_w_w=s.noise_w,
                   realizations=count, field_mode="fresh field per realization",
                   plot="lines", plot_x="index", plot_y="noise;interference"))
    for i in range(count):
        table.add_row(i, float(noise[i]), float(interference[i]))
    return table


# --------------------------------------------------------------------------
# one 100-sample radiometer trace per schedule

def fig5(seed: int, workers: int = 1) -> ResultTable:
    s = _awgn_baseline(per_sample_field=True, n=100, d_aw=1.0, tx_prob=0.5)
    traces = {m: simulate_radiometer(s, m, derive_stream(seed, (5, 0)))
              for m in MODES}
    table = ResultTable(
        columns=["index", "silent", "transmitting", "alternating"],
        meta=_meta(5, seed, "per-sample energies under the three transmit schedules",
                   intensity_per_m2=s.intensity, power_w=s.power, alpha=s.alpha,
                   d_aw_m=s.d_aw, noise_w_w=s.noise_w, samples=s.n,
                   arena="square 100 m", law="bounded",
                   assumed_alternation_prob=s.tx_prob,
                   statistic_silent=traces["silent"].statistic,
                   statistic_transmitting=traces["transmitting"].statistic,
                   statistic_alternating=traces["alternating"].statistic,
                   plot="lines", plot_x="index",
                   plot_y="silent;transmitting;alternating"))
    for i in range(s.n):
        table.add_row(i, float(traces["silent"].energies[i]),
                      float(traces["transmitting"].energies[i]),
                      float(traces["alternating"].energies[i]))
    return table


# --------------------------------------------------------------------------
# statistic vs transmit power (all nodes swept together)

FIG6_POWERS = (1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0)


def fig6(seed: int, workers: int = 1) -> ResultTable:
    s = _awgn_baseline(per_sample_field=True, n=500, d_aw=1.0, tx_prob=0.5)
    runs = 100
    cells = transmit_power_sweep(s, FIG6_POWERS, runs, seed, workers)
    table = ResultTable(
        columns=["p_t", "mode", "t_mean", "t_q1", "t_median", "t_q3", "t_iqr"],
        meta=_meta(6, seed, "radiometer statistic versus transmit power",
                   intensity_per_m2=s.intensity, d_aw_m=s.d_aw, samples=s.n,
                   runs=runs, noise_w_w=s.noise_w, law="bounded",
                   arena="square 100 m", field_mode="fresh field per sample",
                   node_power="all nodes transmit at the swept power",
                   assumed_power_grid=";".join(str(p) for p in FIG6_POWERS),
                   assumed_alternation_prob=s.tx_prob,
                   plot="lines", plot_x="p_t", plot_y="t_mean", plot_group="mode"))
    for p in FIG6_POWERS:
        for mode in MODES:
            vals = cells[(p, mode)]
            q1, med, q3 = np.percentile(vals, [25.0, 50.0, 75.0])
            table.add_row(p, mode, float(vals.mean()), float(q1), float(med),
                          float(q3), float(q3 - q1))
    return table


# --------------------------------------------------------------------------
# statistic vs warden distance

FIG7_DISTANCES = (0.5, 0.75, 1.0, 1.25, 1.5, 2.0, 3.0, 4.0)


def fig7(seed: int, workers: int = 1) -> ResultTable:
    s = _awgn_baseline(power=10.0, interferer_power=1.0, per_sample_field=True,
                       n=500, tx_prob=0.5)
    runs = 100
    cells = distance_sweep(s, FIG7_DISTANCES, runs, seed, workers)
    table = ResultTable(
        columns=["d_aw", "mode", "t_mean", "t_q1", "t_median", "t_q3", "t_iqr"],
        meta=_meta(7, seed, "radiometer statistic versus warden distance",
                   power_w=s.power, interferer_power_w=s.interferer_power,
                   intensity_per_m2=s.intensity, samples=s.n, runs=runs,
                   alternation_prob=s.tx_prob, noise_w_w=s.noise_w,
                   law="bounded", arena="square 100 m",
                   field_mode="fresh field per sample",
                   assumed_distance_grid=";".join(str(d) for d in FIG7_DISTANCES),
                   plot="lines", plot_x="d_aw", plot_y="t_mean", plot_group="mode"))
    for d in FIG7_DISTANCES:
        for mode in MODES:
            vals = cells[(d, mode)]
            q1, med, q3 = np.percentile(vals, [25.0, 50.0, 75.0])
            table.add_row(d, mode, float(vals.mean()), float(q1), float(med),
                          float(q3), float(q3 - q1))
    return table


# --------------------------------------------------------------------------
# dispersion boxes versus distance and trace length

FIG8_DISTANCES = (0.75, 1.0, 1.25, 1.5, 2.0, 3.0, 4.0)
FIG8_SAMPLES = (1000, 3000)


def fig8(seed: int, workers: int = 1) -> ResultTable:
    s = _awgn_baseline(power=10.0, interferer_power=1.0, per_sample_field=True,
                       tx_prob=0.5)
    runs = 20
    rows = iqr_dispersion_sweep(s, FIG8_SAMPLES, runs, seed,
                                d_aw_values=FIG8_DISTANCES, workers=workers)
    table = ResultTable(
        columns=["n", "d_aw", "mode", "q1", "median", "q3", "iqr",
                 "whisker_lo", "whisker_hi", "mean"],
        meta=_meta(8, seed, "dispersion of the radiometer statistic (quartile boxes)",
                   assumed_power_w=s.power, interferer_power_w=s.interferer_power,
                   intensity_per_m2=s.intensity, runs_per_cell=runs,
                   alternation_prob=s.tx_prob, noise_w_w=s.noise_w, law="bounded",
                   arena="square 100 m", field_mode="fresh field per sample",
                   assumed_distance_grid=";".join(str(d) for d in FIG8_DISTANCES),
                   sample_grid=";".join(str(n) for n in FIG8_SAMPLES),
                   plot="box", plot_x="d_aw", plot_group="mode", plot_panel="n"))
    for row in rows:
        table.add_row(row["n"], row["d_aw"], row["mode"], row["q1"], row["median"],
                      row["q3"], row["iqr"], row["lo"], row["hi"], row["mean"])
    return table


# --------------------------------------------------------------------------
# THz secrecy sweeps

_THZ_COMMON = dict(blocker_radius=0.1, horizon=10.0, absorption=0.01,
                   link_constant=1.0, d_ab=5.0, d_aw=5.0)


def _secrecy_sweep_rows(table: ResultTable, lead: tuple, scenario: ThzScenario,
                        surface: ScatterSurface, theta1: float, theta_b: float,
                        theta_w_values, willie_antenna: str = "directional"):
    gb = ScatterGeometry.from_degrees(theta1, theta_b)
    for tw in theta_w_values:
        gw = ScatterGeometry.from_degrees(theta1, tw)
        rep = evaluate_scenario(scenario, surface, gb, gw, willie_antenna)
        cs_bounded = normalized_secrecy_capacity(rep.sinr_bob, rep.sinr_willie,
                                                 "bounded")
        table.add_row(*lead, float(tw), rep.sinr_bob, rep.sinr_willie,
                      rep.secrecy, cs_bounded)


def _thz_meta(fig: int, seed: int, description: str, **extra) -> dict:
    base = dict(blocker_radius_m=0.1, horizon_m=10.0, absorption_per_m=0.01,
                link_constant=1.0, d_ab_m=5.0, assumed_d_aw_m=5.0,
                phi_deg=10.0, corr_length_m=1.8e-3, area_m2=4e-4,
                secrecy_convention="as printed; cs_bounded column uses log1p")
    base.update(extra)
    return _meta(fig, seed, description, **base)


FIG9_DENSITIES = (0.0, 0.01, 0.05, 0.1)


def fig9(seed: int, workers: int = 1) -> ResultTable:
    surface = ScatterSurface(0.088e-3, 1.8e-3, 4e-4)
    table = ResultTable(
        columns=["intensity", "theta_w_deg", "sinr_bob", "sinr_willie",
                 "cs", "cs_bounded"],
        meta=_thz_meta(9, seed, "secrecy capacity versus warden angle by network density",
                       frequency_hz=500e9, sigma_h_m=surface.height_std,
                       theta1_deg=60.0,
                       assumed_density_grid=";".join(str(v) for v in FIG9_DENSITIES),
                       plot="lines", plot_x="theta_w_deg", plot_y="cs",
                       plot_group="intensity"))
    for lam in FIG9_DENSITIES:
        s = ThzScenario(frequency=500e9, intensity=lam, **_THZ_COMMON)
        _secrecy_sweep_rows(table, (lam,), s, surface, 60.0, 60.0,
                            np.arange(50.0, 60.25, 0.5))
    return table


FIG10_FREQUENCIES = (500e9, 1e12, 2e12)


def fig10(seed: int, workers: int = 1) -> ResultTable:
    surface = ScatterSurface(0.058e-3, 1.8e-3, 4e-4)
    table = ResultTable(
        columns=["frequency", "theta_w_deg", "sinr_bob", "sinr_willie",
                 "cs", "cs_bounded"],
        meta=_thz_meta(10, seed, "secrecy capacity versus warden angle by frequency",
                       intensity_per_m2=0.01, sigma_h_m=surface.height_std,
                       theta1_deg=60.0,
                       assumed_frequency_grid=";".join(f"{f:g}" for f in FIG10_FREQUENCIES),
                       plot="lines", plot_x="theta_w_deg", plot_y="cs",
                       plot_group="frequency"))
    for f in FIG10_FREQUENCIES:
        s = ThzScenario(frequency=f, intensity=0.01, **_THZ_COMMON)
        _secrecy_sweep_rows(table, (f,), s, surface, 60.0, 60.0,
                            np.arange(50.0, 60.25, 0.5))
    return table


FIG11_ROUGHNESS = (0.029e-3, 0.058e-3, 0.088e-3)


def fig11(seed: int, workers: int = 1) -> ResultTable:
    table = ResultTable(
        columns=["sigma_h", "theta_w_deg", "sinr_bob", "sinr_willie",
                 "cs", "cs_bounded"],
        meta=_thz_meta(11, seed, "secrecy capacity versus warden angle by roughness",
                       frequency_hz=500e9, intensity_per_m2=0.01, theta1_deg=60.0,
                       assumed_sigma_grid=";".join(f"{v:g}" for v in FIG11_ROUGHNESS),
                       plot="lines", plot_x="theta_w_deg", plot_y="cs",
                       plot_group="sigma_h"))
    s = ThzScenario(frequency=500e9, intensity=0.01, **_THZ_COMMON)
    for sh in FIG11_ROUGHNESS:
        surface = ScatterSurface(sh, 1.8e-3, 4e-4)
        _secrecy_sweep_rows(table, (sh,), s, surface, 60.0, 60.0,
                            np.arange(50.0, 60.25, 0.5))
    return table


FIG12_ROUGHNESS = (0.029e-3, 0.058e-3, 0.088e-3)
FIG12_WARDEN_ANGLES = (52.0, 55.0)


def fig12(seed: int, workers: int = 1) -> ResultTable:
    table = ResultTable(
        columns=["series", "sigma_h", "theta_w_deg", "theta_b_deg", "sinr_bob",
                 "sinr_willie", "cs", "cs_bounded"],
        meta=_thz_meta(12, seed, "secrecy capacity versus receiver scattering angle",
                       frequency_hz=500e9, intensity_per_m2=0.01, theta1_deg=60.0,
                       warden_angles_deg=";".join(str(v) for v in FIG12_WARDEN_ANGLES),
                       assumed_sigma_grid=";".join(f"{v:g}" for v in FIG12_ROUGHNESS),
                       plot="lines", plot_x="theta_b_deg", plot_y="cs",
                       plot_group="series"))
    s = ThzScenario(frequency=500e9, intensity=0.01, **_THZ_COMMON)
    for sh in FIG12_ROUGHNESS:
        surface = ScatterSurface(sh, 1.8e-3, 4e-4)
        for tw in FIG12_WARDEN_ANGLES:
            label = f"sigma={sh:g} theta_w={tw:g}"
            gw = ScatterGeometry.from_degrees(60.0, tw)
            for tb in np.arange(55.0, 60.25, 0.25):
                gb = ScatterGeometry.from_degrees(60.0, float(tb))
                rep = evaluate_scenario(s, surface, gb, gw)
                cs_b = normalized_secrecy_capacity(rep.sinr_bob, rep.sinr_willie,
                                                   "bounded")
                table.add_row(label, sh, tw, float(tb), rep.sinr_bob,
                              rep.sinr_willie, rep.secrecy, cs_b)
    return table


FIG13_ROUGHNESS = (0.058e-3, 0.088e-3, 0.13e-3)


def fig13(seed: int, workers: int = 1) -> ResultTable:
    table = ResultTable(
        columns=["sigma_h", "theta1_deg", "sinr_bob", "sinr_willie",
                 "cs", "cs_bounded"],
        meta=_thz_meta(13, seed, "secrecy capacity versus incidence angle",
                       frequency_hz=500e9, intensity_per_m2=0.01,
                       geometry="receiver specular, warden 5 deg inside",
                       assumed_sigma_grid=";".join(f"{v:g}" for v in FIG13_ROUGHNESS),
                       plot="lines", plot_x="theta1_deg", plot_y="cs",
                       plot_group="sigma_h"))
    s = ThzScenario(frequency=500e9, intensity=0.01, **_THZ_COMMON)
    for sh in FIG13_ROUGHNESS:
        surface = ScatterSurface(sh, 1.8e-3, 4e-4)
        for t1 in np.arange(20.0, 80.5, 2.5):
            gb = ScatterGeometry.from_degrees(float(t1), float(t1))
            gw = ScatterGeometry.from_degrees(float(t1), float(t1) - 5.0)
            rep = evaluate_scenario(s, surface, gb, gw)
            cs_b = normalized_secrecy_capacity(rep.sinr_bob, rep.sinr_willie,
                                               "bounded")
            table.add_row(sh, float(t1), rep.sinr_bob, rep.sinr_willie,
                          rep.secrecy, cs_b)
    return table


def fig14(seed: int, workers: int = 1) -> ResultTable:
    surface = ScatterSurface(0.058e-3, 1.8e-3, 4e-4)
    table = ResultTable(
        columns=["antenna", "theta_w_deg", "sinr_bob", "sinr_willie",
                 "cs", "cs_bounded"],
        meta=_thz_meta(14, seed, "secrecy capacity by warden antenna type",
                       frequency_hz=800e9, sigma_h_m=surface.height_std,
                       theta1_deg=60.0, assumed_intensity_per_m2=0.01,
                       plot="lines", plot_x="theta_w_deg", plot_y="cs",
                       plot_group="antenna"))
    s = ThzScenario(frequency=800e9, intensity=0.01, **_THZ_COMMON)
    for antenna in ("directional", "omni"):
        _secrecy_sweep_rows(table, (antenna,), s, surface, 60.0, 60.0,
                            np.arange(50.0, 60.25, 0.5), willie_antenna=antenna)
    return table


FIGURES = {3: fig3, 4: fig4, 5: fig5, 6: fig6, 7: fig7, 8: fig8, 9: fig9,
           10: fig10, 11: fig11, 12: fig12, 13: fig13, 14: fig14}


def run_figure(fig_id: int, seed: int = 1, out_dir=".", workers: int = 1,
               svg: bool = True):
    """Build figure `fig_id`, write figN.csv (and figN.svg), return the table.

    The SVG is rendered from the CSV afterwards, so numeric output never
    depends on plotting.  Identical seeds give byte-identical CSVs.
    """
    try:
        fig_id = int(fig_id)
    except (TypeError, ValueError):
        raise UsageError(f"figure id must be an integer, got {fig_id!r}") from None
    if fig_id not in FIGURES:
        supported = ", ".join(str(k) for k in sorted(FIGURES))
        raise UsageError(f"unknown figure id {fig_id}; supported ids: {supported}")
    table = FIGURES[fig_id](seed, workers)
    from pathlib import Path
    out = Path(out_dir)
    csv_path = table.write_csv(out / f"fig{fig_id}.csv")
    paths = [csv_path]
    if svg:
        from .plotting import csv_to_svg
        paths.append(csv_to_svg(csv_path, out / f"fig{fig_id}.svg"))
    return table, paths
