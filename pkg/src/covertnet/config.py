"""Flat key = value configuration files, one section per model namespace.

Unknown sections or keys are rejected, duplicates are errors, and every
diagnostic carries the file name, line number and key.  A minimal file is
just a section header; scenario defaults fill the rest.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

from .awgn import AwgnScenario
from .errors import ConfigError
from .geometry import PathLossLaw, Region
from .scattering import ScatterGeometry, ScatterSurface
from .thz import ThzScenario


def _positive(v):
    return v > 0


def _nonneg(v):
    return v >= 0


def _prob(v):
    return 0.0 <= v <= 1.0


# key -> (converter, invariant or None)
_SCHEMA = {
    "run": {
        "seed": (int, _nonneg),
        "trials": (int, lambda v: v >= 1),
        "out": (str, None),
        "workers": (int, lambda v: v >= 1),
        "sweep": (str, None),
        "values": ("floats", lambda v: len(v) > 0 and all(map(math.isfinite, v))),
    },
    "awgn": {
        "p_t": (float, _nonneg),
        "interferer_power": (float, _nonneg),
        "alpha": (float, lambda v: v >= 2),
        "lambda": (float, _nonneg),
        "d_aw": (float, _positive),
        "d_ab": (float, _positive),
        "sigma2_w0": (float, _nonneg),
        "sigma2_b0": (float, _nonneg),
        "n": (int, lambda v: v >= 1),
        "p": (float, _prob),
        "law": (str, lambda v: v in ("bounded", "truncated", "unbounded")),
        "guard": (float, _nonneg),
        "arena_shape": (str, lambda v: v in ("square", "disk")),
        "arena_size": (float, _positive),
        "per_sample_field": (bool, None),
    },
    "thz": {
        "frequency": (float, _positive),
        "phi_deg": (float, lambda v: 0 < v <= 360),
        "blocker_radius": (float, _positive),
        "horizon": (float, _positive),
        "absorption": (float, _nonneg),
        "lambda": (float, _nonneg),
        "link_constant": (float, _positive),
        "temperature": (float, _positive),
        "bandwidth": (float, _positive),
        "d_ab": (float, _positive),
        "d_aw": (float, _positive),
    },
    "surface": {
        "sigma_h": (float, _nonneg),
        "corr_length": (float, _positive),
        "area": (float, _positive),
    },
    "bob": {
        "theta_in_deg": (float, lambda v: 0 <= v < 90),
        "theta_out_deg": (float, lambda v: 0 <= v < 90),
        "theta_az_deg": (float, lambda v: 0 <= v < 360),
    },
    "willie": {
        "theta_in_deg": (float, lambda v: 0 <= v < 90),
        "theta_out_deg": (float, lambda v: 0 <= v < 90),
        "theta_az_deg": (float, lambda v: 0 <= v < 360),
        "antenna": (str, lambda v: v in ("directional", "omni")),
    },
}

_BOOL_WORDS = {"true": True, "false": False, "yes": True, "no": False,
               "1": True, "0": False}


@dataclass
class ExperimentConfig:
    """Parsed configuration: scenarios plus run-level orchestration knobs."""

    kind: str                               # "awgn", "thz", or "mixed"
    awgn: AwgnScenario | None = None
    thz: ThzScenario | None = None
    surface: ScatterSurface | None = None
    geom_bob: ScatterGeometry | None = None
    geom_willie: ScatterGeometry | None = None
    willie_antenna: str = "directional"
    sweep_name: str | None = None
    sweep_values: list = field(default_factory=list)
    trials: int = 1000
    seed: int = 1
    workers: int = 1
    out_dir: str = "out"


def _convert(raw: str, conv, path, lineno, key):
    try:
        if conv is float:
            return float(raw)
        if conv is int:
            return int(raw)
        if conv is bool:
            word = raw.strip().lower()
            if word not in _BOOL_WORDS:
                raise ValueError(raw)
            return _BOOL_WORDS[word]
        if conv == "floats":
            return [float(tok) for tok in raw.replace(",", " ").split()]
        return raw.strip()
    except ValueError:
        raise ConfigError(
            f"{path}:{lineno}: cannot parse value {raw!r} for key '{key}'") from None


def _read_sections(path: Path) -> dict:
    sections: dict = {}
    current = None
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith(("#", ";")):
            continue
        if stripped.startswith("[") and stripped.endswith("]"):
            current = stripped[1:-1].strip().lower()
            if current not in _SCHEMA:
                raise ConfigError(f"{path}:{lineno}: unknown section '[{current}]'")
            sections.setdefault(current, {})
            continue
        if "=" not in stripped:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        if current is None:
            raise ConfigError(f"{path}:{lineno}: key outside any [section]")
        key, raw = (part.strip() for part in stripped.split("=", 1))
        schema = _SCHEMA[current]
        if key not in schema:
            raise ConfigError(f"{path}:{lineno}: unknown key '{key}' in [{current}]")
        if key in sections[current]:
            raise ConfigError(f"{path}:{lineno}: duplicate key '{key}' in [{current}]")
        conv, check = schema[key]
        value = _convert(raw, conv, path, lineno, key)
        if check is not None and not check(value):
            raise ConfigError(
                f"{path}:{lineno}: invariant violation for '{key}' (value {raw})")
        sections[current][key] = value
    return sections


def _build_awgn(vals: dict) -> AwgnScenario:
    law_kind = vals.get("law", "bounded")
    alpha = vals.get("alpha", 4.0)
    if law_kind == "truncated":
        law = PathLossLaw.truncated(alpha, vals.get("guard", 1.0))
    elif law_kind == "unbounded":
        law = PathLossLaw.unbounded(alpha)
    else:
        law = PathLossLaw.bounded(alpha)
    shape = vals.get("arena_shape", "square")
    size = vals.get("arena_size", 100.0)
    arena = Region.square(size) if shape == "square" else Region.disk(size)
    return AwgnScenario(
        power=vals.get("p_t", 1.0),
        alpha=alpha,
        intensity=vals.get("lambda", 1.0),
        d_aw=vals.get("d_aw", 1.0),
        d_ab=vals.get("d_ab", 1.0),
        noise_w=vals.get("sigma2_w0", 1.0),
        noise_b=vals.get("sigma2_b0", 1.0),
        n=vals.get("n", 500),
        tx_prob=vals.get("p", 0.5),
        law=law,
        arena=arena,
        interferer_power=vals.get("interferer_power"),
        per_sample_field=vals.get("per_sample_field", False),
    )


def _build_thz(vals: dict) -> ThzScenario:
    return ThzScenario(
        frequency=vals.get("frequency", 5.0e11),
        phi=math.radians(vals.get("phi_deg", 10.0)),
        blocker_radius=vals.get("blocker_radius", 0.1),
        horizon=vals.get("horizon", 10.0),
        absorption=vals.get("absorption", 0.01),
        intensity=vals.get("lambda", 0.01),
        link_constant=vals.get("link_constant", 1.0),
        temperature=vals.get("temperature", 296.0),
        bandwidth=vals.get("bandwidth", 1.0),
        d_ab=vals.get("d_ab", 5.0),
        d_aw=vals.get("d_aw", 5.0),
    )


def parse_config(path) -> ExperimentConfig:
    """Parse and validate a configuration file into an ExperimentConfig."""
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"{path}: no such configuration file")
    sections = _read_sections(path)

    has_awgn = "awgn" in sections
    has_thz = "thz" in sections
    if not has_awgn and not has_thz:
        raise ConfigError(f"{path}: need an [awgn] or [thz] section")
    kind = "mixed" if (has_awgn and has_thz) else ("awgn" if has_awgn else "thz")

    cfg = ExperimentConfig(kind=kind)
    if has_awgn:
        cfg.awgn = _build_awgn(sections["awgn"])
    if has_thz:
        cfg.thz = _build_thz(sections["thz"])
        surf = sections.get("surface", {})
        cfg.surface = ScatterSurface(
            height_std=surf.get("sigma_h", 5.8e-5),
            corr_length=surf.get("corr_length", 1.8e-3),
            area=surf.get("area", 4.0e-4),
        )
        bob = sections.get("bob", {})
        cfg.geom_bob = ScatterGeometry.from_degrees(
            bob.get("theta_in_deg", 60.0), bob.get("theta_out_deg", 60.0),
            bob.get("theta_az_deg", 0.0))
        willie = sections.get("willie", {})
        cfg.geom_willie = ScatterGeometry.from_degrees(
            willie.get("theta_in_deg", bob.get("theta_in_deg", 60.0)),
            willie.get("theta_out_deg", 55.0),
            willie.get("theta_az_deg", 0.0))
        cfg.willie_antenna = willie.get("antenna", "directional")

    run = sections.get("run", {})
    cfg.seed = run.get("seed", 1)
    cfg.trials = run.get("trials", 1000)
    cfg.workers = run.get("workers", 1)
    cfg.out_dir = run.get("out", "out")
    cfg.sweep_name = run.get("sweep")
    cfg.sweep_values = run.get("values", [])
    if cfg.sweep_name is not None and not cfg.sweep_values:
        raise ConfigError(f"{path}: sweep '{cfg.sweep_name}' has no values")
    return cfg
