"""Stream derivation, configuration parsing, tables, figures, and the CLI."""

import math
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from covertnet.cli import main as cli_main
from covertnet.config import parse_config
from covertnet.errors import ConfigError, ParameterError, UsageError
from covertnet.figures import run_figure
from covertnet.results import ResultTable, read_csv
from covertnet.streams import derive_stream, run_indexed


class TestStreams:
    def test_reproducible(self):
        a = derive_stream(1, 0).random(1000)
        b = derive_stream(1, 0).random(1000)
        assert np.array_equal(a, b)

    def test_distinct_ids_and_seeds(self):
        a = derive_stream(1, 0).random(1000)
        b = derive_stream(1, 1).random(1000)
        c = derive_stream(2, 0).random(1000)
        assert not np.array_equal(a, b)
        assert not np.array_equal(a, c)

    def test_substream_independence(self):
        a = derive_stream(1, 0).random(1000)
        b = derive_stream(1, 1).random(1000)
        r = np.corrcoef(a, b)[0, 1]
        assert abs(r) < 0.05

    def test_tuple_ids(self):
        a = derive_stream(1, (3, 4)).random(10)
        b = derive_stream(1, (3, 4)).random(10)
        c = derive_stream(1, (4, 3)).random(10)
        assert np.array_equal(a, b)
        assert not np.array_equal(a, c)

    def test_run_indexed_worker_invariance(self):
        def job(i):
            return float(derive_stream(9, i).random())
        seq = run_indexed(job, 32, workers=1)
        par = run_indexed(job, 32, workers=8)
        assert seq == par


class TestConfig:
    def write(self, tmp_path, text):
        p = tmp_path / "exp.cfg"
        p.write_text(text, encoding="utf-8")
        return p

    def test_minimal_awgn_defaults(self, tmp_path):
        cfg = parse_config(self.write(tmp_path, "[awgn]\n"))
        s = cfg.awgn
        assert s.power == 1.0
        assert s.alpha == 4.0
        assert s.noise_w == 1.0
        assert s.law.kind == "bounded"
        assert s.arena.shape == "square" and s.arena.size == 100.0

    def test_invariant_violation_names_key_and_line(self, tmp_path):
        path = self.write(tmp_path, "[awgn]\nlambda = -1\n")
        with pytest.raises(ConfigError, match=r"exp\.cfg:2.*'lambda'"):
            parse_config(path)

    def test_duplicate_key(self, tmp_path):
        path = self.write(tmp_path, "[awgn]\np_t = 1\np_t = 2\n")
        with pytest.raises(ConfigError, match="duplicate key 'p_t'"):
            parse_config(path)

    def test_unknown_key_and_section(self, tmp_path):
        with pytest.raises(ConfigError, match="unknown key 'speed'"):
            parse_config(self.write(tmp_path, "[awgn]\nspeed = 3\n"))
        with pytest.raises(ConfigError, match="unknown section"):
            parse_config(self.write(tmp_path, "[warp]\n"))

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="no such configuration"):
            parse_config(tmp_path / "absent.cfg")

    def test_full_thz_roundtrip(self, tmp_path):
        text = """
[run]
seed = 7
trials = 200
sweep = theta_w
values = 50, 55, 60

[thz]
frequency = 8.0e11
phi_deg = 10
lambda = 0.01
d_ab = 5.0

[surface]
sigma_h = 5.8e-5

[bob]
theta_in_deg = 60
theta_out_deg = 60

[willie]
theta_out_deg = 55
antenna = omni
"""
        cfg = parse_config(self.write(tmp_path, text))
        assert cfg.kind == "thz"
        assert cfg.seed == 7
        assert cfg.thz.frequency == 8.0e11
        assert cfg.thz.phi == pytest.approx(math.radians(10.0))
        assert cfg.willie_antenna == "omni"
        assert cfg.sweep_name == "theta_w"
        assert cfg.sweep_values == [50.0, 55.0, 60.0]
        assert cfg.geom_willie.theta_out == pytest.approx(math.radians(55.0))

    def test_awgn_booleans_and_law(self, tmp_path):
        text = "[awgn]\nlaw = truncated\nguard = 1.0\nper_sample_field = true\n"
        cfg = parse_config(self.write(tmp_path, text))
        assert cfg.awgn.law.kind == "truncated"
        assert cfg.awgn.per_sample_field is True

    def test_sweep_without_values(self, tmp_path):
        with pytest.raises(ConfigError, match="has no values"):
            parse_config(self.write(tmp_path, "[run]\nsweep = d_aw\n[awgn]\n"))


class TestResultTable:
    def test_row_width_checked(self):
        t = ResultTable(columns=["a", "b"])
        with pytest.raises(ParameterError):
            t.add_row(1)

    def test_csv_roundtrip(self, tmp_path):
        t = ResultTable(columns=["x", "label"], meta={"seed": 3, "alpha": 4.0})
        t.add_row(1.5, "one")
        t.add_row(2.5, "two")
        path = t.write_csv(tmp_path / "t.csv")
        meta, cols, rows = read_csv(path)
        assert meta["seed"] == "3"
        assert "config_hash" in meta
        assert cols == ["x", "label"]
        assert rows == [(1.5, "one"), (2.5, "two")]

    def test_hash_tracks_meta(self):
        a = ResultTable(columns=["x"], meta={"seed": 1})
        b = ResultTable(columns=["x"], meta={"seed": 2})
        assert a.config_hash() != b.config_hash()

    def test_text_is_deterministic(self):
        t = ResultTable(columns=["x"], meta={"seed": 1})
        t.add_row(math.pi)
        assert t.to_csv_text() == t.to_csv_text()


class TestFigures:
    def test_unknown_id(self, tmp_path):
        with pytest.raises(UsageError, match="supported ids"):
            run_figure(99, out_dir=tmp_path)
        with pytest.raises(UsageError):
            run_figure("nine", out_dir=tmp_path)

    def test_fig4_shape(self, tmp_path):
        table, paths = run_figure(4, seed=1, out_dir=tmp_path, svg=False)
        assert table.columns == ["index", "noise", "interference"]
        assert len(table.rows) == 1000
        assert paths[0].name == "fig4.csv"

    def test_fig3_deterministic_and_plot(self, tmp_path):
        _, p1 = run_figure(3, seed=5, out_dir=tmp_path / "a", svg=True)
        _, p2 = run_figure(3, seed=5, out_dir=tmp_path / "b", svg=False)
        assert p1[0].read_bytes() == p2[0].read_bytes()
        svg = p1[1]
        assert svg.suffix == ".svg"
        root = ET.parse(svg).getroot()
        assert root.tag.endswith("svg")

    def test_fig5_statistics_ordering(self, tmp_path):
        table, _ = run_figure(5, seed=1, out_dir=tmp_path, svg=False)
        silent = float(table.meta["statistic_silent"])
        alt = float(table.meta["statistic_alternating"])
        tx = float(table.meta["statistic_transmitting"])
        assert silent < tx
        assert silent <= alt <= tx

    def test_fig9_trend_columns(self, tmp_path):
        table, _ = run_figure(9, seed=1, out_dir=tmp_path, svg=False)
        assert table.columns[-2:] == ["cs", "cs_bounded"]
        lam = np.array(table.column("intensity"))
        assert set(lam) == {0.0, 0.01, 0.05, 0.1}


class TestCli:
    def test_unknown_figure_exit_code(self, capsys):
        assert cli_main(["fig", "99"]) == 2
        assert "supported ids" in capsys.readouterr().err

    def test_bound_command(self, tmp_path, capsys):
        rc = cli_main(["awgn", "bound", "--n", "500", "--d-aw", "1,2,4",
                       "--out", str(tmp_path)])
        assert rc == 0
        assert (tmp_path / "awgn_bound.csv").exists()
        out = capsys.readouterr().out
        assert "covert distance" in out

    def test_throughput_command(self, capsys):
        assert cli_main(["awgn", "throughput"]) == 0
        assert "jammer" in capsys.readouterr().out

    def test_thz_interference_command(self, capsys):
        assert cli_main(["thz", "interference", "--lambda", "0.01"]) == 0
        out = capsys.readouterr().out
        assert "closed_form" in out

    def test_thz_secrecy_with_config(self, tmp_path, capsys):
        cfg = tmp_path / "exp.cfg"
        cfg.write_text("""
[run]
sweep = theta_w
values = 55, 58, 60

[thz]
frequency = 5.0e11
lambda = 0.01

[surface]
sigma_h = 8.8e-5

[bob]
theta_in_deg = 60
theta_out_deg = 60
""", encoding="utf-8")
        rc = cli_main(["thz", "secrecy", "--config", str(cfg),
                       "--out", str(tmp_path)])
        assert rc == 0
        meta, cols, rows = read_csv(tmp_path / "thz_secrecy.csv")
        assert len(rows) == 3
        assert cols[0] == "theta_w_deg"

    def test_detect_command(self, tmp_path):
        rc = cli_main(["awgn", "detect", "--trials", "120", "--n", "60",
                       "--out", str(tmp_path)])
        assert rc == 0
        meta, cols, rows = read_csv(tmp_path / "awgn_detect.csv")
        assert cols[:3] == ["p_fa", "p_md", "p_e"]
