"""Point-process sampling, path-loss laws, and the nearest-distance law."""

import math

import numpy as np
import pytest

from covertnet.errors import ParameterError, SingularityError
from covertnet.geometry import (PathLossLaw, Region, nearest_interferer_cdf,
                                path_gain, sample_fading_power, sample_ppp)


def min_distances(region, intensity, trials, rng):
    """Empirical nearest-point distance from the origin per sampled field."""
    out = np.full(trials, region.size)
    for i in range(trials):
        field = sample_ppp(region, intensity, rng)
        if len(field):
            out[i] = field.distances_to((0.0, 0.0)).min()
    return out


class TestRegion:
    def test_areas(self):
        assert Region.square(100.0).area() == pytest.approx(1e4)
        assert Region.disk(10.0).area() == pytest.approx(100.0 * math.pi)

    def test_invalid(self):
        with pytest.raises(ParameterError):
            Region("triangle", 1.0)
        with pytest.raises(ParameterError):
            Region.disk(0.0)

    def test_points_inside(self):
        rng = np.random.default_rng(5)
        sq = Region.square(10.0, center=(3.0, -2.0)).sample_points(500, rng)
        assert np.all(np.abs(sq[:, 0] - 3.0) <= 5.0)
        assert np.all(np.abs(sq[:, 1] + 2.0) <= 5.0)
        dk = Region.disk(4.0, center=(1.0, 1.0)).sample_points(500, rng)
        assert np.all(np.hypot(dk[:, 0] - 1.0, dk[:, 1] - 1.0) <= 4.0)


class TestSamplePpp:
    def test_zero_intensity_gives_empty_field(self):
        field = sample_ppp(Region.square(100.0), 0.0, np.random.default_rng(0))
        assert len(field) == 0

    def test_mean_count_square(self):
        rng = np.random.default_rng(11)
        counts = [len(sample_ppp(Region.square(100.0), 1.0, rng))
                  for _ in range(300)]
        se = np.std(counts, ddof=1) / math.sqrt(len(counts))
        assert np.mean(counts) == pytest.approx(1e4, abs=max(4 * se, 1.0))

    def test_mean_count_disk(self):
        rng = np.random.default_rng(12)
        counts = [len(sample_ppp(Region.disk(10.0), 0.01, rng))
                  for _ in range(2000)]
        assert np.mean(counts) == pytest.approx(math.pi, abs=0.14)

    def test_negative_intensity(self):
        with pytest.raises(ParameterError):
            sample_ppp(Region.square(1.0), -1.0, np.random.default_rng(0))

    def test_constant_fading_mode(self):
        field = sample_ppp(Region.square(50.0), 0.1, np.random.default_rng(3),
                           fading="constant")
        assert np.all(field.fading == 1.0)


class TestPathGain:
    def test_bounded_inside_unit_disk(self):
        assert path_gain(PathLossLaw.bounded(4.0), 0.5) == 1.0

    def test_truncated_inside_guard(self):
        assert path_gain(PathLossLaw.truncated(4.0, 1.0), 0.5) == 0.0

    def test_unbounded_value(self):
        assert path_gain(PathLossLaw.unbounded(4.0), 2.0) == pytest.approx(0.0625)

    def test_unbounded_singularity(self):
        with pytest.raises(SingularityError):
            path_gain(PathLossLaw.unbounded(4.0), 0.0)

    def test_monotone_and_bounded(self):
        r = np.linspace(0.01, 20.0, 400)
        for law in (PathLossLaw.bounded(3.0), PathLossLaw.unbounded(2.5)):
            assert np.all(np.diff(law.gain(r)) <= 1e-15)
        # the truncated law is zero inside the guard, nonincreasing beyond it
        r_out = np.linspace(1.0, 20.0, 200)
        assert np.all(np.diff(PathLossLaw.truncated(4.0, 1.0).gain(r_out)) <= 0)
        assert np.all(PathLossLaw.bounded(4.0).gain(r) <= 1.0)

    def test_truncated_equals_unbounded_beyond_guard(self):
        r = np.linspace(1.0, 10.0, 50)
        tr = PathLossLaw.truncated(4.0, 1.0).gain(r)
        ub = PathLossLaw.unbounded(4.0).gain(r)
        assert np.allclose(tr, ub, rtol=0, atol=0)

    def test_alpha_below_two_rejected(self):
        with pytest.raises(ParameterError):
            PathLossLaw.bounded(1.5)


class TestFading:
    def test_moments(self):
        rng = np.random.default_rng(21)
        psi = sample_fading_power(rng, 1_000_000)
        assert psi.mean() == pytest.approx(1.0, rel=0.005)
        assert np.mean(psi ** 2) == pytest.approx(2.0, rel=0.01)
        assert np.mean(np.sqrt(psi)) == pytest.approx(math.sqrt(math.pi) / 2.0,
                                                      rel=0.01)

    def test_scalar_draw(self):
        val = sample_fading_power(np.random.default_rng(2))
        assert isinstance(val, float) and val >= 0.0


class TestNearestInterfererCdf:
    def test_reference_value(self):
        assert round(nearest_interferer_cdf(1.0, 1.0), 4) == 0.9568

    def test_zero_distance(self):
        assert nearest_interferer_cdf(1.0, 0.0) == 0.0

    def test_direct_evaluation(self):
        assert nearest_interferer_cdf(0.1, 2.0) == pytest.approx(
            1.0 - math.exp(-0.4 * math.pi), rel=1e-12)

    def test_monotone(self):
        d = np.linspace(0.0, 3.0, 30)
        vals = [nearest_interferer_cdf(0.5, x) for x in d]
        assert all(b >= a for a, b in zip(vals, vals[1:]))
        assert all(0.0 <= v <= 1.0 for v in vals)

    def test_empirical_frequency(self):
        rng = np.random.default_rng(31)
        dmin = min_distances(Region.disk(6.0), 0.1, 20_000, rng)
        emp = float(np.mean(dmin < 2.0))
        assert emp == pytest.approx(nearest_interferer_cdf(0.1, 2.0), abs=0.01)

    def test_kolmogorov_smirnov(self):
        rng = np.random.default_rng(32)
        dmin = np.sort(min_distances(Region.disk(5.0), 1.0, 10_000, rng))
        n = len(dmin)
        cdf = np.array([nearest_interferer_cdf(1.0, d) for d in dmin])
        upper = np.abs(np.arange(1, n + 1) / n - cdf)
        lower = np.abs(cdf - np.arange(0, n) / n)
        assert max(upper.max(), lower.max()) < 0.02
