"""THz link physics and thinned aggregate-interference moments."""

import math

import numpy as np
import pytest
from scipy import integrate

from covertnet.constants import BOLTZMANN
from covertnet.errors import DomainError, ParameterError, SingularityError
from covertnet.geometry import PointField, Region
from covertnet.streams import derive_stream
from covertnet.thz import (ThzScenario, antenna_gain, blocking_prob,
                           coverage_prob, exp_integral_ei, johnson_nyquist_psd,
                           realize_thz_interference, received_power,
                           sample_thz_interference_powers,
                           stratified_interference_moments,
                           thz_interference_stats)


def quad_moments(s: ThzScenario):
    """Independent quadrature of the thinned Campbell mean/variance integrals."""
    amp, pc = s.amp_const, s.receiver_coverage
    lam, rb = s.intensity, s.blocker_radius

    def keep(r):
        return pc * math.exp(-lam * (r - rb) * rb)

    def f(r):
        return amp * r ** -2 * math.exp(-s.absorption * r)

    mean, _ = integrate.quad(lambda r: f(r) * keep(r) * 2 * math.pi * r * lam,
                             rb, s.horizon)
    var, _ = integrate.quad(lambda r: f(r) ** 2 * keep(r) * 2 * math.pi * r * lam,
                            rb, s.horizon)
    return mean, var


class TestAntennaGain:
    def test_omnidirectional_is_unity(self):
        assert antenna_gain(2.0 * math.pi) == pytest.approx(1.0, rel=1e-12)

    def test_ten_degree_cone(self):
        assert antenna_gain(math.pi / 18.0) == pytest.approx(525.6, abs=0.05)

    def test_half_space(self):
        assert antenna_gain(math.pi) == pytest.approx(2.0, rel=1e-12)

    def test_errors(self):
        with pytest.raises(SingularityError):
            antenna_gain(0.0)
        with pytest.raises(ParameterError):
            antenna_gain(7.0)


class TestReceivedPower:
    def test_reference_value(self):
        assert received_power(1.0, 5.0, 0.01) == pytest.approx(
            0.04 * math.exp(-0.05), rel=1e-12)

    def test_no_absorption(self):
        assert received_power(1.0, 5.0, 0.0) == pytest.approx(0.04, rel=1e-15)

    def test_zero_distance(self):
        with pytest.raises(SingularityError):
            received_power(1.0, 0.0, 0.01)

    def test_gain_product_scaling(self):
        g = antenna_gain(math.pi / 18.0)
        s = ThzScenario(frequency=500e9, phi=math.pi / 18.0)
        assert s.amp_const == pytest.approx(g * g, rel=1e-12)


class TestJohnsonNyquist:
    def test_reference_value(self):
        assert johnson_nyquist_psd(500e9, 296.0) == pytest.approx(3.9233e-21,
                                                                  rel=1e-3)

    def test_low_frequency_limit(self):
        assert johnson_nyquist_psd(1.0, 296.0) == pytest.approx(
            BOLTZMANN * 296.0, rel=1e-9)

    def test_high_frequency_suppression(self):
        vals = [johnson_nyquist_psd(f, 296.0) for f in (1e12, 1e13, 1e14)]
        assert all(b < a for a, b in zip(vals, vals[1:]))

    def test_validation(self):
        with pytest.raises(ParameterError):
            johnson_nyquist_psd(0.0, 296.0)


class TestThinning:
    def test_blocking_at_contact(self):
        assert blocking_prob(0.1, 1.0, 0.1) == 0.0

    def test_blocking_reference(self):
        assert blocking_prob(1.1, 1.0, 0.1) == pytest.approx(
            1.0 - math.exp(-0.1), rel=1e-12)

    def test_blocking_domain(self):
        with pytest.raises(DomainError):
            blocking_prob(0.05, 1.0, 0.1)

    def test_coverage(self):
        assert coverage_prob(math.pi / 18.0) == pytest.approx(1.0 / 36.0)
        assert coverage_prob(2.0 * math.pi) == 1.0


def unit_amp_scenario(**kw):
    """Scenario with A = 1: omni transmit and receive, H = 1."""
    base = dict(frequency=500e9, phi=2.0 * math.pi, rx_gain=1.0, coverage=1.0,
                intensity=0.0)
    base.update(kw)
    return ThzScenario(**base)


class TestRealize:
    def test_empty_field(self):
        s = unit_amp_scenario()
        field = PointField(xy=np.empty((0, 2)), fading=[], power=[],
                           region=Region.disk(10.0))
        assert realize_thz_interference(field, s, derive_stream(0, 0)) == 0.0

    def test_single_clear_interferer(self):
        # coverage 1 and intensity 0 make the keep probability exactly 1
        s = unit_amp_scenario()
        field = PointField(xy=[(2.0, 0.0)], fading=[1.0], power=[1.0],
                           region=Region.disk(10.0))
        val = realize_thz_interference(field, s, derive_stream(0, 1))
        assert val == pytest.approx(0.25 * math.exp(-0.02), rel=1e-12)

    def test_point_inside_blocker_radius(self):
        s = unit_amp_scenario()
        field = PointField(xy=[(0.05, 0.0)], fading=[1.0], power=[1.0],
                           region=Region.disk(10.0))
        with pytest.raises(DomainError):
            realize_thz_interference(field, s, derive_stream(0, 2))

    def test_point_beyond_horizon(self):
        s = unit_amp_scenario()
        field = PointField(xy=[(11.0, 0.0)], fading=[1.0], power=[1.0],
                           region=Region.disk(12.0))
        with pytest.raises(DomainError):
            realize_thz_interference(field, s, derive_stream(0, 3))


class TestClosedFormStats:
    def test_matches_quadrature(self):
        for lam in (0.01, 0.1):
            s = ThzScenario(frequency=500e9, intensity=lam)
            st = thz_interference_stats(s)
            qm, qv = quad_moments(s)
            assert st.mean == pytest.approx(qm, rel=1e-10)
            assert st.variance == pytest.approx(qv, rel=1e-10)

    def test_empty_interval_limit(self):
        full = thz_interference_stats(ThzScenario(frequency=500e9, intensity=0.1))
        s = ThzScenario(frequency=500e9, intensity=0.1, blocker_radius=0.1,
                        horizon=0.1 + 1e-9)
        st = thz_interference_stats(s)
        assert st.mean < 1e-7 * full.mean
        assert st.variance < 1e-6 * full.variance

    def test_linear_in_small_intensity(self):
        s1 = ThzScenario(frequency=500e9, intensity=1e-6)
        s2 = ThzScenario(frequency=500e9, intensity=2e-6)
        ratio = thz_interference_stats(s2).mean / thz_interference_stats(s1).mean
        assert ratio == pytest.approx(2.0, rel=1e-3)

    def test_zero_intensity(self):
        st = thz_interference_stats(ThzScenario(frequency=500e9, intensity=0.0))
        assert st.mean == 0.0 and st.variance == 0.0

    def test_mean_monotone_in_density(self):
        lams = np.linspace(0.01, 0.2, 12)
        means = [thz_interference_stats(
            ThzScenario(frequency=500e9, intensity=float(l))).mean for l in lams]
        assert all(b > a for a, b in zip(means, means[1:]))

    def test_stratified_monte_carlo_agreement(self):
        s = ThzScenario(frequency=500e9, intensity=0.01)
        st = thz_interference_stats(s)
        mean, var = stratified_interference_moments(s, derive_stream(50, 0))
        assert mean == pytest.approx(st.mean, rel=0.02)
        assert var == pytest.approx(st.variance, rel=0.05)

    def test_plain_sampler_mean_consistent(self):
        s = ThzScenario(frequency=500e9, intensity=0.1)
        mc = sample_thz_interference_powers(s, 20_000, derive_stream(51, 0))
        st = thz_interference_stats(s)
        se = mc.std(ddof=1) / math.sqrt(len(mc))
        assert mc.mean() == pytest.approx(st.mean, abs=4 * se)


def test_ei_reexport():
    assert exp_integral_ei(-1.0) == pytest.approx(-0.2193839343955205, rel=1e-10)


def test_scenario_validation():
    with pytest.raises(ParameterError):
        ThzScenario(frequency=0.0)
    with pytest.raises(ParameterError):
        ThzScenario(frequency=1e9, blocker_radius=5.0, horizon=1.0)
