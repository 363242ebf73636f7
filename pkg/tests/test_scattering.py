"""Rough-surface scattering kernel, secrecy metric, and scenario assembly."""

import math

import numpy as np
import pytest

from covertnet.errors import ParameterError
from covertnet.scattering import (ScatterGeometry, ScatterSurface,
                                  evaluate_scenario, kirchhoff_gain,
                                  mean_sinr_taylor, normalized_secrecy_capacity,
                                  select_reflection_point)
from covertnet.thz import ThzInterferenceStats, ThzScenario

SURF = ScatterSurface(0.058e-3, 1.8e-3, 4e-4)


def coherent_only(sigma_h, geom, f=500e9):
    # vanishing correlation length kills the incoherent series
    return kirchhoff_gain(f, ScatterSurface(sigma_h, 1e-12, 4e-4), geom)


class TestKirchhoffGain:
    def test_smooth_specular_limit(self):
        g = kirchhoff_gain(500e9, ScatterSurface(0.0, 1.8e-3, 4e-4),
                           ScatterGeometry.from_degrees(60.0, 60.0))
        assert g == pytest.approx(1.0, rel=1e-12)

    def test_coherent_attenuation_hand_value(self):
        # specular at 60 deg, sigma_h = 0.088 mm, 500 GHz
        g = coherent_only(0.088e-3, ScatterGeometry.from_degrees(60.0, 60.0))
        assert -math.log(g) == pytest.approx(0.8492, abs=1e-3)

    def test_specular_ridge_dominates(self):
        surface = ScatterSurface(0.01e-3, 0.1e-3, 4e-4)
        for t1 in range(0, 90, 3):
            row = [kirchhoff_gain(500e9, surface,
                                  ScatterGeometry.from_degrees(t1, t2))
                   for t2 in range(90)]
            assert abs(int(np.argmax(row)) - t1) <= 1

    def test_roughness_splits_coherent_and_diffuse(self):
        geom = ScatterGeometry.from_degrees(60.0, 55.0)
        sigmas = (0.02e-3, 0.05e-3, 0.09e-3)
        coh = [coherent_only(s, geom) for s in sigmas]
        dif = [kirchhoff_gain(500e9, ScatterSurface(s, 1.8e-3, 4e-4), geom) - c
               for s, c in zip(sigmas, coh)]
        assert all(b < a for a, b in zip(coh, coh[1:]))
        assert all(b > a for a, b in zip(dif, dif[1:]))
        assert all(v >= 0.0 for v in coh + dif)

    def test_rough_limit_continuity(self):
        # straddle the series/asymptote switch at g = 300
        geom = ScatterGeometry.from_degrees(60.0, 60.0)
        k = 2.0 * math.pi * 500e9 / 3.0e8
        sigma_at = lambda g: math.sqrt(g) / k  # v_z = -k at this geometry
        lo = kirchhoff_gain(500e9, ScatterSurface(sigma_at(299.5), 1.8e-3, 4e-4),
                            geom)
        hi = kirchhoff_gain(500e9, ScatterSurface(sigma_at(300.5), 1.8e-3, 4e-4),
                            geom)
        assert hi == pytest.approx(lo, rel=0.02)

    def test_nonnegative_over_grid(self):
        rng = np.random.default_rng(9)
        for _ in range(200):
            t1, t2 = rng.uniform(0.0, 89.0, 2)
            t3 = rng.uniform(0.0, 360.0)
            g = kirchhoff_gain(500e9, SURF,
                               ScatterGeometry.from_degrees(t1, t2, t3))
            assert g >= 0.0

    def test_geometry_validation(self):
        with pytest.raises(ParameterError):
            ScatterGeometry.from_degrees(90.0, 45.0)
        with pytest.raises(ParameterError):
            ScatterGeometry.from_degrees(45.0, -1.0)


class TestSecrecyMetric:
    def test_unit_warden_sinr_gives_one(self):
        assert normalized_secrecy_capacity(3.0, 1.0) == pytest.approx(1.0)

    def test_parity_gives_zero(self):
        b = 2.5
        assert normalized_secrecy_capacity(b, 1.0 + b) == pytest.approx(0.0,
                                                                        abs=1e-12)

    def test_printed_formula_exceeds_one(self):
        val = normalized_secrecy_capacity(10.0, 0.1)
        assert val == pytest.approx(1.0 + math.log(10.0) / math.log(11.0),
                                    rel=1e-12)
        assert val == pytest.approx(1.960, abs=1e-3)

    def test_bounded_convention_endpoints(self):
        assert normalized_secrecy_capacity(10.0, 1e-12, "bounded") == \
            pytest.approx(1.0, abs=1e-9)
        assert normalized_secrecy_capacity(10.0, 10.0, "bounded") == \
            pytest.approx(0.0, abs=1e-12)

    def test_clamp_switch(self):
        assert normalized_secrecy_capacity(10.0, 0.1, clamp=True) == 1.0
        assert normalized_secrecy_capacity(1.0, 100.0, clamp=True) == 0.0

    def test_validation(self):
        with pytest.raises(ParameterError):
            normalized_secrecy_capacity(0.0, 1.0)
        with pytest.raises(ParameterError):
            normalized_secrecy_capacity(1.0, 1.0, convention="other")


class TestMeanSinr:
    def test_zero_variance_is_plain_ratio(self):
        st = ThzInterferenceStats(mean=2.0, variance=0.0)
        assert mean_sinr_taylor(6.0, 1.0, st) == pytest.approx(2.0, rel=1e-12)

    def test_correction_is_nonnegative(self):
        st = ThzInterferenceStats(mean=2.0, variance=5.0)
        assert mean_sinr_taylor(6.0, 1.0, st) >= 2.0

    def test_reference_arithmetic(self):
        st = ThzInterferenceStats(mean=1e-3, variance=1e-7)
        val = mean_sinr_taylor(0.038, 3.92e-21, st)
        assert val == pytest.approx(41.8, abs=1e-6)

    def test_validation(self):
        with pytest.raises(ParameterError):
            mean_sinr_taylor(1.0, 0.0, ThzInterferenceStats(0.0, 0.0))


class TestEvaluateScenario:
    def scenario(self, lam):
        return ThzScenario(frequency=500e9, intensity=lam)

    def test_no_interferers_score_lowest(self):
        surface = ScatterSurface(0.088e-3, 1.8e-3, 4e-4)
        gb = ScatterGeometry.from_degrees(60.0, 60.0)
        for tw in np.arange(50.0, 60.0, 1.0):
            gw = ScatterGeometry.from_degrees(60.0, float(tw))
            empty = evaluate_scenario(self.scenario(0.0), surface, gb, gw)
            dense = evaluate_scenario(self.scenario(0.01), surface, gb, gw)
            assert empty.secrecy < dense.secrecy

    def test_score_drops_toward_specular_warden(self):
        surface = ScatterSurface(0.088e-3, 1.8e-3, 4e-4)
        gb = ScatterGeometry.from_degrees(60.0, 60.0)
        sweep = [evaluate_scenario(self.scenario(0.01), surface, gb,
                                   ScatterGeometry.from_degrees(60.0, tw)).secrecy
                 for tw in np.arange(50.0, 60.25, 0.5)]
        tail = sweep[-7:]  # 57..60 degrees
        assert all(b < a for a, b in zip(tail, tail[1:]))
        assert sweep[-1] == min(sweep)

    def test_omni_warden_helps_the_link(self):
        surface = ScatterSurface(0.058e-3, 1.8e-3, 4e-4)
        gb = ScatterGeometry.from_degrees(60.0, 60.0)
        s = ThzScenario(frequency=800e9, intensity=0.01)
        for tw in np.arange(50.0, 60.5, 1.0):
            gw = ScatterGeometry.from_degrees(60.0, float(tw))
            omni = evaluate_scenario(s, surface, gb, gw, "omni")
            directional = evaluate_scenario(s, surface, gb, gw, "directional")
            assert omni.secrecy > directional.secrecy
            assert omni.sinr_willie < directional.sinr_willie

    def test_unknown_antenna(self):
        surface = ScatterSurface(0.058e-3, 1.8e-3, 4e-4)
        gb = ScatterGeometry.from_degrees(60.0, 60.0)
        with pytest.raises(ParameterError):
            evaluate_scenario(self.scenario(0.01), surface, gb, gb, "phased")


class TestReflectionPointSelection:
    def surf(self):
        return SURF

    def test_single_candidate(self):
        cand = ((1.0, 1.0), self.surf(), math.radians(30.0))
        assert select_reflection_point([cand], (0.0, 0.0)) is cand

    def test_nearest_wins(self):
        near = ((1.0, 0.0), self.surf(), math.radians(30.0))
        far = ((2.0, 0.0), self.surf(), math.radians(80.0))
        assert select_reflection_point([far, near], (0.0, 0.0)) is near

    def test_tie_breaks_on_incidence_angle(self):
        a = ((1.0, 0.0), self.surf(), math.radians(30.0))
        b = ((0.0, 1.0), self.surf(), math.radians(60.0))
        assert select_reflection_point([a, b], (0.0, 0.0)) is b

    def test_full_tie_keeps_input_order(self):
        a = ((1.0, 0.0), self.surf(), math.radians(45.0))
        b = ((0.0, 1.0), self.surf(), math.radians(45.0))
        assert select_reflection_point([a, b], (0.0, 0.0)) is a

    def test_empty_candidates(self):
        with pytest.raises(ParameterError):
            select_reflection_point([], (0.0, 0.0))
