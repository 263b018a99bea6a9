"""Tests for the scattering layer: wave vectors, phase shifts, purity, duration."""

import math

import numpy as np
import pytest

from igscatter import (
    ConfigError,
    ModelParameterError,
    RegimeWarning,
    ScatteringConfig,
    SeriesDomainError,
    a_s_from_phase_shift,
    cross_section,
    entanglement_duration,
    eta_delta,
    phase_shift_exact,
    phase_shift_from_a_s,
    phase_shift_from_potential,
    phase_shift_low_energy,
    phase_shift_report,
    purity_general,
    purity_low_energy,
    r_ig_from_potential,
    r_qm,
    r_qm_value,
    r_upper_bound,
    wave_vectors,
)
from igscatter.oracle import phase_shift_highprec


def make_cfg(**kw):
    base = dict(mu_reduced=0.5, V=0.01, d=0.1, k0=1.0, sigma0=0.01, R0=5.0)
    base.update(kw)
    return ScatteringConfig(**base)


class TestConfig:
    def test_positivity(self):
        for field in ("mu_reduced", "d", "k0", "sigma0", "R0"):
            with pytest.raises(ConfigError):
                make_cfg(**{field: 0.0})
            with pytest.raises(ConfigError):
                make_cfg(**{field: -1.0})

    def test_unknown_keys_rejected(self):
        with pytest.raises(ConfigError, match="unknown"):
            ScatteringConfig.from_dict(
                dict(mu_reduced=0.5, V=0.0, d=0.1, k0=1.0, sigma0=0.01, R0=5.0, zz=1)
            )

    def test_missing_keys_rejected(self):
        with pytest.raises(ConfigError, match="missing"):
            ScatteringConfig.from_dict(dict(V=0.0))

    def test_non_numeric_rejected(self):
        with pytest.raises(ConfigError):
            ScatteringConfig.from_dict(
                dict(mu_reduced=0.5, V=True, d=0.1, k0=1.0, sigma0=0.01, R0=5.0)
            )

    def test_kinetic_energy(self):
        assert make_cfg().kinetic_energy == pytest.approx(1.0)

    def test_json_roundtrip(self, tmp_path):
        cfg = make_cfg(a_s=1e-3)
        path = tmp_path / "cfg.json"
        import json

        path.write_text(json.dumps(cfg.to_dict()))
        assert ScatteringConfig.from_json(str(path)) == cfg


class TestWaveVectors:
    def test_free_case(self):
        wv = wave_vectors(make_cfg(V=0.0))
        assert (wv.k_in, wv.k_out) == (1.0, 1.0)
        assert not wv.evanescent

    def test_propagating_value(self):
        wv = wave_vectors(make_cfg(V=0.19))
        assert wv.k_out == pytest.approx(1.0, rel=1e-15)
        assert wv.k_in == pytest.approx(0.9, rel=1e-15)

    def test_threshold_marks_evanescent(self):
        wv = wave_vectors(make_cfg(V=1.0))
        assert wv.evanescent
        assert wv.k_in is None
        assert wv.kappa == 0.0

    def test_barrier_kappa(self):
        wv = wave_vectors(make_cfg(V=2.0))
        assert wv.evanescent
        assert wv.kappa == pytest.approx(1.0, rel=1e-15)

    @pytest.mark.parametrize("v", [1e-4, 0.01, 0.19, 0.5, 0.9, -0.3])
    def test_scaling_identity(self, v):
        """k_in = sqrt(1 - r) k_out holds exactly below threshold."""
        cfg = make_cfg(V=v)
        wv = wave_vectors(cfg)
        r = r_ig_from_potential(cfg)
        assert abs(wv.k_in - math.sqrt(1.0 - r) * wv.k_out) <= 1e-15 * wv.k_out


class TestCorrelationFromPotential:
    def test_values(self):
        assert r_ig_from_potential(make_cfg(V=0.02)) == pytest.approx(0.02, rel=1e-15)
        assert r_ig_from_potential(make_cfg(V=0.0)) == 0.0
        assert r_ig_from_potential(make_cfg(V=-0.02)) == pytest.approx(-0.02, rel=1e-15)


class TestEntanglementStrength:
    def test_example_value(self):
        assert r_qm_value(1.0, 0.1, 0.01, 0.001) == pytest.approx(0.012680693987317887, rel=1e-12)

    def test_zero_scattering_length(self):
        assert r_qm_value(1.0, 0.1, 0.01, 0.0) == 0.0

    def test_zero_width_limit(self):
        assert r_qm_value(1.0, 0.0, 1e-3, 1e-3) == pytest.approx(0.004, rel=1e-12)

    def test_negative_radicand_rejected(self):
        with pytest.raises(ModelParameterError):
            r_qm_value(1.0, 0.1, 0.01, -1e-3)

    def test_warns_outside_weak_regime(self):
        with pytest.warns(RegimeWarning):
            r_qm_value(1.0, 0.0, 1.0, 1.0)

    def test_config_requires_a_s(self):
        with pytest.raises(ConfigError):
            r_qm(make_cfg())
        assert r_qm(make_cfg(a_s=0.0)) == 0.0


class TestPhaseShift:
    def test_free_potential_is_exactly_zero(self):
        assert phase_shift_exact(make_cfg(V=0.0)) == 0.0

    def test_low_energy_example(self):
        theta = phase_shift_exact(make_cfg())  # V=0.01, d=0.1, k0=1
        series = phase_shift_low_energy(0.01, 0.1, 1.0)
        assert series == pytest.approx(-3.3333333333333337e-06, rel=1e-12)
        assert abs(theta - series) / abs(theta) <= 0.01

    def test_regression_point_vs_highprec(self):
        """Moderate-coupling value pinned by the 50-digit evaluation."""
        cfg = make_cfg(V=0.5, d=1.0)
        theta = phase_shift_exact(cfg)
        assert theta == pytest.approx(-0.12048901770170671, rel=1e-13)
        assert theta == pytest.approx(phase_shift_highprec(cfg), rel=1e-12)

    def test_principal_branch(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            cfg = make_cfg(V=rng.uniform(-0.5, 0.9), d=rng.uniform(0.05, 1.0))
            assert abs(phase_shift_exact(cfg)) < math.pi / 2

    def test_evanescent_continuation(self):
        """Above threshold the tanh continuation agrees with high precision."""
        for v in (1.0, 1.5, 3.0):
            cfg = make_cfg(V=v, d=0.5)
            assert phase_shift_exact(cfg) == pytest.approx(phase_shift_highprec(cfg), rel=1e-12)

    def test_series_error_scales_quadratically(self):
        """Relative series error follows a (k0 d)^2 trend at fixed correlation."""
        kds = np.geomspace(2e-3, 0.05, 8)
        errs = []
        for kd in kds:
            cfg = make_cfg(V=0.01, d=kd)  # k0 = 1 so k0*d = kd, r = 0.01
            exact = phase_shift_exact(cfg)
            series = phase_shift_low_energy(0.01, kd, 1.0)
            errs.append(abs(exact - series) / abs(exact))
        slope = np.polyfit(np.log(kds), np.log(errs), 1)[0]
        assert 1.5 <= slope <= 2.5

    def test_sign_convention(self):
        """Repulsive potentials give negative shifts, attractive positive."""
        for v in (1e-4, 1e-3, 0.01):
            assert phase_shift_exact(make_cfg(V=v)) < 0.0
            assert phase_shift_exact(make_cfg(V=-v)) > 0.0


class TestPhaseShiftRoutes:
    def test_low_energy_values(self):
        assert phase_shift_low_energy(0.01, 0.1, 1.0) == pytest.approx(-3.3333e-6, rel=1e-4)
        assert phase_shift_low_energy(0.0, 0.1, 1.0) == 0.0
        assert phase_shift_low_energy(0.02, 0.1, 2.0) == pytest.approx(-5.3333e-5, rel=1e-4)

    def test_potential_route_values(self):
        assert phase_shift_from_potential(make_cfg()) == pytest.approx(-3.3333e-6, rel=1e-4)
        assert phase_shift_from_potential(make_cfg(V=0.0)) == 0.0

    def test_route_identity(self):
        """The potential route is the series route with r = 2 mu V / k0^2."""
        rng = np.random.default_rng(9)
        for _ in range(30):
            cfg = make_cfg(
                mu_reduced=rng.uniform(0.2, 2.0),
                V=rng.uniform(-0.5, 0.5),
                d=rng.uniform(0.05, 0.5),
                k0=rng.uniform(0.5, 3.0),
            )
            a = phase_shift_from_potential(cfg)
            b = phase_shift_low_energy(r_ig_from_potential(cfg), cfg.d, cfg.k0)
            assert abs(a - b) <= 1e-15 * max(1.0, abs(a))

    def test_report_flags(self):
        rep = phase_shift_report(make_cfg(d=0.04, V=0.005))
        assert rep.regime_low_energy and rep.regime_weak_correlation and rep.regime_ok
        rep = phase_shift_report(make_cfg(d=0.5))
        assert not rep.regime_low_energy


class TestCrossSection:
    def test_values(self):
        assert cross_section(-0.001, 1.0) == pytest.approx(4.0 * math.pi * 1e-6, rel=1e-15)
        assert cross_section(0.0, 1.0) == 0.0
        assert cross_section(-0.001, 2.0) == pytest.approx(math.pi * 1e-6, rel=1e-15)

    def test_k0_positive(self):
        with pytest.raises(ModelParameterError):
            cross_section(0.1, 0.0)


class TestPurity:
    def test_example_value(self):
        p = purity_general(make_cfg(V=0.0), -1e-4)
        assert p == pytest.approx(0.9919996, rel=1e-12)

    def test_unit_purity_at_zero_shift(self):
        assert purity_general(make_cfg(V=0.0), 0.0) == 1.0

    def test_strength_identity(self):
        """purity = 1 - strength^2 under theta0 = -k0 a_s."""
        for a_s in (1e-6, 1e-5, 1e-4):
            cfg = make_cfg(a_s=a_s)
            strength = r_qm(cfg)
            p = purity_general(cfg, phase_shift_from_a_s(a_s, cfg.k0))
            assert abs(p - (1.0 - strength**2)) <= 1e-12

    def test_warns_when_correction_large(self):
        with pytest.warns(RegimeWarning):
            purity_general(make_cfg(V=0.0), -0.5)

    def test_low_energy_example(self):
        p = purity_low_energy(make_cfg(V=1e-5, d=0.2))
        assert p == pytest.approx(1.0 - 2.1334e-6, rel=1e-9)

    def test_low_energy_free_case(self):
        assert purity_low_energy(make_cfg(V=0.0)) == 1.0

    def test_route_consistency(self):
        """Low-energy purity equals the general form fed the potential shift."""
        for v in (1e-6, 1e-5, 1e-4, 1e-3):
            cfg = make_cfg(V=v, d=0.2)
            a = purity_low_energy(cfg)
            b = purity_general(cfg, phase_shift_from_potential(cfg))
            assert abs(a - b) / abs(a) <= 1e-12

    def test_attractive_potential_warns(self):
        """Attractive potentials push the truncated purity above 1."""
        with pytest.warns(RegimeWarning):
            p = purity_low_energy(make_cfg(V=-1e-3, d=0.2))
        assert p > 1.0

    def test_interconversion_helpers(self):
        assert a_s_from_phase_shift(-1e-3, 2.0) == pytest.approx(5e-4, rel=1e-15)
        assert phase_shift_from_a_s(5e-4, 2.0) == pytest.approx(-1e-3, rel=1e-15)


class TestDurationGainFactor:
    def test_moderate_ratio(self):
        assert eta_delta(1.0, 0.1) == pytest.approx(100.99744161623316, rel=1e-12)

    def test_leading_asymptote(self):
        """eta * (sigma0/k0)^2 -> 1 as the width ratio shrinks."""
        for x in (1e-2, 1e-3, 1e-4):
            assert eta_delta(1.0, x) * x * x == pytest.approx(1.0, rel=1e-3)

    def test_narrow_packet_value(self):
        assert eta_delta(1.0, 1e-3) == pytest.approx(1.000001e6, rel=1e-9)

    def test_series_domain(self):
        with pytest.raises(SeriesDomainError):
            eta_delta(1.0, 0.3)
        with pytest.raises(ModelParameterError):
            eta_delta(1.0, 0.0)


class TestCorrelationBound:
    def test_narrow_packet_bound(self):
        assert r_upper_bound(1.0, 1e-3) == pytest.approx(2e-6, rel=1e-5)

    def test_moderate_bound(self):
        assert r_upper_bound(1.0, 0.1) == pytest.approx(0.019802481805425685, rel=1e-12)

    def test_decreasing_in_momentum_ratio(self):
        bounds = [r_upper_bound(1.0, s0) for s0 in (0.2, 0.1, 0.01, 1e-3)]
        assert all(a > b for a, b in zip(bounds, bounds[1:]))


class TestEntanglementDuration:
    def test_zero_correlation(self):
        assert entanglement_duration(1.0, 1e-3, 0.0) == 0.0

    def test_narrow_packet_value(self):
        d = entanglement_duration(1.0, 1e-3, 1e-6)
        assert d == pytest.approx(0.6931489305626015, rel=1e-12)
        assert d == pytest.approx(0.693150, rel=5e-6)

    def test_strictly_increasing(self):
        eta = eta_delta(1.0, 1e-3)
        r_sing = 1.0 - 1.0 / (1.0 + 1.0 / eta) ** 2
        grid = np.linspace(1e-9, 0.999 * r_sing, 50)
        values = [entanglement_duration(1.0, 1e-3, r) for r in grid]
        assert all(a < b for a, b in zip(values, values[1:]))

    def test_diverges_near_bound(self):
        eta = eta_delta(1.0, 1e-3)
        r_sing = 1.0 - 1.0 / (1.0 + 1.0 / eta) ** 2
        assert entanglement_duration(1.0, 1e-3, r_sing * (1.0 - 1e-9)) > 15.0

    def test_rejects_out_of_domain(self):
        with pytest.raises(ModelParameterError):
            entanglement_duration(1.0, 1e-3, -1e-9)
        with pytest.raises(ModelParameterError):
            entanglement_duration(1.0, 1e-3, 2.1e-6)
