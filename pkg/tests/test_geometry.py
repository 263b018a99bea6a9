"""Tests for the analytic Fisher-Rao metric, density and connection."""

import numpy as np
import pytest

from igscatter import (
    GaussianModelParams,
    christoffel,
    fisher_density,
    fisher_metric,
    metric_speed_squared,
)
from igscatter.oracle import christoffel_fd, fisher_metric_quadrature

SIGMA_SWEEP = (0.1, 1.0, 10.0)
R_SWEEP = (0.0, 0.5, -0.5, 0.9, -0.9)


def params(sigma, r=0.0):
    return GaussianModelParams(0.0, 0.0, sigma, r)


class TestFisherMetric:
    def test_unit_width_uncorrelated(self):
        np.testing.assert_allclose(fisher_metric(params(1.0)), np.diag([1.0, 1.0, 4.0]))

    def test_correlated_case(self):
        expected = np.array(
            [[4.0 / 3.0, -2.0 / 3.0, 0.0], [-2.0 / 3.0, 4.0 / 3.0, 0.0], [0.0, 0.0, 4.0]]
        )
        np.testing.assert_allclose(fisher_metric(params(1.0, 0.5)), expected, rtol=1e-15)

    def test_wide_model(self):
        np.testing.assert_allclose(fisher_metric(params(2.0)), np.diag([0.25, 0.25, 1.0]))

    @pytest.mark.parametrize("sigma", SIGMA_SWEEP)
    @pytest.mark.parametrize("r", R_SWEEP)
    def test_symmetric_and_positive_definite(self, sigma, r):
        g = fisher_metric(params(sigma, r))
        np.testing.assert_array_equal(g, g.T)
        # leading principal minors strictly positive
        assert g[0, 0] > 0.0
        assert np.linalg.det(g[:2, :2]) > 0.0
        assert np.linalg.det(g) > 0.0

    @pytest.mark.parametrize("sigma,r", [(1.0, 0.5), (2.0, 0.0), (0.5, -0.6)])
    def test_matches_score_quadrature(self, sigma, r):
        """Analytic metric against the brute-force score-covariance metric."""
        p = params(sigma, r)
        g = fisher_metric(p)
        quad = fisher_metric_quadrature(p)
        assert np.max(np.abs(g - quad)) / np.max(np.abs(g)) <= 1e-7


class TestFisherDensity:
    def test_values(self):
        assert fisher_density(params(1.0)) == pytest.approx(2.0, rel=1e-15)
        assert fisher_density(params(2.0)) == pytest.approx(0.25, rel=1e-15)
        assert fisher_density(params(1.0, 0.5)) == pytest.approx(2.3094010767585034, rel=1e-15)

    @pytest.mark.parametrize("sigma", SIGMA_SWEEP)
    @pytest.mark.parametrize("r", R_SWEEP)
    def test_equals_sqrt_det_metric(self, sigma, r):
        p = params(sigma, r)
        assert fisher_density(p) == pytest.approx(
            np.sqrt(np.linalg.det(fisher_metric(p))), rel=1e-12
        )


class TestChristoffel:
    def test_unit_width_uncorrelated(self):
        gam = christoffel(params(1.0))
        assert gam[0, 0, 2] == pytest.approx(-1.0)
        assert gam[0, 2, 0] == pytest.approx(-1.0)
        assert gam[2, 0, 0] == pytest.approx(0.25)
        assert gam[2, 2, 2] == pytest.approx(-1.0)
        assert gam[2, 0, 1] == 0.0
        assert gam[0, 0, 0] == 0.0

    def test_wide_uncorrelated(self):
        gam = christoffel(params(2.0))
        assert gam[0, 0, 2] == pytest.approx(-0.5)
        assert gam[2, 0, 0] == pytest.approx(0.125)
        assert gam[2, 2, 2] == pytest.approx(-0.5)

    def test_correlated_cross_term(self):
        gam = christoffel(params(1.0, 0.5))
        assert gam[2, 0, 1] == pytest.approx(-1.0 / 6.0, rel=1e-15)
        assert gam[2, 1, 0] == pytest.approx(-1.0 / 6.0, rel=1e-15)

    @pytest.mark.parametrize("sigma,r", [(1.0, 0.0), (2.0, 0.0), (1.0, 0.5), (0.4, -0.7)])
    def test_lower_index_symmetry(self, sigma, r):
        gam = christoffel(params(sigma, r))
        np.testing.assert_array_equal(gam, np.swapaxes(gam, 1, 2))

    @pytest.mark.parametrize("sigma,r", [(1.0, 0.0), (0.5, 0.5), (3.0, -0.8)])
    def test_matches_finite_differences(self, sigma, r):
        p = params(sigma, r)
        gam = christoffel(p)
        fd = christoffel_fd(p)
        assert np.max(np.abs(gam - fd)) / np.max(np.abs(gam)) <= 1e-6


class TestMetricCompatibility:
    """The connection is metric compatible: the covariant derivative of g vanishes."""

    @pytest.mark.parametrize("sigma,r", [(1.0, 0.0), (0.7, 0.5), (2.5, -0.6)])
    def test_nabla_g_zero(self, sigma, r):
        p = params(sigma, r)
        gam = christoffel(p)
        h = 1e-6 * max(1.0, sigma)
        dg = np.zeros((3, 3, 3))  # dg[m] = d_m g; only the sigma derivative is nonzero
        gp = fisher_metric(GaussianModelParams(0.0, 0.0, sigma + h, r))
        gm = fisher_metric(GaussianModelParams(0.0, 0.0, sigma - h, r))
        dg[2] = (gp - gm) / (2.0 * h)
        g = fisher_metric(p)
        nabla = (
            dg
            - np.einsum("kmi,kj->mij", gam, g)
            - np.einsum("kmj,ik->mij", gam, g)
        )
        assert np.max(np.abs(nabla)) <= 1e-8 * np.max(np.abs(g))


class TestZeroCorrelationLimit:
    def test_metric_linear_in_r(self):
        """Correlated quantities approach the uncorrelated ones linearly in r."""
        g0 = fisher_metric(params(1.0, 0.0))
        for r in (1e-3, 1e-4, 1e-5):
            diff = np.max(np.abs(fisher_metric(params(1.0, r)) - g0))
            assert diff <= 1.1 * r

    def test_christoffel_linear_in_r(self):
        c0 = christoffel(params(1.0, 0.0))
        for r in (1e-3, 1e-4, 1e-5):
            diff = np.max(np.abs(christoffel(params(1.0, r)) - c0))
            assert diff <= 0.3 * r


class TestSpeedSquared:
    def test_matches_metric_contraction(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            sigma = rng.uniform(0.3, 3.0)
            r = rng.uniform(-0.9, 0.9)
            v = rng.uniform(-1, 1, 3)
            theta = (rng.uniform(-1, 1), rng.uniform(-1, 1), sigma)
            g = fisher_metric(params(sigma, r))
            assert metric_speed_squared(theta, v, r) == pytest.approx(v @ g @ v, rel=1e-12)
