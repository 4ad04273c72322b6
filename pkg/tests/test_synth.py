"""Tests for the correlated-Gaussian sampler and its analytic MI."""

import math

import numpy as np
import pytest

from copula_mi import DataError, GaussianSpec, gaussian_mi_analytic, gaussian_sample


class TestAnalyticMi:
    def test_zero_at_independence(self):
        assert gaussian_mi_analytic(0.0) == 0.0

    def test_reference_values(self):
        """Direct evaluations of -0.5 ln(1 - rho^2)."""
        assert gaussian_mi_analytic(0.5) == pytest.approx(0.14384103622589045, abs=1e-15)
        assert gaussian_mi_analytic(0.9) == pytest.approx(0.8303656034108255, abs=1e-15)

    def test_even_in_rho(self):
        for rho in [0.1, 0.35, 0.77, 0.999]:
            assert gaussian_mi_analytic(rho) == gaussian_mi_analytic(-rho)

    def test_strictly_increasing_in_magnitude(self):
        rhos = np.linspace(0.0, 0.99, 50)
        vals = [gaussian_mi_analytic(r) for r in rhos]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    @pytest.mark.parametrize("rho", [1.0, -1.0, 1.5])
    def test_rejects_degenerate_rho(self, rho):
        with pytest.raises(DataError):
            gaussian_mi_analytic(rho)


class TestGaussianSpec:
    def test_rejects_degenerate_rho(self):
        with pytest.raises(DataError):
            GaussianSpec(rho=1.0, T=100, seed=0)

    def test_rejects_tiny_sample_count(self):
        with pytest.raises(DataError):
            GaussianSpec(rho=0.0, T=1, seed=0)


class TestGaussianSample:
    def test_shape(self):
        m = gaussian_sample(GaussianSpec(rho=0.5, T=64, seed=1))
        assert (m.T, m.N) == (64, 2)

    def test_same_seed_is_bit_identical(self):
        spec = GaussianSpec(rho=0.3, T=500, seed=20240817)
        a = gaussian_sample(spec)
        b = gaussian_sample(spec)
        np.testing.assert_array_equal(a.values, b.values)

    def test_different_seeds_differ(self):
        a = gaussian_sample(GaussianSpec(rho=0.3, T=100, seed=1))
        b = gaussian_sample(GaussianSpec(rho=0.3, T=100, seed=2))
        assert not np.array_equal(a.values, b.values)

    def test_marginals_standard(self):
        """Each column should look like N(0, 1) at T = 10^4."""
        m = gaussian_sample(GaussianSpec(rho=0.6, T=10_000, seed=3))
        means = m.values.mean(axis=0)
        variances = m.values.var(axis=0)
        assert np.all(np.abs(means) < 0.05)
        assert np.all(np.abs(variances - 1.0) < 0.1)

    def test_independence_correlation(self):
        m = gaussian_sample(GaussianSpec(rho=0.0, T=100_000, seed=4))
        r = np.corrcoef(m.values[:, 0], m.values[:, 1])[0, 1]
        assert abs(r) < 0.02

    def test_strong_correlation(self):
        m = gaussian_sample(GaussianSpec(rho=0.9, T=100_000, seed=5))
        r = np.corrcoef(m.values[:, 0], m.values[:, 1])[0, 1]
        assert abs(r - 0.9) < 0.01

    def test_negative_rho(self):
        m = gaussian_sample(GaussianSpec(rho=-0.8, T=50_000, seed=6))
        r = np.corrcoef(m.values[:, 0], m.values[:, 1])[0, 1]
        assert abs(r + 0.8) < 0.02

    def test_no_ties_in_practice(self):
        """Continuous sampling should essentially never produce tied
        values within a column at these sizes."""
        m = gaussian_sample(GaussianSpec(rho=0.5, T=10_000, seed=7))
        for j in range(2):
            assert np.unique(m.values[:, j]).size == 10_000
