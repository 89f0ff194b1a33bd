"""Empirical distribution: CDF, quantile, partial expectations, bandwidth.

Analytic uniform-law values used as oracles below:
    CDF(x) = x/40;  quantile(p) = 40 p;
    E[X 1{X >= t}] = (40^2 - t^2) / (2 * 40).
"""

from __future__ import annotations

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from nemsizer import (
    DegenerateSamples,
    EmpiricalDistribution,
    ProbabilityOutOfRange,
    silverman_bandwidth,
)


@pytest.fixture(scope="module")
def uniform_samples():
    return np.random.default_rng(42).uniform(0.0, 40.0, 10_000)


class TestCdf:
    def test_counting(self):
        d = EmpiricalDistribution().fit([1.0, 2.0, 3.0])
        assert d.cdf(2.0) == pytest.approx(2.0 / 3.0)
        assert d.cdf(0.5) == 0.0
        assert d.cdf(3.0) == 1.0

    @pytest.mark.parametrize("mode", ["ecdf", "kde"])
    def test_limits(self, mode):
        d = EmpiricalDistribution(mode=mode).fit([5.0, 7.0, 11.0])
        assert d.cdf(-1e12) == pytest.approx(0.0, abs=1e-300)
        assert d.cdf(1e12) == pytest.approx(1.0)

    def test_kde_matches_analytic_uniform(self, uniform_samples):
        d = EmpiricalDistribution(mode="kde").fit(uniform_samples)
        assert d.cdf(20.0) == pytest.approx(0.5, abs=0.02)

    @pytest.mark.parametrize("mode", ["ecdf", "kde"])
    def test_nondecreasing_on_grid(self, mode, uniform_samples):
        d = EmpiricalDistribution(mode=mode).fit(uniform_samples[:2000])
        grid = np.linspace(d.samples_[0], d.samples_[-1], 1000)
        values = d.cdf(grid)
        assert np.all(np.diff(values) >= 0.0)
        assert np.all((values >= 0.0) & (values <= 1.0))

    def test_kde_converges_to_ecdf_as_bandwidth_vanishes(self):
        rng = np.random.default_rng(3)
        x = rng.normal(10.0, 2.0, 500)
        span = x.max() - x.min()
        ecdf = EmpiricalDistribution().fit(x)
        kde = EmpiricalDistribution(mode="kde", bandwidth=1e-6 * span).fit(x)
        # evaluate between order statistics, away from the step locations
        xs = np.sort(x)
        mids = (xs[:-1] + xs[1:]) / 2.0
        mids = mids[np.diff(xs) > 1e-9]
        gap = np.abs(kde.cdf(mids) - ecdf.cdf(mids))
        assert gap.max() < 1e-3


class TestQuantile:
    def test_uniform_upper_tail(self, uniform_samples):
        d = EmpiricalDistribution(mode="kde").fit(uniform_samples)
        assert d.quantile(0.965) == pytest.approx(0.965 * 40.0, abs=0.4)

    def test_roundtrip_through_cdf(self, uniform_samples):
        d = EmpiricalDistribution(mode="kde").fit(uniform_samples[:2000])
        span = d.samples_[-1] - d.samples_[0]
        for x in (5.0, 17.3, 33.0):
            assert abs(d.quantile(d.cdf(x)) - x) <= 2e-9 * span

    def test_ecdf_roundtrip_is_exact_on_samples(self):
        x = np.array([3.0, 7.0, 9.0, 15.0])
        d = EmpiricalDistribution().fit(x)
        for xi in x[:-1]:  # cdf(last) = 1.0 is outside the open quantile domain
            assert d.quantile(d.cdf(xi)) == xi

    def test_nondecreasing_in_p(self, uniform_samples):
        for mode in ("ecdf", "kde"):
            d = EmpiricalDistribution(mode=mode).fit(uniform_samples[:2000])
            ps = np.linspace(0.01, 0.99, 99)
            qs = [d.quantile(p) for p in ps]
            assert np.all(np.diff(qs) >= 0.0)

    @pytest.mark.parametrize("p", [0.0, 1.0, -0.2, 1.7])
    def test_probability_domain(self, p):
        d = EmpiricalDistribution().fit([1.0, 2.0])
        with pytest.raises(ProbabilityOutOfRange):
            d.quantile(p)


class TestPartialExpectation:
    def test_counting(self):
        d = EmpiricalDistribution().fit([1.0, 2.0, 3.0])
        assert d.partial_expectation(2.5, "above") == pytest.approx(1.0)
        assert d.partial_expectation(2.5, "below") == pytest.approx(1.0)
        # tie handling: threshold on a sample point
        assert d.partial_expectation(2.0, "above") == pytest.approx(5.0 / 3.0)
        assert d.partial_expectation(2.0, "above", inclusive=False) == pytest.approx(1.0)
        assert d.partial_expectation(2.0, "below", inclusive=True) == pytest.approx(1.0)

    @pytest.mark.parametrize("mode", ["ecdf", "kde"])
    def test_partition_identity(self, mode, uniform_samples):
        d = EmpiricalDistribution(mode=mode).fit(uniform_samples[:3000])
        for t in (-5.0, 11.0, 27.5, 60.0):
            above = d.partial_expectation(t, "above")
            below = d.partial_expectation(t, "below")
            assert above + below == pytest.approx(d.mean_, rel=1e-12)

    def test_uniform_tail_integral(self, uniform_samples):
        d = EmpiricalDistribution().fit(uniform_samples)
        expected = (40.0**2 - 38.6**2) / (2.0 * 40.0)  # 1.3755
        assert d.partial_expectation(38.6, "above") == pytest.approx(expected, rel=0.02)

    def test_monotone_in_threshold(self, uniform_samples):
        d = EmpiricalDistribution().fit(uniform_samples[:2000])
        ts = np.linspace(-1.0, 45.0, 200)
        above = np.array([d.partial_expectation(t, "above") for t in ts])
        below = np.array([d.partial_expectation(t, "below") for t in ts])
        assert np.all(np.diff(above) <= 1e-12)
        assert np.all(np.diff(below) >= -1e-12)

    @pytest.mark.parametrize("mode", ["ecdf", "kde"])
    def test_hinge_expectations_match_direct_sums(self, mode):
        rng = np.random.default_rng(11)
        x = rng.lognormal(2.8, 0.5, 400)
        d = EmpiricalDistribution(mode=mode).fit(x)
        b = float(np.median(x))
        if mode == "ecdf":
            assert d.expected_shortage(b) == pytest.approx(np.mean(np.maximum(x - b, 0.0)), rel=1e-12)
            assert d.expected_surplus(b) == pytest.approx(np.mean(np.maximum(b - x, 0.0)), rel=1e-12)
        else:
            # Gaussian-smoothed hinges: oracle by dense quadrature of the mixture
            h = d.bandwidth_
            grid = np.linspace(x.min() - 8 * h, x.max() + 8 * h, 200_001)
            pdf = np.exp(-0.5 * ((grid[:, None] - x) / h) ** 2).mean(axis=1) / (h * np.sqrt(2 * np.pi))
            dz = grid[1] - grid[0]
            shortage = np.trapezoid(np.maximum(grid - b, 0.0) * pdf, dx=dz)
            surplus = np.trapezoid(np.maximum(b - grid, 0.0) * pdf, dx=dz)
            assert d.expected_shortage(b) == pytest.approx(shortage, rel=1e-6)
            assert d.expected_surplus(b) == pytest.approx(surplus, rel=1e-6)


class TestSilvermanBandwidth:
    def test_standard_normal_plugin_value(self):
        x = np.random.default_rng(0).normal(0.0, 1.0, 1000)
        expected = 0.9 * 1.0 * 1000 ** (-0.2)
        assert silverman_bandwidth(x) == pytest.approx(expected, rel=0.10)

    def test_all_equal_is_degenerate(self):
        with pytest.raises(DegenerateSamples):
            silverman_bandwidth(np.full(50, 3.0))

    def test_scaling_homogeneity(self):
        x = np.random.default_rng(1).normal(5.0, 2.0, 300)
        assert silverman_bandwidth(7.0 * x) == pytest.approx(7.0 * silverman_bandwidth(x), rel=1e-12)


class TestEstimatorApi:
    def test_get_set_params_and_clone(self):
        d = EmpiricalDistribution(mode="kde", bandwidth=1.5)
        assert d.get_params() == {"mode": "kde", "bandwidth": 1.5}
        d.set_params(bandwidth=2.0)
        copy = clone(d)
        assert copy.get_params()["bandwidth"] == 2.0

    def test_unfitted_queries_raise(self):
        d = EmpiricalDistribution()
        with pytest.raises(NotFittedError):
            d.cdf(1.0)
        with pytest.raises(NotFittedError):
            d.quantile(0.5)

    def test_fit_validates_input(self):
        with pytest.raises(ValueError):
            EmpiricalDistribution().fit([])
        with pytest.raises(ValueError):
            EmpiricalDistribution().fit([1.0, np.nan])
        with pytest.raises(ValueError):
            EmpiricalDistribution(mode="spline").fit([1.0, 2.0])
        with pytest.raises(ValueError):
            EmpiricalDistribution(mode="kde", bandwidth=0.0).fit([1.0, 2.0])

    def test_column_vector_input_accepted(self):
        d = EmpiricalDistribution().fit(np.array([[1.0], [2.0], [3.0]]))
        assert d.n_samples_ == 3
