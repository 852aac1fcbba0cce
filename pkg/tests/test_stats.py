"""
Correlation, regression and curve-estimation tests on hand-checked data
"""
import math

import numpy as np
import pytest
from scipy import stats as sps

from worldsys.analysis.stats import correlation_test, ols, p_value, pearson, poly_fit
from worldsys.utils.responses import DegenerateDataError, InputValidationError


@pytest.fixture()
def small_sample():
    """Five points with slope 0.6, intercept 2.2 and R2 0.6"""
    return [1.0, 2.0, 3.0, 4.0, 5.0], [2.0, 4.0, 5.0, 4.0, 5.0]


class TestPValue:
    """Two-tailed t probabilities"""

    @pytest.mark.parametrize("t,dof", [(2.228139, 10), (0.5, 3), (-3.1, 6), (12.0, 59)])
    def test_matches_t_distribution(self, t, dof):
        assert p_value(t, dof) == pytest.approx(2.0 * sps.t.sf(abs(t), dof), rel=1e-8)

    def test_critical_value(self):
        assert p_value(2.228139, 10) == pytest.approx(0.05, abs=1e-6)

    def test_zero_and_infinite(self):
        assert p_value(0.0, 5) == pytest.approx(1.0)
        assert p_value(math.inf, 5) == 0.0

    def test_dof_must_be_positive(self):
        with pytest.raises(InputValidationError):
            p_value(1.0, 0)

    def test_large_dof_normal_limit(self):
        assert p_value(1.96, 1_000_000) == pytest.approx(0.05, abs=5e-4)

    def test_decreasing_in_t(self):
        p = [p_value(t, 7) for t in np.linspace(0.0, 10.0, 41)]
        assert all(a > b for a, b in zip(p, p[1:]))

    def test_strong_slope_is_significant(self):
        assert p_value(8.315, 7) < 0.001


class TestCorrelation:
    """Pearson r"""

    def test_perfect(self):
        result = correlation_test([1.0, 2.0, 3.0, 4.0], [2.0, 4.0, 6.0, 8.0])
        assert result.r == pytest.approx(1.0)
        assert result.p == 0.0
        assert result.dof == 2

    def test_matches_scipy(self, small_sample):
        x, y = small_sample
        expected = sps.pearsonr(x, y)
        result = correlation_test(x, y)
        assert result.r == pytest.approx(expected[0], rel=1e-12)
        assert result.p == pytest.approx(expected[1], rel=1e-8)

    def test_constant_series(self):
        with pytest.raises(DegenerateDataError):
            pearson([1.0, 1.0, 1.0], [1.0, 2.0, 3.0])

    def test_needs_three_pairs(self):
        with pytest.raises(InputValidationError):
            pearson([1.0, 2.0], [1.0, 2.0])

    def test_unpaired(self):
        with pytest.raises(InputValidationError):
            pearson([1.0, 2.0, 3.0], [1.0, 2.0])

    def test_symmetric_and_affine_invariant(self):
        rng = np.random.default_rng(5)
        x, y = rng.standard_normal(15), rng.standard_normal(15)
        r = pearson(x, y)
        assert pearson(y, x) == pytest.approx(r, abs=1e-12)
        assert pearson(3.0 * x + 7.0, 0.5 * y - 2.0) == pytest.approx(r, abs=1e-12)
        assert pearson(-2.0 * x, y) == pytest.approx(-r, abs=1e-12)

    def test_uncorrelated(self):
        assert pearson([1.0, 2.0, 3.0], [1.0, -1.0, 1.0]) == pytest.approx(0.0, abs=1e-12)


class TestOls:
    """Simple regression with and without a constant"""

    def test_with_intercept(self, small_sample):
        x, y = small_sample
        result = ols(x, y)
        assert result.slope == pytest.approx(0.6)
        assert result.intercept == pytest.approx(2.2)
        assert result.r2 == pytest.approx(0.6)
        assert result.slope_se == pytest.approx(math.sqrt(0.08))
        assert result.dof == 3
        assert result.p_slope == pytest.approx(2.0 * sps.t.sf(0.6 / math.sqrt(0.08), 3), rel=1e-8)

    def test_against_linregress(self):
        rng = np.random.default_rng(3)
        x = rng.uniform(0.0, 10.0, 20)
        y = 1.5 * x - 4.0 + rng.standard_normal(20)
        expected = sps.linregress(x, y)
        result = ols(x, y)
        assert result.slope == pytest.approx(expected.slope, rel=1e-10)
        assert result.intercept == pytest.approx(expected.intercept, rel=1e-10)
        assert result.r == pytest.approx(expected.rvalue, rel=1e-10)
        assert result.slope_se == pytest.approx(expected.stderr, rel=1e-10)
        assert result.intercept_se == pytest.approx(expected.intercept_stderr, rel=1e-10)

    def test_exact_line(self):
        result = ols([1.0, 2.0, 3.0, 4.0], [3.0, 5.0, 7.0, 9.0])
        assert result.slope == pytest.approx(2.0)
        assert result.intercept == pytest.approx(1.0)
        assert result.r2 == pytest.approx(1.0)
        assert result.p_slope < 1e-10

    def test_through_origin(self):
        x, y = np.array([1.0, 2.0, 3.0]), np.array([2.0, 4.0, 6.5])
        result = ols(x, y, through_origin=True)
        slope = 29.5 / 14.0
        assert result.slope == pytest.approx(slope)
        assert result.intercept is None
        assert result.dof == 2
        resid = y - slope * x
        assert result.r2 == pytest.approx(1.0 - np.dot(resid, resid) / np.dot(y, y))
        report = result.to_report()
        assert "intercept" not in report
        assert "intercept" not in report["se"]

    def test_degenerate_design(self):
        with pytest.raises(DegenerateDataError):
            ols([2.0, 2.0, 2.0], [1.0, 2.0, 3.0])
        with pytest.raises(DegenerateDataError):
            ols([0.0, 0.0, 0.0], [1.0, 2.0, 3.0], through_origin=True)

    def test_through_origin_slope_on_random_data(self):
        rng = np.random.default_rng(9)
        x = rng.uniform(1.0, 100.0, 25)
        y = 0.8 * x + rng.standard_normal(25)
        result = ols(x, y, through_origin=True)
        assert result.slope == pytest.approx(np.dot(x, y) / np.dot(x, x), rel=1e-12)

    def test_shift_invariance(self):
        rng = np.random.default_rng(13)
        x = rng.uniform(0.0, 10.0, 12)
        y = 2.0 * x + 1.0 + rng.standard_normal(12)
        base = ols(x, y)
        shifted_x = ols(x + 50.0, y)
        assert shifted_x.slope == pytest.approx(base.slope, rel=1e-9)
        assert shifted_x.intercept == pytest.approx(base.intercept - 50.0 * base.slope, rel=1e-9)
        shifted_y = ols(x, y + 50.0)
        assert shifted_y.slope == pytest.approx(base.slope, rel=1e-9)
        assert shifted_y.intercept == pytest.approx(base.intercept + 50.0, rel=1e-9)


class TestPolyFit:
    """Linear and quadratic curve estimation"""

    def test_exact_quadratic(self):
        x = np.arange(6.0)
        y = 1.0 + 2.0 * x + 3.0 * x ** 2
        result = poly_fit(x, y, 2)
        np.testing.assert_allclose(result.coefficients, [1.0, 2.0, 3.0], atol=1e-8)
        assert result.r2 == pytest.approx(1.0)

    def test_large_x_scale(self):
        """Population-sized regressors stay well conditioned"""
        x = np.linspace(200.0, 4000.0, 10)
        y = 50.0 + 0.1 * x + 0.001 * x ** 2
        result = poly_fit(x, y, 2)
        np.testing.assert_allclose(result.coefficients, [50.0, 0.1, 0.001], rtol=1e-6)

    def test_linear_f_test(self, small_sample):
        x, y = small_sample
        result = poly_fit(x, y, 1)
        assert result.r2 == pytest.approx(0.6)
        np.testing.assert_allclose(result.coefficients, [2.2, 0.6])
        # with one regressor F equals t squared
        assert result.f_stat == pytest.approx(0.6 ** 2 / 0.08)
        assert result.p_value == pytest.approx(ols(x, y).p_slope, rel=1e-8)

    def test_quadratic_beats_linear_on_curved_data(self):
        x = np.linspace(1.0, 10.0, 10)
        y = x ** 2
        assert poly_fit(x, y, 2).r2 > poly_fit(x, y, 1).r2

    def test_constant_x(self):
        with pytest.raises(DegenerateDataError):
            poly_fit([1.0, 1.0, 1.0, 1.0], [1.0, 2.0, 3.0, 4.0], 2)

    def test_unsupported_degree(self):
        with pytest.raises(InputValidationError):
            poly_fit([1.0, 2.0, 3.0, 4.0, 5.0], [1.0, 2.0, 3.0, 4.0, 5.0], 3)

    def test_symmetric_parabola_has_no_linear_trend(self):
        x = np.arange(-2.0, 3.0)
        result = poly_fit(x, x ** 2, 1)
        assert result.coefficients[1] == pytest.approx(0.0, abs=1e-12)
        assert result.r2 == pytest.approx(0.0, abs=1e-12)

    def test_quadratic_never_worse(self):
        rng = np.random.default_rng(21)
        x, y = rng.uniform(0.0, 5.0, 12), rng.standard_normal(12)
        assert poly_fit(x, y, 2).r2 >= poly_fit(x, y, 1).r2 - 1e-12
