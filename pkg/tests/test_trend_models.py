"""
Blow-up trend evaluation and ODE form tests
"""
import numpy as np
import pytest

from worldsys.models.trend import (
    eval_trend,
    integrate_trend,
    surplus_product_trend,
    surplus_trend,
    trend_ode_rhs,
)
from worldsys.schemas.fit import TrendParams
from worldsys.schemas.simulation import Integrator
from worldsys.utils.responses import InputValidationError, TrendDomainError


@pytest.fixture()
def hyperbola():
    """C/(t0 - t) with N = 1 at t = 1000"""
    return TrendParams(C=1000.0, t0=2000.0, k=1.0)


class TestEvalTrend:
    """Closed-form evaluation"""

    def test_known_values(self, hyperbola):
        assert eval_trend(hyperbola, 1000.0) == pytest.approx(1.0)
        assert eval_trend(hyperbola, 1999.0) == pytest.approx(1000.0)

    def test_quadratic(self):
        p = TrendParams(C=1e6, t0=2000.0, k=2.0)
        assert eval_trend(p, 1000.0) == pytest.approx(1.0)
        assert eval_trend(p, 1990.0) == pytest.approx(1e4)

    def test_array_input(self, hyperbola):
        values = eval_trend(hyperbola, np.array([1000.0, 1500.0, 1900.0]))
        np.testing.assert_allclose(values, [1.0, 2.0, 10.0])

    def test_monotone_before_singularity(self, hyperbola):
        values = eval_trend(hyperbola, np.arange(1000.0, 1999.0))
        assert np.all(np.diff(values) > 0)

    @pytest.mark.parametrize("t", [2000.0, 2001.0])
    def test_at_or_past_singularity(self, hyperbola, t):
        with pytest.raises(TrendDomainError):
            eval_trend(hyperbola, t)

    def test_array_crossing_singularity(self, hyperbola):
        with pytest.raises(TrendDomainError):
            eval_trend(hyperbola, np.array([1990.0, 2005.0]))

    def test_invalid_params(self):
        with pytest.raises(ValueError):
            TrendParams(C=-1.0, t0=2000.0)
        with pytest.raises(ValueError):
            TrendParams(C=1.0, t0=2000.0, k=0.0)


class TestTrendOde:
    """dN/dt expressed through N"""

    def test_hyperbolic_rhs(self, hyperbola):
        assert trend_ode_rhs(hyperbola, 1.0) == pytest.approx(0.001)
        assert trend_ode_rhs(hyperbola, 10.0) == pytest.approx(0.1)

    def test_matches_time_derivative(self):
        """k*C/(t0-t)^(k+1) equals the N-form for general k"""
        p = TrendParams(C=1e6, t0=2000.0, k=2.0)
        t = 1000.0
        analytic = p.k * p.C / (p.t0 - t) ** (p.k + 1)
        assert trend_ode_rhs(p, eval_trend(p, t)) == pytest.approx(analytic, rel=1e-12)

    def test_negative_population(self, hyperbola):
        with pytest.raises(TrendDomainError):
            trend_ode_rhs(hyperbola, -1.0)


class TestIntegrateTrend:
    """Numerical integration of the ODE form"""

    def test_euler_converges_first_order(self, hyperbola):
        exact = eval_trend(hyperbola, 1800.0)
        errors = [
            abs(integrate_trend(hyperbola, 1000.0, 1800.0, Integrator.EULER_ANNUAL, step=h) - exact)
            for h in (16.0, 8.0, 4.0, 2.0)
        ]
        assert all(later < earlier for earlier, later in zip(errors, errors[1:]))
        assert errors[-2] / errors[-1] == pytest.approx(2.0, rel=0.25)

    def test_rk4_accuracy(self, hyperbola):
        value = integrate_trend(hyperbola, 1000.0, 1800.0, Integrator.RK4, step=1.0)
        assert value == pytest.approx(5.0, rel=1e-6)

    def test_quadratic_rk4(self):
        p = TrendParams(C=1e6, t0=2000.0, k=2.0)
        value = integrate_trend(p, 1000.0, 1900.0)
        assert value == pytest.approx(eval_trend(p, 1900.0), rel=1e-6)

    def test_end_past_singularity(self, hyperbola):
        with pytest.raises(TrendDomainError):
            integrate_trend(hyperbola, 1000.0, 2000.0)


class TestSurplusTrends:
    """S and S*N rebuilt from the population hyperbola and the S/N ratio"""

    def test_surplus_is_scaled_population(self, hyperbola):
        years = np.array([1000.0, 1500.0, 1900.0])
        np.testing.assert_allclose(eval_trend(surplus_trend(hyperbola, 0.8), years),
                                   0.8 * eval_trend(hyperbola, years), rtol=1e-12)

    def test_product_is_surplus_times_population(self, hyperbola):
        years = np.array([1000.0, 1500.0, 1900.0])
        product = eval_trend(surplus_product_trend(hyperbola, 0.8), years)
        np.testing.assert_allclose(product, eval_trend(surplus_trend(hyperbola, 0.8), years)
                                   * eval_trend(hyperbola, years), rtol=1e-12)
        np.testing.assert_allclose(product, 0.8 * 1000.0 ** 2 / (2000.0 - years) ** 2, rtol=1e-12)

    def test_product_doubles_exponent(self):
        p = TrendParams(C=1e6, t0=2000.0, k=2.0)
        product = surplus_product_trend(p, 0.5)
        assert product.k == 4.0
        assert product.t0 == 2000.0

    @pytest.mark.parametrize("ratio", [0.0, -0.8])
    def test_ratio_must_be_positive(self, hyperbola, ratio):
        with pytest.raises(InputValidationError):
            surplus_trend(hyperbola, ratio)
        with pytest.raises(InputValidationError):
            surplus_product_trend(hyperbola, ratio)
