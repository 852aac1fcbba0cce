"""
Dynamical system tests: compact model, Kremer systems and baselines
"""
import math

import numpy as np
import pytest
from pydantic import ValidationError

from worldsys.models.dynamics import (
    balanced_technology,
    bernoulli_closed_form,
    bernoulli_integration_constant,
    bernoulli_surplus,
    coalition_rate,
    coalition_singularity_year,
    compact_increments,
    equilibrium_population,
    gdp_from_surplus,
    limiting_surplus,
    logistic_closed_form,
    simulate_coalition,
    simulate_compact,
    simulate_exponential_tech,
    simulate_kuznetsian,
    simulate_logistic,
    surplus_of,
)
from worldsys.models.integrators import OVERFLOW_GUARD, integrate
from worldsys.schemas.simulation import (
    CoalitionParams,
    CompactModelParams,
    Integrator,
    KremerParams,
    LogisticParams,
)
from worldsys.utils.responses import (
    BlowUpError,
    InputValidationError,
    NegativeSurplusError,
    NumericalAbort,
)


@pytest.fixture()
def compact_calibrated():
    """Compact model with a refitted to the bundled dataset"""
    return CompactModelParams(a=9.124e-6, N0=230.82, S0=4.225)


@pytest.fixture()
def kuznetsian():
    """Kuznetsian system started on the g_bar = 460 equilibrium"""
    return KremerParams(alpha=0.5, r_tech=1.0, tech_coef=1e-5, a=1e-4, m=440.0,
                        g_bar=460.0, N0=100.0, T0=4600.0)


def exptech(N0=100.0, S0=10.0, c=0.01):
    return KremerParams(alpha=0.5, r_tech=1.0, tech_coef=c, a=1e-4, m=440.0,
                        N0=N0, T0=(440.0 + S0) * math.sqrt(N0))


class TestIntegrators:
    """Shared fixed-step driver"""

    def test_exponential_rk4(self):
        result = integrate(lambda t, y: y, [1.0], 0.0, 1.0, Integrator.RK4, step=0.01)
        assert result.final_state[0] == pytest.approx(math.e, rel=1e-9)
        assert not result.aborted

    def test_partial_last_step(self):
        result = integrate(lambda t, y: np.ones_like(y), [0.0], 0.0, 2.5,
                           Integrator.EULER_ANNUAL)
        assert result.times[-1] == pytest.approx(2.5)
        assert result.final_state[0] == pytest.approx(2.5)

    def test_guard_stops_run(self):
        result = integrate(lambda t, y: y * y, [1.0], 0.0, 5.0, Integrator.RK4, guard=1e6)
        assert result.aborted
        assert result.abort_reason == "blow-up"
        assert result.abort_year < 2.0

    def test_guard_keeps_trace_inside(self):
        """The step that crossed the guard is not stored"""
        result = integrate(lambda t, y: y * y, [1.0], 0.0, 5.0, Integrator.RK4, guard=1e6)
        assert np.all(np.abs(result.states) <= 1e6)
        assert np.all(np.isfinite(result.states))
        assert result.times[-1] == result.abort_year

    def test_check_abort_ends_on_last_valid_state(self):
        def positive(t, y):
            return "non-positive" if y[0] <= 0 else None

        result = integrate(lambda t, y: -np.ones_like(y), [1.5], 0.0, 10.0,
                           Integrator.EULER_ANNUAL, step=1.0, check=positive)
        assert result.abort_reason == "non-positive"
        assert result.abort_year == 1.0
        np.testing.assert_allclose(result.times, [0.0, 1.0])
        assert np.all(result.states > 0)

    def test_abort_between_stored_rows(self):
        def positive(t, y):
            return "non-positive" if y[0] <= 0 else None

        result = integrate(lambda t, y: -np.ones_like(y), [3.5], 0.0, 10.0,
                           Integrator.EULER_ANNUAL, step=1.0, stride=2.0, check=positive)
        np.testing.assert_allclose(result.times, [0.0, 2.0, 3.0])
        assert result.abort_year == 3.0
        assert result.final_state[0] == pytest.approx(0.5)

    def test_rk4_fourth_order(self):
        """Error of N' = N^2/1000 from 1000 to 1800 drops about 16x per halving"""
        def rhs(t, y):
            return y * y / 1000.0

        errors = [abs(integrate(rhs, [1.0], 1000.0, 1800.0, Integrator.RK4, step=h).final_state[0] - 5.0)
                  for h in (20.0, 10.0, 5.0)]
        for coarse, fine in zip(errors, errors[1:]):
            assert math.log2(coarse / fine) == pytest.approx(4.0, abs=0.3)

    def test_stride(self):
        result = integrate(lambda t, y: y, [1.0], 0.0, 10.0, Integrator.RK4, step=0.5, stride=2.0)
        np.testing.assert_allclose(result.times, [0, 2, 4, 6, 8, 10])

    def test_stride_not_multiple(self):
        with pytest.raises(InputValidationError):
            integrate(lambda t, y: y, [1.0], 0.0, 10.0, Integrator.RK4, step=0.3, stride=1.0)

    def test_bad_span(self):
        with pytest.raises(InputValidationError):
            integrate(lambda t, y: y, [1.0], 5.0, 5.0)


class TestCompactModel:
    """dN/dt = aSN, dS/dt = b*N*S"""

    def test_increment_ratio(self, compact_calibrated):
        dN, dS = compact_increments(compact_calibrated, 1000.0, 50.0)
        assert dN / dS == pytest.approx(1.0 / 0.96, rel=1e-12)
        assert dN == pytest.approx(9.124e-6 * 1000.0 * 50.0)

    def test_synchronous_euler_step(self):
        p = CompactModelParams.published(t_end=2.0)
        trace = simulate_compact(p)
        growth = p.a * p.N0 * p.S0
        assert trace.N[-1] == pytest.approx(p.N0 + growth, rel=1e-12)
        assert trace.S[-1] == pytest.approx(p.S0 + 0.96 * growth, rel=1e-12)

    def test_published_first_step(self):
        trace = simulate_compact(CompactModelParams.published(t_end=2.0))
        assert trace.N[-1] == pytest.approx(230.8311, abs=1e-4)
        assert trace.S[-1] == pytest.approx(4.23566, abs=1e-5)

    def test_vanishing_surplus(self):
        """With S0 near zero N barely moves while S grows at about 0.96*a*N0"""
        p = CompactModelParams.published(t_end=1001.0).model_copy(update={"S0": 1e-9})
        trace = simulate_compact(p)
        np.testing.assert_allclose(trace.column("N"), p.N0, rtol=1e-6)
        rate = math.log(trace.S[-1] / trace.S[0]) / 1000.0
        assert rate == pytest.approx(0.96 * p.a * p.N0, rel=1e-2)

    def test_euler_first_order(self):
        """Euler error against an RK4 reference halves with the step"""
        p = CompactModelParams(a=9.124e-6, N0=230.82, S0=4.225, t_end=1501.0)
        reference = simulate_compact(p, Integrator.RK4, step=0.25).N[-1]
        errors = [abs(simulate_compact(p, Integrator.EULER_ANNUAL, step=h).N[-1] - reference)
                  for h in (4.0, 2.0, 1.0)]
        for coarse, fine in zip(errors, errors[1:]):
            assert 1.7 <= coarse / fine <= 2.3

    @pytest.mark.parametrize("integrator", [Integrator.EULER_ANNUAL, Integrator.RK4])
    def test_linear_invariant(self, compact_calibrated, integrator):
        """S - b_ratio*N stays at its initial value"""
        trace = simulate_compact(compact_calibrated, integrator=integrator)
        drift = trace.column("S") - 0.96 * trace.column("N")
        np.testing.assert_allclose(drift, 4.225 - 0.96 * 230.82, atol=1e-6)

    def test_gdp_identity(self, compact_calibrated):
        trace = simulate_compact(compact_calibrated)
        N, S, G = trace.column("N"), trace.column("S"), trace.column("G")
        np.testing.assert_allclose(G, (440.0 * N + S * N) / 1000.0, rtol=1e-12)
        assert gdp_from_surplus(np.array([1000.0]), np.array([560.0]), 440.0)[0] == pytest.approx(1000.0)

    def test_calibrated_reaches_1973(self, compact_calibrated):
        trace = simulate_compact(compact_calibrated)
        assert not trace.aborted
        assert trace.years[-1] == 1973.0
        assert len(trace) == 1973
        assert 2000.0 < trace.N[-1] < 6000.0
        sample = trace.sample([1, 1000, 1973])
        assert sample["N"][0] == pytest.approx(230.82)

    def test_published_constants_blow_up(self):
        with pytest.raises(BlowUpError) as exc:
            simulate_compact(CompactModelParams.published())
        assert 1590 <= exc.value.year <= 1640
        assert exc.value.trace is not None
        assert exc.value.trace.aborted
        assert exc.value.trace.years[-1] == exc.value.year
        assert exc.value.exit_code == 6
        values = np.concatenate([exc.value.trace.column("N"), exc.value.trace.column("S")])
        assert values.max() <= OVERFLOW_GUARD
        assert np.all(values > 0)

    def test_trace_increments_per_step(self, compact_calibrated):
        """Each annual row moves by a*N*S and 0.96*a*N*S from the previous one"""
        trace = simulate_compact(compact_calibrated, Integrator.EULER_ANNUAL)
        N, S = trace.column("N"), trace.column("S")
        growth = 9.124e-6 * N[:-1] * S[:-1]
        np.testing.assert_allclose(np.diff(N), growth, rtol=1e-9)
        np.testing.assert_allclose(np.diff(S), 0.96 * growth, rtol=1e-9)

    def test_invalid_params(self):
        with pytest.raises(ValidationError):
            CompactModelParams(a=-1.0, N0=1.0, S0=1.0)
        with pytest.raises(ValidationError):
            CompactModelParams(a=1e-5, N0=1.0, S0=1.0, t_start=10, t_end=5)


class TestKuznetsian:
    """Malthusian population with Kuznetsian technology"""

    def test_equilibrium_helpers(self, kuznetsian):
        assert balanced_technology(kuznetsian) == pytest.approx(4600.0)
        assert equilibrium_population(4600.0, 460.0, 0.5) == pytest.approx(100.0)
        assert surplus_of(kuznetsian, 100.0, 4600.0) == pytest.approx(20.0)

    def test_equilibrium_needs_alpha_below_one(self):
        with pytest.raises(InputValidationError):
            equilibrium_population(4600.0, 460.0, 1.0)

    def test_equilibrium_scaling(self):
        assert equilibrium_population(9200.0, 460.0, 0.5) == pytest.approx(4.0 * 100.0)
        assert equilibrium_population(460.0, 460.0, 0.3) == pytest.approx(1.0)

    def test_gdp_identity(self, kuznetsian):
        trace = simulate_kuznetsian(kuznetsian, (0.0, 200.0))
        N, S, G = trace.column("N"), trace.column("S"), trace.column("G")
        np.testing.assert_allclose(1000.0 * G, 440.0 * N + S * N, rtol=1e-9)
        assert np.all(S > 0)

    def test_surplus_tracks_population(self, kuznetsian):
        trace = simulate_kuznetsian(kuznetsian, (0.0, 400.0))
        years = np.asarray(trace.years)
        keep = years >= 40.0
        corr = np.corrcoef(trace.column("S")[keep], trace.column("N")[keep])[0, 1]
        assert corr > 0.999
        assert np.all(np.diff(trace.column("N")) > 0)
        assert np.all(np.diff(trace.column("T")) > 0)

    def test_frozen_technology_converges(self, kuznetsian):
        """b = 0 settles at N = (r*T/m)^(1/(1-alpha))"""
        frozen = kuznetsian.model_copy(update={"tech_coef": 0.0})
        trace = simulate_kuznetsian(frozen, (0.0, 600.0))
        assert trace.N[-1] == pytest.approx((4600.0 / 440.0) ** 2, rel=1e-5)
        assert trace.T[-1] == 4600.0
        assert 0 < trace.S[-1] < 1e-3

    def test_instantaneous_is_hyperbolic(self, kuznetsian):
        """1/N falls linearly at rate b/(1-alpha)"""
        trace = simulate_kuznetsian(kuznetsian, (0.0, 300.0), instantaneous=True)
        N = trace.column("N")
        dt = np.diff(np.asarray(trace.years))
        rate = (N[1:] - N[:-1]) / (dt * N[:-1] * N[1:])
        np.testing.assert_allclose(rate, 1e-5 / 0.5, rtol=0.01)
        np.testing.assert_allclose(trace.column("S"), 20.0)
        assert trace.metadata["instantaneous"] is True
        assert trace.N[-1] == pytest.approx(250.0, rel=1e-4)

    def test_negative_initial_surplus(self, kuznetsian):
        poor = kuznetsian.model_copy(update={"T0": 4000.0})
        with pytest.raises(NegativeSurplusError) as exc:
            simulate_kuznetsian(poor, (0.0, 100.0))
        assert exc.value.year == 0.0


class TestExponentialTechnology:
    """Exogenous technology T0*exp(c*t)"""

    def test_limiting_surplus_value(self):
        assert limiting_surplus(exptech()) == pytest.approx(200.0)

    def test_limit_linear_in_rate(self):
        assert limiting_surplus(exptech(c=0.02)) == pytest.approx(2.0 * limiting_surplus(exptech(c=0.01)))

    @pytest.mark.parametrize("N0,S0", [(50.0, 1.0), (100.0, 10.0), (200.0, 100.0), (500.0, 500.0)])
    def test_surplus_converges(self, N0, S0):
        trace = simulate_exponential_tech(exptech(N0, S0), (0.0, 600.0))
        assert trace.S[-1] == pytest.approx(200.0, rel=1e-3)
        assert trace.metadata["limiting_surplus"] == pytest.approx(200.0)

    def test_limit_independent_of_start(self):
        rng = np.random.default_rng(11)
        for N0, S0, c in zip(rng.uniform(50.0, 500.0, 10), rng.uniform(1.0, 500.0, 10),
                             rng.uniform(0.005, 0.015, 10)):
            trace = simulate_exponential_tech(exptech(N0, S0, c), (0.0, 600.0))
            assert trace.S[-1] == pytest.approx(c / (0.5 * 1e-4), rel=1e-3)

    def test_zero_rate_matches_frozen_kuznetsian(self, kuznetsian):
        frozen = kuznetsian.model_copy(update={"tech_coef": 0.0})
        a = simulate_exponential_tech(frozen, (0.0, 200.0))
        b = simulate_kuznetsian(frozen, (0.0, 200.0))
        np.testing.assert_allclose(a.column("N"), b.column("N"), rtol=1e-12)

    def test_closed_form_matches_numeric(self):
        p = exptech()
        C = bernoulli_integration_constant(p)
        assert bernoulli_closed_form(p, C, 0.0) == pytest.approx(p.N0, rel=1e-12)
        trace = simulate_exponential_tech(p, (0.0, 300.0))
        sample = trace.sample([100.0, 300.0])
        np.testing.assert_allclose(bernoulli_closed_form(p, C, sample["years"]), sample["N"], rtol=1e-6)

    def test_closed_form_surplus(self):
        p = exptech(S0=10.0)
        C = bernoulli_integration_constant(p)
        assert bernoulli_surplus(p, C, 0.0) == pytest.approx(10.0, rel=1e-9)
        sample = simulate_exponential_tech(p, (0.0, 300.0)).sample([100.0, 300.0])
        np.testing.assert_allclose(bernoulli_surplus(p, C, sample["years"]), sample["S"], rtol=1e-4)

    def test_closed_form_over_five_centuries(self):
        p = exptech(N0=100.0, S0=10.0)
        C = bernoulli_integration_constant(p)
        trace = simulate_exponential_tech(p, (0.0, 500.0))
        np.testing.assert_allclose(bernoulli_closed_form(p, C, trace.column("years")),
                                   trace.column("N"), rtol=1e-6)

    def test_negative_initial_surplus(self):
        p = KremerParams(alpha=0.5, r_tech=1.0, tech_coef=0.01, a=1e-4, N0=100.0, T0=4000.0)
        with pytest.raises(NegativeSurplusError):
            simulate_exponential_tech(p, (0.0, 10.0))


class TestBaselines:
    """Logistic and coalition growth"""

    def test_logistic_matches_closed_form(self):
        p = LogisticParams(a1=0.03, a2=0.01, b=2e-5, N0=500.0, t_end=300.0)
        trace = simulate_logistic(p)
        assert p.K == pytest.approx(1000.0)
        sample = trace.sample([50.0, 300.0])
        np.testing.assert_allclose(logistic_closed_form(p, sample["years"]), sample["N"], rtol=1e-8)
        assert trace.N[-1] == pytest.approx(1000.0, rel=1e-2)

    def test_logistic_zero_net_rate(self):
        p = LogisticParams(a1=0.01, a2=0.01, b=1e-3, N0=10.0)
        assert logistic_closed_form(p, 100.0) == pytest.approx(10.0 / 2.0)

    def test_logistic_rates_ordered(self):
        with pytest.raises(ValidationError):
            LogisticParams(a1=0.01, a2=0.02, b=1e-3, N0=10.0)

    def test_logistic_fixed_point(self):
        p = LogisticParams(a1=0.03, a2=0.01, b=2e-5, N0=1000.0, t_end=200.0)
        np.testing.assert_allclose(simulate_logistic(p).column("N"), 1000.0, rtol=1e-12)

    def test_logistic_half_capacity(self):
        p = LogisticParams(a1=0.03, a2=0.01, b=2e-5, N0=500.0, t_end=1000.0)
        trace = simulate_logistic(p)
        assert np.all(np.diff(trace.column("N")) > 0)
        assert trace.sample([1000.0])["N"][0] == pytest.approx(1000.0, rel=1e-3)

    def test_logistic_decay(self):
        p = LogisticParams(a1=0.01, a2=0.01, b=1e-3, N0=10.0)
        assert np.all(np.diff(simulate_logistic(p).column("N")) < 0)

    def test_coalition_unit_exponent_is_hyperbola(self):
        """k = 1, a0 = 1/C reproduces C/(t0 - t)"""
        p = CoalitionParams(a0=1e-3, k=1.0, N0=1.0, t_start=1000.0, t_end=1800.0)
        trace = simulate_coalition(p)
        sample = trace.sample([1500.0, 1800.0])
        np.testing.assert_allclose(sample["N"], 1000.0 / (2000.0 - sample["years"]), rtol=1e-6)

    def test_coalition_rate_at_unit_population(self):
        p = CoalitionParams(a0=0.02, k=0.05, N0=1.0)
        assert coalition_rate(p, 1.0) == pytest.approx(0.02)

    def test_singularity_year(self):
        year = coalition_singularity_year(5.5e-12, 0.99, 2.1664e9, 1960.0)
        assert 2026.0 < year < 2028.0

    def test_coalition_blows_up(self):
        p = CoalitionParams.von_foerster()
        with pytest.raises(BlowUpError) as exc:
            simulate_coalition(p)
        assert 2020.0 <= exc.value.year <= 2035.0
        assert isinstance(exc.value, NumericalAbort)
        partial = exc.value.trace
        assert partial.metadata["singularity_year"] == pytest.approx(2026.87, abs=0.1)
        assert np.all(np.diff(partial.column("N")) > 0)

    def test_coalition_before_singularity(self):
        p = CoalitionParams.von_foerster().model_copy(update={"t_end": 2000.0})
        trace = simulate_coalition(p)
        exact = (p.N0 ** (-1.0 / p.k) - p.a0 * 40.0 / p.k) ** (-p.k)
        assert trace.N[-1] == pytest.approx(exact, rel=1e-6)
