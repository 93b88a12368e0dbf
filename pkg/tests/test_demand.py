"""Tests for the synthetic demand generators."""

import math

import numpy as np
import pytest
from scipy import stats

from intermittency.demand import (
    DemandScenario,
    LogarithmicDist,
    ScenarioKind,
    demand_probability_at,
    derive_run_rng,
    generate_series,
)


class TestLogarithmicDist:
    def test_parameter_validation(self):
        for bad in (0.0, 1.0, -0.3, 1.7):
            with pytest.raises(ValueError):
                LogarithmicDist(bad)
        LogarithmicDist(0.5)  # ok

    def test_pmf_values(self):
        # direct evaluation: -ell / ln(1 - ell) at k = 1
        assert LogarithmicDist(0.9).pmf(1) == pytest.approx(0.3908650337129267, abs=1e-12)
        assert LogarithmicDist(0.001).pmf(1) == pytest.approx(0.9994999166249727, abs=1e-12)

    def test_pmf_rejects_bad_k(self):
        d = LogarithmicDist(0.9)
        with pytest.raises(ValueError):
            d.pmf(0)
        with pytest.raises(ValueError):
            d.pmf(-3)

    def test_pmf_normalises(self):
        d = LogarithmicDist(0.9)
        total = sum(d.pmf(k) for k in range(1, 501))
        assert total == pytest.approx(1.0, abs=1e-9)

    def test_low_ell_almost_always_one(self):
        d = LogarithmicDist(0.001)
        p1 = d.pmf(1)
        for seed in (0, 7, 123):
            rng = np.random.default_rng(seed)
            n = 100_000
            ones = sum(d.sample(rng) == 1 for _ in range(n))
            sigma = math.sqrt(n * p1 * (1 - p1))
            assert abs(ones - n * p1) < 3 * sigma

    def test_lumpy_mean_and_histogram(self):
        d = LogarithmicDist(0.9)
        rng = np.random.default_rng(2024)
        n = 1_000_000
        draws = np.fromiter((d.sample(rng) for _ in range(n)), dtype=np.int64, count=n)
        assert draws.min() >= 1
        assert draws.mean() == pytest.approx(d.mean(), rel=0.01)

        # chi-square goodness of fit against the pmf, tail pooled
        kmax = 40
        observed = np.bincount(np.minimum(draws, kmax + 1), minlength=kmax + 2)[1:]
        expected = np.array([d.pmf(k) for k in range(1, kmax + 1)]) * n
        expected = np.append(expected, n - expected.sum())
        _, pvalue = stats.chisquare(observed, expected)
        assert pvalue > 0.001

    def test_same_seed_same_draws(self):
        d = LogarithmicDist(0.9)
        rng_a = np.random.default_rng(99)
        rng_b = np.random.default_rng(99)
        a = [d.sample(rng_a) for _ in range(50)]
        b = [d.sample(rng_b) for _ in range(50)]
        assert a == b
        assert len(set(a)) > 1  # the stream actually varies


class TestProbabilitySchedule:
    def scenario(self, kind, p0=0.5, init_len=10, eval_len=20):
        return DemandScenario(kind, p0, LogarithmicDist(0.9), init_len, eval_len)

    def test_stationary_constant(self):
        s = self.scenario(ScenarioKind.STATIONARY)
        assert all(demand_probability_at(s, t) == 0.5 for t in range(s.length))

    def test_linear_decrease_endpoints(self):
        s = self.scenario(ScenarioKind.LINEAR_DECREASE, p0=0.2)
        assert demand_probability_at(s, s.init_len) == pytest.approx(0.2)
        assert demand_probability_at(s, s.length - 1) == 0.0
        # initialisation window stays at p0
        assert demand_probability_at(s, 0) == 0.2
        mid = s.init_len + (s.eval_len - 1) // 2
        assert 0.0 < demand_probability_at(s, mid) < 0.2

    def test_linear_decrease_single_eval_period(self):
        s = self.scenario(ScenarioKind.LINEAR_DECREASE, init_len=4, eval_len=1)
        assert demand_probability_at(s, 4) == 0.0

    def test_sudden_cut_at_half(self):
        s = self.scenario(ScenarioKind.SUDDEN_OBSOLESCENCE, p0=0.5, init_len=8, eval_len=20)
        cut = s.init_len + s.eval_len // 2
        assert demand_probability_at(s, cut - 1) == 0.5
        assert demand_probability_at(s, cut) == 0.0
        assert demand_probability_at(s, s.init_len + (3 * s.eval_len) // 4) == 0.0

    def test_out_of_range_rejected(self):
        s = self.scenario(ScenarioKind.STATIONARY)
        with pytest.raises(ValueError):
            demand_probability_at(s, -1)
        with pytest.raises(ValueError):
            demand_probability_at(s, s.length)

    def test_scenario_validation(self):
        with pytest.raises(ValueError):
            self.scenario(ScenarioKind.STATIONARY, p0=0.0)
        with pytest.raises(ValueError):
            self.scenario(ScenarioKind.STATIONARY, p0=1.5)
        with pytest.raises(ValueError):
            self.scenario(ScenarioKind.STATIONARY, eval_len=0)
        with pytest.raises(ValueError):
            self.scenario(ScenarioKind.STATIONARY, init_len=-1)


class TestGenerateSeries:
    def test_stationary_frequency_and_sizes(self):
        n = 100_000
        s = DemandScenario(ScenarioKind.STATIONARY, 0.5, LogarithmicDist(0.001), 0, n)
        series = generate_series(s, np.random.default_rng(5))
        nonzero = np.count_nonzero(series)
        sigma = math.sqrt(n * 0.25)
        assert abs(nonzero - n * 0.5) < 3 * sigma
        values = series[series > 0]
        assert values.min() >= 1
        assert np.mean(values == 1) > 0.99

    def test_sudden_tail_is_all_zero(self):
        s = DemandScenario(ScenarioKind.SUDDEN_OBSOLESCENCE, 0.9, LogarithmicDist(0.9), 50, 100)
        series = generate_series(s, np.random.default_rng(3))
        cut = 50 + 100 // 2
        assert np.all(series[cut:] == 0)
        assert np.any(series[:cut] > 0)

    def test_pure_function_of_seed(self):
        s = DemandScenario(ScenarioKind.LINEAR_DECREASE, 0.4, LogarithmicDist(0.9), 100, 100)
        a = generate_series(s, np.random.default_rng(11))
        b = generate_series(s, np.random.default_rng(11))
        c = generate_series(s, np.random.default_rng(12))
        assert np.array_equal(a, b)
        assert not np.array_equal(a, c)

    def test_length_and_dtype(self):
        s = DemandScenario(ScenarioKind.STATIONARY, 0.3, LogarithmicDist(0.5), 7, 13)
        series = generate_series(s, np.random.default_rng(0))
        assert series.shape == (20,)
        assert series.dtype == np.int64
        assert series.min() >= 0


def test_derive_run_rng_is_order_independent():
    seed = 987654321
    first = [derive_run_rng(seed, r).random() for r in (0, 1, 2, 3)]
    again = [derive_run_rng(seed, r).random() for r in (3, 1, 0, 2)]
    assert first[3] == again[0]
    assert first[1] == again[1]
    assert first[0] == again[2]
    assert first[2] == again[3]
