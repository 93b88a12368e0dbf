"""Tests for the forecaster state machines.

Hand-applied single updates first, then randomized property checks, then the
geometric-enumeration unbiasedness oracle for the linear-decay method.
"""

import math

import numpy as np
import pytest

from intermittency.forecasters import (
    ForecasterKind,
    ForecasterState,
    SmoothingParams,
    forecaster_init,
)

K = ForecasterKind

ALL_KINDS = list(K)
CROSTON_LIKE = [K.CR, K.SBA, K.SY, K.HES, K.LES]


def make(kind, alpha=0.1, beta=0.1, **state):
    st = forecaster_init(kind, SmoothingParams(alpha, beta))
    for name, value in state.items():
        setattr(st, name, value)
    return st


class TestParams:
    def test_validation(self):
        for a, b in ((0.0, 0.1), (1.0, 0.1), (0.1, 0.0), (0.1, 1.0), (-0.2, 0.5)):
            with pytest.raises(ValueError):
                SmoothingParams(a, b)

    def test_negative_demand_rejected(self):
        st = make(K.CR)
        with pytest.raises(ValueError):
            st.step(-1)


class TestInit:
    def test_unit_state(self):
        st = make(K.LES)
        assert (st.y_hat, st.tau_hat, st.tau, st.f) == (1.0, 1.0, 1, 1.0)

    def test_sba_initial_forecast(self):
        assert make(K.SBA, beta=0.2).f == pytest.approx(0.9)

    def test_tsb_initial_probability(self):
        st = make(K.TSB)
        assert st.p_hat == 1.0 and st.f == 1.0

    def test_all_kinds_unit_forecast_except_sba(self):
        for kind in ALL_KINDS:
            f0 = make(kind, beta=0.3).f
            expected = 0.85 if kind is K.SBA else 1.0
            assert f0 == pytest.approx(expected)


class TestSingleUpdates:
    def test_ses_zero(self):
        st = make(K.SES)
        assert st.step(0) == pytest.approx(0.9)

    def test_ses_fixed_point(self):
        st = make(K.SES)
        assert st.step(1) == 1.0

    def test_ses_geometric_decay(self):
        st = make(K.SES, alpha=0.3, y_hat=2.5, f=2.5)
        for _ in range(17):
            f = st.step(0)
        assert f == pytest.approx(2.5 * 0.7 ** 17, rel=1e-12)

    def test_cr_demand_update(self):
        st = make(K.CR, tau=1)
        f = st.step(5)
        assert st.y_hat == pytest.approx(1.4)
        assert st.tau_hat == pytest.approx(1.0)
        assert f == pytest.approx(1.4)
        assert st.tau == 1

    def test_sba_demand_update(self):
        st = make(K.SBA)
        assert st.step(5) == pytest.approx(1.33)

    def test_sy_matches_formula(self):
        st = make(K.SY, beta=0.2)
        f = st.step(5)
        # y_hat 1.4, tau_hat 1: (1 - 0.1) * 1.4 / (1 - 0.1)
        assert f == pytest.approx(1.4)

    def test_cr_constant_on_zero_run(self):
        st = make(K.CR, y_hat=3.0, tau_hat=2.0, f=1.5)
        assert all(st.step(0) == 1.5 for _ in range(200))

    def test_levseg_demand_update(self):
        st = make(K.LEVSEG, tau=2, f=1.0)
        assert st.step(4) == pytest.approx(1.1)
        assert st.tau == 1

    def test_levseg_zero_keeps_forecast(self):
        st = make(K.LEVSEG, f=0.7)
        assert st.step(0) == 0.7
        assert st.tau == 2

    def test_levseg_converges_to_constant_demand(self):
        st = make(K.LEVSEG, alpha=0.2)
        for _ in range(200):
            f = st.step(3)
        assert f == pytest.approx(3.0, rel=1e-9)

    def test_tsb_zero_update(self):
        st = make(K.TSB, beta=0.02, p_hat=0.5, y_hat=2.0)
        f = st.step(0)
        assert st.p_hat == pytest.approx(0.49)
        assert f == pytest.approx(0.98)

    def test_tsb_geometric_decay(self):
        st = make(K.TSB, beta=0.05, p_hat=0.6, y_hat=3.0)
        f0 = st.p_hat * st.y_hat
        for n in range(1, 40):
            f = st.step(0)
            assert f == pytest.approx(f0 * 0.95 ** n, rel=1e-12)

    def test_tsb_fixed_point(self):
        st = make(K.TSB, p_hat=1.0, y_hat=4.0)
        assert st.step(4) == pytest.approx(4.0)

    def test_hes_zero_formula(self):
        st = make(K.HES, tau=2)
        assert st.step(0) == pytest.approx(1.0 / 1.1)
        assert st.tau == 3

    def test_hes_matches_cr_on_demand(self):
        rng = np.random.default_rng(1)
        hes, cr = make(K.HES), make(K.CR)
        for _ in range(300):
            y = int(rng.random() < 0.3) and int(rng.integers(1, 9))
            fh, fc = hes.step(y), cr.step(y)
            if y > 0:
                assert fh == fc

    def test_hes_hyperbolic_closed_form(self):
        tau_hat0, beta = 2.5, 0.2
        st = make(K.HES, beta=beta, y_hat=2.0 * tau_hat0, tau_hat=tau_hat0, tau=1, f=2.0)
        for t in range(1, 100):
            f = st.step(0)
            assert f == pytest.approx(2.0 / (1 + t * beta / (2 * tau_hat0)), rel=1e-12)

    def test_les_demand_branch_order(self):
        st = make(K.LES, tau=3)
        f = st.step(5)
        # tau_hat update consumes the pre-reset tau
        assert st.y_hat == pytest.approx(1.4)
        assert st.tau_hat == pytest.approx(0.1 * 3 + 0.9 * 1)
        assert f == pytest.approx(st.y_hat / st.tau_hat)
        assert st.tau == 1

    def test_les_zero_branch(self):
        st = make(K.LES)
        assert st.step(0) == pytest.approx(0.95)

    def test_les_clamps_to_exact_zero(self):
        st = make(K.LES, tau=20)
        assert st.step(0) == 0.0


def random_demand(rng, n, p=0.3, max_size=9):
    occur = rng.random(n) < p
    sizes = rng.integers(1, max_size + 1, size=n)
    return np.where(occur, sizes, 0)


class TestProperties:
    """Randomized invariant checks; each consumes >= 10^4 stepped inputs."""

    def test_forecasts_never_negative(self):
        rng = np.random.default_rng(10)
        for kind in ALL_KINDS:
            for _ in range(5):
                a, b = rng.uniform(0.05, 0.95, size=2)
                st = make(kind, alpha=a, beta=b)
                for y in random_demand(rng, 3000, p=rng.uniform(0.05, 0.9)):
                    assert st.step(int(y)) >= 0.0

    def test_cr_hes_les_agree_at_demand_points(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            a, b = rng.uniform(0.05, 0.95, size=2)
            states = {k: make(k, alpha=a, beta=b) for k in (K.CR, K.SBA, K.HES, K.LES)}
            for y in random_demand(rng, 600, p=rng.uniform(0.1, 0.9)):
                fs = {k: st.step(int(y)) for k, st in states.items()}
                if y > 0:
                    assert fs[K.HES] == fs[K.CR]
                    assert fs[K.LES] == fs[K.CR]
                    assert fs[K.SBA] == pytest.approx((1 - b / 2) * fs[K.CR], rel=1e-12)

    def test_zero_run_shapes(self):
        rng = np.random.default_rng(12)
        for _ in range(30):
            a, b = rng.uniform(0.05, 0.95, size=2)
            states = {k: make(k, alpha=a, beta=b) for k in ALL_KINDS}
            # melt in some demand history first
            for y in random_demand(rng, 120, p=0.4):
                for st in states.values():
                    st.step(int(y))
            frozen = {k: st.f for k, st in states.items()}
            hes_prev = frozen[K.HES]
            les_prev = frozen[K.LES]
            les_zero_seen = False
            for n in range(1, 400):
                fs = {k: st.step(0) for k, st in states.items()}
                for k in (K.CR, K.SBA, K.SY, K.LEVSEG):
                    assert fs[k] == frozen[k]
                assert fs[K.SES] == pytest.approx(frozen[K.SES] * (1 - a) ** n, rel=1e-9)
                assert fs[K.TSB] == pytest.approx(frozen[K.TSB] * (1 - b) ** n, rel=1e-9)
                assert 0.0 < fs[K.HES] < hes_prev
                hes_prev = fs[K.HES]
                assert fs[K.LES] <= les_prev
                les_prev = fs[K.LES]
                if les_zero_seen:
                    assert fs[K.LES] == 0.0
                les_zero_seen = les_zero_seen or fs[K.LES] == 0.0
            assert les_zero_seen

    def test_les_zero_attained_at_threshold_tau(self):
        rng = np.random.default_rng(13)
        for _ in range(50):
            b = rng.uniform(0.05, 0.95)
            st = make(K.LES, alpha=0.2, beta=b)
            for y in random_demand(rng, 80, p=0.5):
                st.step(int(y))
            if st.f == 0.0:
                continue
            tau_hat = st.tau_hat
            start = st.tau
            f = st.f
            for _ in range(3000):
                tau_used = st.tau
                f = st.step(0)
                if b * tau_used >= 2.0 * tau_hat:
                    assert f == 0.0
                    break
                assert f > 0.0
            assert f == 0.0
            # threshold matches ceil(2*tau_hat/b) up to the float comparison
            assert tau_used <= math.ceil(2.0 * tau_hat / b) + 1
            assert tau_used >= start

    def test_tsb_probability_stays_in_unit_interval(self):
        rng = np.random.default_rng(14)
        for _ in range(10):
            b = rng.uniform(0.01, 0.99)
            st = make(K.TSB, alpha=0.3, beta=b)
            for y in random_demand(rng, 2000, p=rng.uniform(0.0, 1.0)):
                st.step(int(y))
                assert 0.0 < st.p_hat <= 1.0

    def test_non_intermittent_matches_ses(self):
        rng = np.random.default_rng(15)
        for _ in range(10):
            a, b = rng.uniform(0.05, 0.95, size=2)
            states = {k: make(k, alpha=a, beta=b) for k in (K.SES, K.CR, K.SY, K.HES, K.LES, K.SBA)}
            for y in rng.integers(1, 12, size=200):
                fs = {k: st.step(int(y)) for k, st in states.items()}
                for k in (K.CR, K.SY, K.HES, K.LES):
                    assert fs[k] == pytest.approx(fs[K.SES], rel=1e-12)
                assert fs[K.SBA] == pytest.approx((1 - b / 2) * fs[K.SES], rel=1e-12)
                assert states[K.CR].tau_hat == pytest.approx(1.0)


def geometric_expectation(fn, mean_tau, tol=1e-12):
    """E[fn(tau)] with tau geometric on {1,2,...}, mean mean_tau.

    Enumerates probabilities until the remaining mass is below tol.
    """
    p = 1.0 / mean_tau
    total = 0.0
    mass = 0.0
    pk = p
    k = 1
    while mass < 1.0 - tol:
        total += pk * fn(k)
        mass += pk
        pk *= 1.0 - p
        k += 1
    return total


class TestLesUnbiasedness:
    """Zero-period forecast expectation under geometric inter-demand gaps."""

    def test_unclamped_expectation_matches_sba_level(self):
        rng = np.random.default_rng(16)
        for _ in range(100):
            b = rng.uniform(0.01, 0.5)
            tau_hat = rng.uniform(1.0, 30.0)
            y_hat = rng.uniform(0.5, 10.0)
            base = y_hat / tau_hat
            expect = geometric_expectation(
                lambda k: base * (1.0 - b * k / (2.0 * tau_hat)), tau_hat
            )
            assert expect == pytest.approx((1.0 - b / 2.0) * base, rel=1e-9)

    def test_clamp_bias_negligible_for_small_beta(self):
        rng = np.random.default_rng(17)
        for _ in range(60):
            b = rng.uniform(0.01, 0.1)
            tau_hat = rng.uniform(2.0, 40.0)
            y_hat = rng.uniform(0.5, 10.0)
            base = y_hat / tau_hat
            clamped = geometric_expectation(
                lambda k: base * max(0.0, 1.0 - b * k / (2.0 * tau_hat)), tau_hat
            )
            unclamped = geometric_expectation(
                lambda k: base * (1.0 - b * k / (2.0 * tau_hat)), tau_hat
            )
            assert clamped >= unclamped  # clamping only raises terms
            assert clamped - unclamped < 0.01 * base
