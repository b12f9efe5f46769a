import math

import numpy as np
import pytest

from resscat.herald import (
    BLOCK_SIZE,
    HeraldConfig,
    cluster_schedule,
    expected_attempts,
    run_cluster_trials,
    run_pair_trials,
    simulate_cluster,
    simulate_pair,
    summarize_cluster,
    summarize_pairs,
)


def geometric_pmf(p, kmax):
    k = np.arange(1, kmax + 1)
    return k, p * (1 - p) ** (k - 1)


def exact_cluster4_median(p, kmax=400):
    """Median of max(G1, G2) + G3 from the exact distributions."""
    k, pmf = geometric_pmf(p, kmax)
    cdf = np.cumsum(pmf)
    max_pmf = np.diff(np.concatenate([[0.0], cdf**2]))
    total = np.convolve(max_pmf, pmf)  # support starts at 2
    support = np.arange(2, 2 + total.size)
    return support[np.searchsorted(np.cumsum(total), 0.5)]


class TestExpectedAttempts:
    @pytest.mark.parametrize("p,expected", [(1, 1), (0.25, 4), (0.138, 7.246)])
    def test_values(self, p, expected):
        assert expected_attempts(p) == pytest.approx(expected, abs=1e-3)

    def test_invalid(self):
        with pytest.raises(ValueError):
            expected_attempts(0)


class TestConfig:
    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(success_probability=0, seed=1),
            dict(success_probability=1.5, seed=1),
            dict(success_probability=0.5, seed=1, attempt_period=0),
            dict(success_probability=0.5, seed=1, detector_efficiency=1.2),
            dict(success_probability=0.5, seed=-1),
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            HeraldConfig(**kwargs)


class TestPair:
    def test_certain_success(self):
        cfg = HeraldConfig(success_probability=1.0, seed=0)
        for trial in range(5):
            assert simulate_pair(cfg, trial) == (1, 1.0, True)

    @pytest.mark.parametrize("p", [0.05, 0.14, 0.25, 0.5])
    def test_mean_attempts(self, p):
        n = 100_000
        attempts, ok = run_pair_trials(HeraldConfig(success_probability=p, seed=11), n)
        assert ok.all()
        se = math.sqrt(1 - p) / p / math.sqrt(n)
        assert abs(attempts.mean() - 1 / p) < 3 * se

    def test_ten_attempt_success(self):
        p, n = 0.138, 100_000
        attempts, _ = run_pair_trials(HeraldConfig(success_probability=p, seed=3), n)
        expected = 1 - (1 - p) ** 10
        assert expected == pytest.approx(0.7735, abs=1e-4)
        assert abs(np.mean(attempts <= 10) - expected) < 3 * math.sqrt(expected * (1 - expected) / n)

    def test_detector_efficiency_scales_rate(self):
        n = 50_000
        attempts, _ = run_pair_trials(HeraldConfig(success_probability=0.5, detector_efficiency=0.5, seed=5), n)
        assert abs(attempts.mean() - 4.0) < 3 * math.sqrt(0.75) / 0.25 / math.sqrt(n)

    def test_zero_detection_always_fails(self):
        cfg = HeraldConfig(success_probability=0.5, detector_efficiency=0.0, max_attempts=20, seed=1)
        assert simulate_pair(cfg) == (20, 20.0, False)

    def test_failure_rate_matches_tail(self):
        p, m, n = 0.1, 5, 100_000
        _, ok = run_pair_trials(HeraldConfig(success_probability=p, max_attempts=m, seed=9), n)
        tail = (1 - p) ** m
        assert abs(np.mean(~ok) - tail) < 3 * math.sqrt(tail * (1 - tail) / n)

    def test_reproducible(self):
        cfg = HeraldConfig(success_probability=0.2, seed=123)
        a, _ = run_pair_trials(cfg, 10_000)
        b, _ = run_pair_trials(cfg, 10_000)
        np.testing.assert_array_equal(a, b)

    def test_trial_draws_independent_of_batch_size(self):
        cfg = HeraldConfig(success_probability=0.2, seed=123)
        long, _ = run_pair_trials(cfg, BLOCK_SIZE + 50)
        short, _ = run_pair_trials(cfg, 30)
        np.testing.assert_array_equal(long[:30], short)
        assert simulate_pair(cfg, BLOCK_SIZE + 7).attempts == long[BLOCK_SIZE + 7]

    def test_seeds_differ(self):
        a, _ = run_pair_trials(HeraldConfig(success_probability=0.2, seed=1), 1000)
        b, _ = run_pair_trials(HeraldConfig(success_probability=0.2, seed=2), 1000)
        assert not np.array_equal(a, b)


class TestCluster:
    def test_schedule(self):
        assert cluster_schedule(2) == (1, 0)
        assert cluster_schedule(3) == (1, 1)
        assert cluster_schedule(4) == (2, 1)
        assert cluster_schedule(8) == (4, 3)
        with pytest.raises(ValueError):
            cluster_schedule(1)

    def test_two_spins_certain(self):
        out = simulate_cluster(HeraldConfig(success_probability=1.0, n_spins=2, seed=0))
        assert out.total_time == 1.0
        assert out.pair_times == (1.0,)
        assert out.succeeded and out.within_coherence

    def test_four_spin_median(self):
        cfg = HeraldConfig(success_probability=0.14, n_spins=4, seed=2024)
        s = run_cluster_trials(cfg, 10_000)
        med = np.median(s.total_time)
        assert 10 <= med <= 30
        assert abs(med - exact_cluster4_median(0.14)) <= 1

    def test_within_coherence(self):
        cfg = HeraldConfig(success_probability=0.14, n_spins=4, coherence_time=1.0, seed=7)
        s = run_cluster_trials(cfg, 10_000)
        assert s.within_coherence.mean() > 0.999

    def test_total_bounds_pair_times(self):
        s = run_cluster_trials(HeraldConfig(success_probability=0.3, n_spins=7, seed=4), 2000)
        assert np.all(s.total_time[:, None] >= s.pair_times)

    def test_mean_non_decreasing_in_size(self):
        means = [np.mean(run_cluster_trials(HeraldConfig(success_probability=0.2, n_spins=n, seed=8), 20_000).total_time)
                 for n in (2, 3, 4, 6, 8)]
        assert all(b >= a - 0.05 for a, b in zip(means, means[1:]))

    def test_failed_links_abort_trial(self):
        cfg = HeraldConfig(success_probability=0.05, n_spins=4, max_attempts=3, seed=1)
        s = run_cluster_trials(cfg, 5000)
        assert np.isnan(s.total_time[~s.succeeded]).all()
        assert not s.within_coherence[~s.succeeded].any()
        tail = 1 - (1 - 0.95**3) ** 3
        assert abs(np.mean(~s.succeeded) - tail) < 0.03

    def test_outcome_record(self):
        cfg = HeraldConfig(success_probability=0.3, n_spins=4, seed=10)
        out = simulate_cluster(cfg, 17)
        s = run_cluster_trials(cfg, 18)
        assert out.pair_times == tuple(s.pair_times[17])
        assert out.total_time == max(out.pair_times[:2]) + out.pair_times[2]
        assert out.attempts_total == int(s.attempts[17].sum())


def test_summaries():
    cfg = HeraldConfig(success_probability=0.138, n_spins=4, seed=42)
    pair = summarize_pairs(cfg, 100_000)
    assert abs(pair["mean_attempts"] - 1 / 0.138) < 3 * pair["stderr_attempts"]
    cluster = summarize_cluster(cfg, 10_000)
    assert 10 <= cluster["median_time_ns"] <= 30
    assert cluster["success_fraction"] == 1.0
