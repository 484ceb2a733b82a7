"""Tests for distance statistics and the fork-join simulation."""

import numpy as np
import pytest

from src.analytic.limits import forkjoin_expected_max
from src.distributions.laws import Exponential
from src.spatial_sim.instance import covering_server_count, generate_instance
from src.spatial_sim.policies import AssignmentResult, allocate_mtr
from src.spatial_sim.forkjoin import simulate_forkjoin
from src.spatial_sim.stats import distance_stats, path_loss_cost, warmup_truncate


def _result(distances):
    distances = np.asarray(distances, dtype=float)
    return AssignmentResult("MTR", np.arange(len(distances)), distances)


class TestDistanceStats:
    """Test summary statistics."""

    def test_constant_distances(self):
        stats = distance_stats(_result([1.0, 1.0]))
        assert stats["mean"] == 1.0
        assert stats["variance"] == 0.0
        assert stats["count"] == 2

    def test_sample_variance(self):
        stats = distance_stats(_result([0.0, 2.0]))
        assert stats["mean"] == 1.0
        assert stats["variance"] == pytest.approx(2.0)
        assert stats["max"] == 2.0

    def test_no_matches(self):
        result = AssignmentResult("GS", np.array([-1]), np.array([]))
        with pytest.raises(ValueError):
            distance_stats(result)


class TestWarmup:
    """Test warm-up truncation."""

    def test_drops_leading_fraction(self):
        result = warmup_truncate(_result(np.arange(10.0)), 0.2)
        assert result.distances.tolist() == list(np.arange(2.0, 10.0))
        assert result.assignment[:2].tolist() == [-1, -1]

    def test_zero_fraction_unchanged(self):
        result = _result([1.0, 2.0])
        assert warmup_truncate(result, 0.0) is result

    def test_invalid_fraction(self):
        with pytest.raises(ValueError):
            warmup_truncate(_result([1.0]), 1.0)


class TestPathLossCost:
    """Test the per-request path-loss cost."""

    def test_quadratic(self):
        assert path_loss_cost(np.array([1.0, 2.0]), 2.0) == pytest.approx(2.5)

    def test_zero_exponent_is_constant(self):
        assert path_loss_cost(np.array([0.3, 4.0]), 0.0, t0=3.0) == pytest.approx(3.0)

    def test_negative_exponent(self):
        with pytest.raises(ValueError):
            path_loss_cost(np.array([1.0]), -1.0)


@pytest.mark.slow
class TestLongRun:
    """Test long-run means against closed forms."""

    def test_mtr_exponential_mean(self):
        n_users = 10**5
        lam, mu = 0.5, 1.0
        n_servers = covering_server_count(n_users, Exponential(lam), Exponential(mu))
        instance = generate_instance(Exponential(lam), Exponential(mu), n_users, n_servers, seed=11)
        result, _ = allocate_mtr(instance)
        assert result.matched == n_users
        stats = distance_stats(warmup_truncate(result))
        assert stats["mean"] == pytest.approx(2.0, rel=0.03)

    def test_forkjoin_mean(self):
        maxima = simulate_forkjoin(0.5, 1.0, 10**5, seed=5)
        assert np.mean(maxima) == pytest.approx(forkjoin_expected_max(0.5, 1.0), rel=0.05)

    def test_forkjoin_rejects_unstable(self):
        with pytest.raises(ValueError):
            simulate_forkjoin(1.0, 1.0, 10)
