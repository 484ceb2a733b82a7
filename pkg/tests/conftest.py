"""Pytest configuration and fixtures."""

import numpy as np
import pytest

from src.spatial_sim.instance import SpatialInstance, covering_server_count, generate_instance
from src.spatial_sim.policies import allocate_mtr
from src.spatial_sim.stats import path_loss_cost, warmup_truncate
from src.utils.cache import clear_cache


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long statistical checks")


@pytest.fixture
def rng():
    """Seeded random generator."""
    return np.random.default_rng(12345)


@pytest.fixture(autouse=True)
def fresh_cache():
    """Start every test with an empty memoisation cache."""
    clear_cache()
    yield


@pytest.fixture
def small_instance():
    """Users (1, 2, 4), servers (3, 5), unit capacities."""
    return SpatialInstance(np.array([1.0, 2.0, 4.0]), np.array([3.0, 5.0]), 1)


def covered_instance(rng, n_users=300, lam=0.5, mu=1.0, capacity=1):
    """
    Random Poisson instance with a final server able to take every user, so
    every policy matches all users.
    """
    users = np.cumsum(rng.exponential(1.0 / lam, n_users))
    n_servers = int(1.5 * n_users * mu / lam) + 1
    servers = np.cumsum(rng.exponential(1.0 / mu, n_servers))
    servers = np.append(servers, max(servers[-1], users[-1]) + 1.0)
    caps = np.full(len(servers), capacity, dtype=np.int64)
    caps[-1] = n_users
    return SpatialInstance(users, servers, caps)


@pytest.fixture
def covered():
    """Factory for fully coverable random instances."""
    return covered_instance


def simulated_mtr_mean(user_law, server_law, capacity=1, n_users=200000, seeds=(0,), beta=None):
    """
    MTR mean distance after warm-up, averaged over seeds; with ``beta`` the
    mean path-loss cost D^beta instead.
    """
    values = []
    for seed in seeds:
        n_servers = covering_server_count(n_users, user_law, server_law)
        instance = generate_instance(user_law, server_law, n_users, n_servers, capacity, seed)
        result = warmup_truncate(allocate_mtr(instance)[0])
        distances = result.distances
        values.append(np.mean(distances) if beta is None else path_loss_cost(distances, beta))
    return float(np.mean(values))


@pytest.fixture
def mtr_mean():
    """Long-run MTR estimate from seeded simulations."""
    return simulated_mtr_mean


def covering_draw(user_law, server_law, capacity, n_users, seed):
    """Generated instance plus a final server that can take every user."""
    drawn = generate_instance(
        user_law, server_law, n_users, covering_server_count(n_users, user_law, server_law), capacity, seed
    )
    end = max(drawn.servers[-1], drawn.users[-1]) + 1.0
    caps = np.append(drawn.capacities, n_users)
    return SpatialInstance(drawn.users, np.append(drawn.servers, end), caps)


@pytest.fixture
def covering():
    """Factory for generated instances closed by a catch-all server."""
    return covering_draw
