"""Two-resource requests: each user needs one server from each of two lines."""

from typing import Optional

import numpy as np

from src.distributions.laws import Exponential
from src.spatial_sim.instance import SpatialInstance, covering_server_count
from src.spatial_sim.policies import UNMATCHED, allocate_mtr


def simulate_forkjoin(
    lam: float,
    mu: float,
    n_users: int,
    seed: Optional[int] = None,
    warmup_fraction: float = 0.1,
) -> np.ndarray:
    """
    Request distances max(D1, D2) when every user is served by MTR on two
    independent Poisson(mu) server lines with unit capacity.

    Returns:
        Per-user maxima for users matched on both lines, after warm-up.
    """
    if not 0 < lam < mu:
        raise ValueError(f"Fork-join needs 0 < lam < mu, got lam={lam}, mu={mu}")

    rng = np.random.default_rng(seed)
    users = np.cumsum(Exponential(lam).sample(rng, n_users))
    n_servers = covering_server_count(n_users, Exponential(lam), Exponential(mu))

    distances = []
    matched = np.ones(n_users, dtype=bool)
    for _ in range(2):
        servers = np.cumsum(Exponential(mu).sample(rng, n_servers))
        result, _ = allocate_mtr(SpatialInstance(users, servers, 1))
        per_user = np.full(n_users, np.nan)
        hit = result.assignment != UNMATCHED
        per_user[hit] = servers[result.assignment[hit]] - users[hit]
        matched &= hit
        distances.append(per_user)

    maxima = np.maximum(distances[0], distances[1])[matched]
    return maxima[int(warmup_fraction * len(maxima)):]
