"""Adversarial instances where Gale-Shapley drifts away from the optimum."""

import numpy as np

from src.spatial_sim.instance import SpatialInstance

# Relative shortening of each inserted gap so no two pair distances tie
TIE_MARGIN = 0.01


def gs_worst_case_instance(t: int) -> SpatialInstance:
    """
    Level-t instance with 2^(t-1) users and as many servers.

    Level 1 is a server at 0 and a user at 1. Level k is two copies of level
    k-1 separated by a gap of 3^(k-2), shortened by TIE_MARGIN; the widths
    are then just under 3^(k-1) and the largest gap between adjacent points
    is just under 3^(t-2).

    Each gap is shorter than the copies it separates, so GS pairs the inner
    endpoints of the two copies and pushes the outer endpoints across the
    whole instance. The optimum pairs each server with the user beside it at
    cost 1 per user, and GS/OPT grows like |R|^log2(3/2).
    """
    if t < 1:
        raise ValueError(f"Level must be >= 1, got {t}")

    users = np.array([1.0])
    servers = np.array([0.0])
    width = 1.0
    for level in range(2, t + 1):
        gap = (1.0 - TIE_MARGIN) * 3.0 ** (level - 2)
        offset = width + gap
        users = np.concatenate([users, users + offset])
        servers = np.concatenate([servers, servers + offset])
        width = 2.0 * width + gap
    return SpatialInstance(users, servers, np.ones(len(servers), dtype=np.int64))
