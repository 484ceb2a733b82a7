"""Exact reference solvers for assignment problems."""

from functools import lru_cache
from typing import Sequence, Tuple

import numpy as np
from scipy.optimize import linear_sum_assignment

from src.optimal_assign.dp import Capacity, OptAssignment

BRUTE_FORCE_LIMIT = 8


def brute_force_oracle(
    users: Sequence[float], servers: Sequence[float], capacity: Capacity = 1
) -> OptAssignment:
    """
    Exhaustive minimum over every capacity-feasible assignment (no ordering
    assumption), memoised on residual capacities.
    """
    users = np.asarray(users, dtype=float)
    servers = np.asarray(servers, dtype=float)
    caps = tuple(int(c) for c in np.broadcast_to(np.asarray(capacity), servers.shape))
    if len(users) > BRUTE_FORCE_LIMIT:
        raise ValueError(f"Brute force limited to {BRUTE_FORCE_LIMIT} users")
    if len(users) > sum(caps):
        raise ValueError(f"{len(users)} users exceed total capacity {sum(caps)}")

    @lru_cache(maxsize=None)
    def best(i: int, residual: Tuple[int, ...]) -> Tuple[float, Tuple[int, ...]]:
        if i == len(users):
            return 0.0, ()
        result = (np.inf, ())
        for j, left in enumerate(residual):
            if left == 0:
                continue
            rest = residual[:j] + (left - 1,) + residual[j + 1 :]
            cost, tail = best(i + 1, rest)
            cost += abs(users[i] - servers[j])
            if cost < result[0]:
                result = (cost, (j,) + tail)
        return result

    _, choice = best(0, caps)
    assignment = np.array(choice, dtype=np.int64)
    distances = np.abs(users - servers[assignment]) if len(users) else np.empty(0)
    return OptAssignment(assignment, distances)


def min_cost_matching_oracle(cost_matrix: np.ndarray) -> Tuple[np.ndarray, float]:
    """
    Exact minimum-cost injection of rows into columns.

    Returns:
        (column per row, total cost)
    """
    cost_matrix = np.asarray(cost_matrix, dtype=float)
    if cost_matrix.ndim != 2:
        raise ValueError("Cost matrix must be two-dimensional")
    rows, cols = cost_matrix.shape
    if rows > cols:
        raise ValueError(f"More rows ({rows}) than columns ({cols})")
    if not np.all(np.isfinite(cost_matrix)):
        raise ValueError("Cost matrix must be finite")

    row_ind, col_ind = linear_sum_assignment(cost_matrix)
    assignment = np.empty(rows, dtype=np.int64)
    assignment[row_ind] = col_ind
    return assignment, float(cost_matrix[row_ind, col_ind].sum())
