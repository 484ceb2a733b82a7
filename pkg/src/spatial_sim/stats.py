"""Request-distance statistics."""

from typing import Dict, Optional

import numpy as np

from config.settings import Settings
from src.spatial_sim.policies import AssignmentResult


def distance_stats(result: AssignmentResult) -> Dict[str, float]:
    """
    Summary of matched request distances.

    Raises:
        ValueError: If no user was matched
    """
    if result.matched == 0:
        raise ValueError(f"{result.policy} matched no users")
    distances = result.distances
    return {
        "mean": float(np.mean(distances)),
        "variance": result.variance,
        "max": float(np.max(distances)),
        "count": int(result.matched),
    }


def warmup_truncate(
    result: AssignmentResult, fraction: Optional[float] = None
) -> AssignmentResult:
    """Drop the first ``fraction`` of matched users (finite-horizon bias)."""
    fraction = Settings.WARMUP_FRACTION if fraction is None else fraction
    if not 0 <= fraction < 1:
        raise ValueError(f"Warm-up fraction must lie in [0, 1), got {fraction}")

    skip = int(fraction * result.matched)
    if skip == 0:
        return result
    dropped = result.matched_users[:skip]
    assignment = result.assignment.copy()
    assignment[dropped] = -1
    return AssignmentResult(result.policy, assignment, result.distances[skip:])


def path_loss_cost(distances: np.ndarray, beta: float, t0: float = 1.0) -> float:
    """Mean per-request cost t0 * D^beta."""
    if beta < 0:
        raise ValueError(f"Path-loss exponent must be nonnegative, got {beta}")
    return float(t0 * np.mean(np.power(distances, beta)))
