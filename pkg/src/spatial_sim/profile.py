"""Queue profile N_x: outstanding requests crossing each point."""

import math
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from src.spatial_sim.instance import SpatialInstance


@dataclass(frozen=True, eq=False)
class QueueProfile:
    """
    Right-continuous step function N_x.

    ``levels[k]`` holds on [breakpoints[k], breakpoints[k + 1]); N_x = 0 left
    of the first breakpoint. Breakpoints where the level does not change are
    dropped, so two equal profiles have identical arrays.
    """

    breakpoints: np.ndarray
    levels: np.ndarray
    busy_cycles: List[Tuple[float, float]] = field(default_factory=list)

    def level_at(self, x: float) -> int:
        k = int(np.searchsorted(self.breakpoints, x, side="right")) - 1
        return int(self.levels[k]) if k >= 0 else 0

    def integral(self, upto: float = math.inf) -> float:
        """Integral of N_x from 0 to ``upto`` (default: last breakpoint)."""
        if len(self.breakpoints) == 0:
            return 0.0
        end = min(upto, float(self.breakpoints[-1]))
        edges = np.minimum(np.append(self.breakpoints[1:], end), end)
        widths = np.clip(edges - self.breakpoints, 0.0, None)
        return float(np.sum(widths * self.levels))

    def equals(self, other: "QueueProfile") -> bool:
        """Exact equality of breakpoints and integer levels."""
        return (
            np.array_equal(self.breakpoints, other.breakpoints)
            and np.array_equal(self.levels, other.levels)
        )


def build_profile(instance: SpatialInstance, served: np.ndarray) -> QueueProfile:
    """
    Build N_x from the number of users each server took.

    Users at a server's location are counted before the server acts.
    """
    positions = np.concatenate([instance.users, instance.servers])
    deltas = np.concatenate(
        [np.ones(instance.n_users, dtype=np.int64), -np.asarray(served, dtype=np.int64)]
    )
    kinds = np.concatenate(
        [np.zeros(instance.n_users, dtype=np.int8), np.ones(instance.n_servers, dtype=np.int8)]
    )
    order = np.lexsort((kinds, positions))
    positions = positions[order]
    levels = np.cumsum(deltas[order])

    # Collapse events at the same location to the level after the last one
    last_at_pos = np.append(positions[1:] != positions[:-1], True)
    positions = positions[last_at_pos]
    levels = levels[last_at_pos]

    changed = np.append(True, levels[1:] != levels[:-1])
    positions = positions[changed]
    levels = levels[changed]
    if len(levels) and levels[0] == 0:
        positions, levels = positions[1:], levels[1:]

    if np.any(levels < 0):
        raise ValueError("Servers took more users than had crossed them")

    return QueueProfile(positions, levels, _busy_cycles(positions, levels))


def _busy_cycles(positions: np.ndarray, levels: np.ndarray) -> List[Tuple[float, float]]:
    cycles = []
    start = None
    for x, level in zip(positions, levels):
        if level > 0 and start is None:
            start = float(x)
        elif level == 0 and start is not None:
            cycles.append((start, float(x)))
            start = None
    if start is not None:
        cycles.append((start, math.inf))
    return cycles


def profile_after_servers(profile: QueueProfile, servers: np.ndarray) -> np.ndarray:
    """N_x sampled just after each server location."""
    idx = np.searchsorted(profile.breakpoints, servers, side="right") - 1
    padded = np.append(profile.levels, 0)
    return np.where(idx >= 0, padded[idx], 0)
