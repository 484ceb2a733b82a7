"""
Optimal bidirectional assignment on the line.

Optimal line assignments never cross (if i < i' then eta(i) <= eta(i')), so
with requests and servers sorted the cost table satisfies

    C[i, j] = min(C[i, j-1], |r_i - s_j| + C[i-1, j-1])

over the band i <= j <= i + |S| - |R|. Capacity c > 1 is handled by placing
c unit servers at each location.

When the band is too wide to keep its traceback in memory the same optimum
is found by a sweep over all points: for a fixed set of used slots the
cheapest non-crossing matching costs the integral of |users left of x -
used slots left of x|, so a DP over that signed open count k picks the
slots. The count is bounded by B and B doubles until the optimal path
stays strictly inside [-B, B], which makes it optimal for the unbounded
problem as well.
"""

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from config.settings import Settings
from src.utils.logger import get_logger

logger = get_logger(__name__)

Capacity = Union[int, Sequence[int], np.ndarray]

SWEEP_START_BOUND = 32


@dataclass(frozen=True, eq=False)
class OptAssignment:
    """Total assignment of users to servers with its distances."""

    assignment: np.ndarray  # server index per user
    distances: np.ndarray

    @property
    def total_cost(self) -> float:
        return float(np.sum(self.distances))

    @property
    def mean(self) -> float:
        return float(np.mean(self.distances)) if len(self.distances) else 0.0


def _validate(users: np.ndarray, servers: np.ndarray) -> None:
    if np.any(np.diff(users) < 0):
        raise ValueError("User locations must be sorted")
    if np.any(np.diff(servers) < 0):
        raise ValueError("Server locations must be sorted")


def replicate_servers(servers: np.ndarray, capacity: Capacity):
    """Unit servers for each capacity slot, with the original index of each."""
    caps = np.broadcast_to(np.asarray(capacity, dtype=np.int64), servers.shape)
    if np.any(caps < 1):
        raise ValueError("Capacities must be >= 1")
    owner = np.repeat(np.arange(len(servers)), caps)
    return servers[owner], owner


def usable_slot_range(users: np.ndarray, slots: np.ndarray) -> Tuple[int, int]:
    """
    Slice of slots an optimum may use.

    Left of the first user only the n rightmost slots can be used (any used
    slot further out could swap with a free one closer in); right of the
    last user only the n leftmost.
    """
    n = len(users)
    left = int(np.searchsorted(slots, users[0], side="left"))
    right = int(np.searchsorted(slots, users[-1], side="right"))
    return max(0, left - n), min(len(slots), right + n)


def _banded(users: np.ndarray, slots: np.ndarray) -> np.ndarray:
    n, m = len(users), len(slots)
    width = m - n + 1
    # took[i, d]: user i is assigned to slot i + d in the optimum of C[i, i + d]
    took = np.empty((n, width), dtype=bool)
    previous = np.zeros(width)
    for i in range(n):
        candidate = np.abs(slots[i : i + width] - users[i]) + previous
        current = np.minimum.accumulate(candidate)
        took[i, 0] = True
        # Ties keep server j unused
        took[i, 1:] = candidate[1:] < current[:-1]
        previous = current

    chosen = np.empty(n, dtype=np.int64)
    i, d = n - 1, width - 1
    while i >= 0:
        if took[i, d]:
            chosen[i] = i + d
            i -= 1
        else:
            d -= 1
    return chosen


def _sweep(users: np.ndarray, slots: np.ndarray, bound: int = SWEEP_START_BOUND) -> np.ndarray:
    n, m = len(users), len(slots)
    positions = np.concatenate([users, slots])
    # Stable: users before slots at equal positions
    order = np.argsort(positions, kind="stable")
    is_slot = order >= n
    ordered = positions[order]
    gaps = np.diff(ordered, prepend=ordered[0])
    bound = min(bound, n + 1)

    while True:
        width = 2 * bound + 1
        open_count = np.abs(np.arange(-bound, bound + 1)).astype(float)
        value = np.full(width, np.inf)
        value[bound] = 0.0
        # took[r, k + bound]: slot r is used when leaving it with open count k
        took = np.zeros((m, width), dtype=bool)
        row = 0
        for p in range(n + m):
            if gaps[p] > 0:
                value = value + open_count * gaps[p]
            if is_slot[p]:
                used = value[1:]
                better = used < value[:-1]
                took[row, :-1] = better
                value[:-1] = np.where(better, used, value[:-1])
                row += 1
            else:
                value = np.concatenate(([np.inf], value[:-1]))

        if np.isfinite(value[bound]):
            chosen = []
            state, peak, row = bound, 0, m - 1
            for p in range(n + m - 1, -1, -1):
                peak = max(peak, abs(state - bound))
                if is_slot[p]:
                    if took[row, state]:
                        chosen.append(order[p] - n)
                        state += 1
                    row -= 1
                else:
                    state -= 1
            if peak < bound:
                return np.asarray(chosen[::-1], dtype=np.int64)

        logger.debug(f"Open-count bound {bound} reached, doubling")
        bound = min(2 * bound, n + 1)


def opt_dp(
    users: Sequence[float],
    servers: Sequence[float],
    capacity: Capacity = 1,
    max_cells: Optional[int] = None,
) -> OptAssignment:
    """
    Minimum total distance assignment of every user to a server.

    Args:
        users: Sorted user locations
        servers: Sorted server locations
        capacity: Common capacity or one per server
        max_cells: Largest banded table to build; above it the sweep is used
            (default Settings.DP_MAX_CELLS)

    Raises:
        ValueError: If inputs are unsorted or |R| exceeds total capacity
    """
    users = np.asarray(users, dtype=float)
    servers = np.asarray(servers, dtype=float)
    _validate(users, servers)
    slots, owner = replicate_servers(servers, capacity)

    n, m = len(users), len(slots)
    if n > m:
        raise ValueError(f"{n} users exceed total capacity {m}")
    if n == 0:
        return OptAssignment(np.empty(0, dtype=np.int64), np.empty(0))

    lo, hi = usable_slot_range(users, slots)
    slots, owner = slots[lo:hi], owner[lo:hi]
    cells = n * (len(slots) - n + 1)
    limit = Settings.DP_MAX_CELLS if max_cells is None else max_cells
    if cells <= limit:
        chosen = _banded(users, slots)
    else:
        chosen = _sweep(users, slots)

    assignment = owner[chosen]
    distances = np.abs(users - servers[assignment])
    logger.debug(
        f"DP matched {n} users over {len(slots)} of {m} slots "
        f"({'band' if cells <= limit else 'sweep'}), cost {np.sum(distances):.10g}"
    )
    return OptAssignment(assignment, distances)


def trivial_equal_assignment(users: Sequence[float], servers: Sequence[float]) -> OptAssignment:
    """With |R| = |S| and unit capacities the i-th user takes the i-th server."""
    users = np.asarray(users, dtype=float)
    servers = np.asarray(servers, dtype=float)
    if len(users) != len(servers):
        raise ValueError(f"Need equal counts, got {len(users)} users, {len(servers)} servers")
    _validate(users, servers)
    return OptAssignment(np.arange(len(users)), np.abs(users - servers))


def has_crossing(assignment: np.ndarray) -> bool:
    """True if some i < i' has eta(i) > eta(i')."""
    return bool(np.any(np.diff(assignment) < 0))


def assignment_cost(users: Sequence[float], servers: Sequence[float], assignment: Sequence[int]) -> float:
    users = np.asarray(users, dtype=float)
    servers = np.asarray(servers, dtype=float)
    return float(np.sum(np.abs(users - servers[np.asarray(assignment)])))
