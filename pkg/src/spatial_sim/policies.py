"""
Allocation policies on the line.

MTR and UGS are unidirectional sweeps (a user is served by a server at or to
its right); NN and GS are bidirectional. Every policy respects capacities and
reports users it could not place as unmatched (-1).
"""

import heapq
from collections import deque
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from src.spatial_sim.instance import SpatialInstance
from src.spatial_sim.profile import QueueProfile, build_profile
from src.utils.logger import get_logger

logger = get_logger(__name__)

UNMATCHED = -1


@dataclass(frozen=True, eq=False)
class AssignmentResult:
    """User-to-server map with the induced request distances."""

    policy: str
    assignment: np.ndarray  # server index per user, UNMATCHED if none
    distances: np.ndarray  # per matched user, in user order

    @property
    def matched_users(self) -> np.ndarray:
        return np.flatnonzero(self.assignment != UNMATCHED)

    @property
    def matched(self) -> int:
        return len(self.distances)

    @property
    def total(self) -> float:
        return float(np.sum(self.distances))

    @property
    def mean(self) -> float:
        return float(np.mean(self.distances)) if self.matched else float("nan")

    @property
    def variance(self) -> float:
        return float(np.var(self.distances, ddof=1)) if self.matched > 1 else 0.0

    def served_counts(self, n_servers: int) -> np.ndarray:
        matched = self.assignment[self.assignment != UNMATCHED]
        return np.bincount(matched, minlength=n_servers)


def _result(policy: str, instance: SpatialInstance, assignment: np.ndarray) -> AssignmentResult:
    matched = np.flatnonzero(assignment != UNMATCHED)
    distances = np.abs(instance.users[matched] - instance.servers[assignment[matched]])
    return AssignmentResult(policy, assignment, distances)


def _sweep(instance: SpatialInstance, lifo: bool) -> np.ndarray:
    users, servers, caps = instance.users, instance.servers, instance.capacities
    assignment = np.full(instance.n_users, UNMATCHED, dtype=np.int64)
    buffer: deque = deque()
    next_user = 0
    for j, location in enumerate(servers):
        # Users at the server's own location are buffered before it serves
        while next_user < len(users) and users[next_user] <= location:
            buffer.append(next_user)
            next_user += 1
        for _ in range(min(int(caps[j]), len(buffer))):
            user = buffer.pop() if lifo else buffer.popleft()
            assignment[user] = j
    return assignment


def allocate_mtr(instance: SpatialInstance) -> Tuple[AssignmentResult, QueueProfile]:
    """Move-to-right: FIFO sweep, each server takes its oldest waiting users."""
    assignment = _sweep(instance, lifo=False)
    result = _result("MTR", instance, assignment)
    return result, build_profile(instance, result.served_counts(instance.n_servers))


def allocate_ugs(instance: SpatialInstance) -> Tuple[AssignmentResult, QueueProfile]:
    """
    Unidirectional Gale-Shapley: users emit rays to the right and a server
    accepts the first rays to reach it, i.e. those of the nearest pending
    users on its left. Realised as a LIFO sweep.
    """
    assignment = _sweep(instance, lifo=True)
    result = _result("UGS", instance, assignment)
    return result, build_profile(instance, result.served_counts(instance.n_servers))


def _find(parent: np.ndarray, node: int) -> int:
    root = node
    while parent[root] != root:
        root = parent[root]
    while parent[node] != root:
        parent[node], node = root, parent[node]
    return root


def allocate_nn(instance: SpatialInstance) -> AssignmentResult:
    """
    Nearest neighbour: users in left-to-right order each take the nearest
    server with residual capacity; equidistant servers resolve to the right.
    """
    users, servers = instance.users, instance.servers
    m = instance.n_servers
    residual = instance.capacities.copy()
    assignment = np.full(instance.n_users, UNMATCHED, dtype=np.int64)

    # right[j]: first available index >= j (m when none)
    # left[j + 1]: last available index <= j, shifted by one (0 when none)
    right = np.arange(m + 1)
    left = np.arange(m + 1)

    first_right = np.searchsorted(servers, users, side="left")
    for i, r in enumerate(users):
        k = int(first_right[i])
        j_right = _find(right, k)
        j_left = _find(left, k) - 1
        candidates = []
        if j_right < m:
            candidates.append((servers[j_right] - r, 0, j_right))
        if j_left >= 0:
            candidates.append((r - servers[j_left], 1, j_left))
        if not candidates:
            break
        _, _, j = min(candidates)
        assignment[i] = j
        residual[j] -= 1
        if residual[j] == 0:
            right[j] = j + 1
            left[j + 1] = j

    return _result("NN", instance, assignment)


def allocate_gs(instance: SpatialInstance) -> AssignmentResult:
    """
    Gale-Shapley with distance preferences: repeatedly match mutually
    nearest residual user/server pairs.

    The closest residual pair is always adjacent in the merged order of
    residual nodes, so pairs are drawn from a heap of adjacent user/server
    neighbours keyed by (distance, user, -server).
    """
    n, m = instance.n_users, instance.n_servers
    if n == 0 or m == 0:
        return _result("GS", instance, np.full(n, UNMATCHED, dtype=np.int64))
    positions = np.concatenate([instance.users, instance.servers])
    kinds = np.concatenate([np.zeros(n, dtype=np.int8), np.ones(m, dtype=np.int8)])
    ident = np.concatenate([np.arange(n), np.arange(m)])
    order = np.lexsort((kinds, positions))

    pos = positions[order]
    is_server = kinds[order] == 1
    index = ident[order]
    residual = np.where(is_server, instance.capacities[index % m], 1)
    size = len(order)
    prev = np.arange(-1, size - 1)
    nxt = np.arange(1, size + 1)
    nxt[-1] = -1
    alive = np.ones(size, dtype=bool)

    heap: List[Tuple[float, int, int, int, int]] = []

    def push(a: int, b: int) -> None:
        if a < 0 or b < 0 or is_server[a] == is_server[b]:
            return
        u, s = (a, b) if not is_server[a] else (b, a)
        heapq.heappush(heap, (pos[b] - pos[a], int(index[u]), -int(index[s]), a, b))

    for a in range(size - 1):
        push(a, a + 1)

    def remove(node: int) -> None:
        alive[node] = False
        p, q = prev[node], nxt[node]
        if p >= 0:
            nxt[p] = q
        if q >= 0:
            prev[q] = p
        push(p, q)

    assignment = np.full(n, UNMATCHED, dtype=np.int64)
    while heap:
        _, user, neg_server, a, b = heapq.heappop(heap)
        if not (alive[a] and alive[b] and nxt[a] == b):
            continue
        assignment[user] = -neg_server
        user_node, server_node = (a, b) if not is_server[a] else (b, a)
        residual[server_node] -= 1
        remove(user_node)
        if residual[server_node] == 0:
            remove(server_node)

    return _result("GS", instance, assignment)


POLICIES = {
    "MTR": lambda inst: allocate_mtr(inst)[0],
    "UGS": lambda inst: allocate_ugs(inst)[0],
    "NN": allocate_nn,
    "GS": allocate_gs,
}


def allocate(policy: str, instance: SpatialInstance) -> AssignmentResult:
    """Run a policy by name (MTR, UGS, NN or GS)."""
    key = policy.upper()
    if key not in POLICIES:
        raise ValueError(f"Unknown policy: {policy}")
    result = POLICIES[key](instance)
    logger.debug(f"{key}: matched {result.matched}/{instance.n_users} users")
    return result
