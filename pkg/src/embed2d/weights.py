"""Locally linear reconstruction weights over the opposite role."""

from dataclasses import dataclass, field
from typing import List, Optional, Tuple, Union

import numpy as np
from scipy.spatial.distance import cdist

from config.numerics import NumericTolerances
from src.embed2d.instance import PlanarInstance
from src.utils.logger import get_logger

logger = get_logger(__name__)

NeighborCount = Union[int, float]

METHODS = ("hierarchical", "spectral")


@dataclass(frozen=True)
class EmbeddingConfig:
    """
    Neighbour counts are absolute when integers and fractions of the
    opposite set when floats. Spread parameters left as None are derived
    from the instance.

    ``method`` picks a single eigenvector of the whole instance
    (``spectral``) or recursive re-embedding of each median half down to
    ``leaf_size`` nodes (``hierarchical``).
    """

    k_users: NeighborCount = 0.25  # servers per user
    k_servers: NeighborCount = 0.25  # users per server
    tikhonov: float = NumericTolerances.TIKHONOV_SCALE
    delta_far: Optional[float] = None
    epsilon: Optional[float] = None
    shift: Optional[float] = None
    method: str = "hierarchical"
    leaf_size: int = 4

    def __post_init__(self):
        for name in ("tikhonov", "delta_far", "epsilon", "shift"):
            value = getattr(self, name)
            if value is not None and value <= 0:
                raise ValueError(f"{name} must be positive, got {value}")
        if self.method not in METHODS:
            raise ValueError(f"Unknown embedding method: {self.method}")
        if int(self.leaf_size) < 1:
            raise ValueError(f"leaf_size must be at least 1, got {self.leaf_size}")

    @staticmethod
    def _resolve(k: NeighborCount, available: int, name: str) -> int:
        if isinstance(k, float):
            if not 0 < k <= 1:
                raise ValueError(f"{name} fraction must be in (0, 1], got {k}")
            k = int(round(k * available))
        count = max(1, int(k))
        if count > available:
            raise ValueError(f"{name}={count} exceeds the {available} available neighbours")
        return count

    @staticmethod
    def _clip(k: NeighborCount, available: int) -> int:
        if available == 0:
            return 0
        if isinstance(k, float):
            k = int(round(k * available))
        return min(max(1, int(k)), available)

    def neighbor_counts(self, instance: PlanarInstance) -> tuple:
        return (
            self._resolve(self.k_users, instance.n_servers, "k_users"),
            self._resolve(self.k_servers, instance.n_users, "k_servers"),
        )

    def counts_within(self, n_users: int, n_servers: int) -> Tuple[int, int]:
        """Neighbour counts for a subset, clipped to the nodes it holds."""
        return self._clip(self.k_users, n_servers), self._clip(self.k_servers, n_users)

    @classmethod
    def from_dict(cls, data: dict) -> "EmbeddingConfig":
        known = {k: data[k] for k in cls.__dataclass_fields__ if k in data}
        return cls(**known)


@dataclass(frozen=True, eq=False)
class WeightMatrix:
    weights: np.ndarray  # (n, n), rows sum to 1
    n_users: int
    degenerate: List[int] = field(default_factory=list)
    points: Optional[np.ndarray] = None  # (n, 2), users first


def _reconstruction_weights(offsets: np.ndarray, tikhonov: float) -> Optional[np.ndarray]:
    k = len(offsets)
    if k == 1:
        return np.ones(1)
    gram = offsets @ offsets.T
    trace = float(np.trace(gram))
    if trace == 0.0:
        return None
    w = np.linalg.solve(gram + tikhonov * trace / k * np.eye(k), np.ones(k))
    return w / w.sum()


def weight_matrix(
    users: np.ndarray,
    servers: np.ndarray,
    k_users: int,
    k_servers: int,
    tikhonov: float = NumericTolerances.TIKHONOV_SCALE,
) -> WeightMatrix:
    """
    Row i reconstructs node i from its nearest nodes of the opposite role
    (``k_users`` servers per user, ``k_servers`` users per server).

    Nodes whose neighbours all coincide with them get uniform weights and
    are listed in ``degenerate``.
    """
    n_r, n_s = len(users), len(servers)
    weights = np.zeros((n_r + n_s, n_r + n_s))
    degenerate: List[int] = []

    dist = cdist(users, servers)
    blocks = (
        (users, servers, dist, k_users, 0, n_r),
        (servers, users, dist.T, k_servers, n_r, 0),
    )
    for points, others, d, k, row_offset, col_offset in blocks:
        nearest = np.argsort(d, axis=1, kind="stable")[:, :k]
        for i, nbrs in enumerate(nearest):
            w = _reconstruction_weights(others[nbrs] - points[i], tikhonov)
            if w is None:
                degenerate.append(row_offset + i)
                w = np.full(k, 1.0 / k)
            weights[row_offset + i, col_offset + nbrs] = w

    return WeightMatrix(weights, n_r, degenerate, np.vstack([users, servers]))


def knn_weights(instance: PlanarInstance, config: Optional[EmbeddingConfig] = None) -> WeightMatrix:
    """Reconstruction weights for a whole instance at the configured neighbour counts."""
    config = config or EmbeddingConfig()
    k_users, k_servers = config.neighbor_counts(instance)
    weights = weight_matrix(instance.users, instance.servers, k_users, k_servers, config.tikhonov)
    if weights.degenerate:
        logger.warning(f"{len(weights.degenerate)} nodes have coincident neighbourhoods")
    return weights
