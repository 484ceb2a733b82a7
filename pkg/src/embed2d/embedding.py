"""One-dimensional embeddings from reconstruction weights, and spread adjustment."""

from dataclasses import dataclass, replace
from typing import Optional, Tuple

import numpy as np
from scipy.linalg import LinAlgError, eigh
from scipy.spatial.distance import cdist

from config.numerics import NumericTolerances
from src.embed2d.instance import PlanarInstance
from src.embed2d.weights import EmbeddingConfig, WeightMatrix, weight_matrix
from src.utils.logger import get_logger
from src.utils.numerics import NumericalError

logger = get_logger(__name__)

# Reconstruction from this many planar neighbours reproduces affine maps,
# which makes both coordinate functions (near) null modes of M.
PLANAR_NEIGHBOURS = 3

# Constant mode, the two affine modes, and one reference mode above them
_LOW_MODES = 4


@dataclass(frozen=True, eq=False)
class Embedding:
    coords: np.ndarray  # users first, then servers
    n_users: int
    residual: float
    eigenvalue: float

    @property
    def user_coords(self) -> np.ndarray:
        return self.coords[: self.n_users]

    @property
    def server_coords(self) -> np.ndarray:
        return self.coords[self.n_users :]

    @property
    def span(self) -> float:
        return float(np.ptp(self.coords)) if len(self.coords) else 0.0


def principal_axis(points: np.ndarray) -> np.ndarray:
    """Centred coordinates of the points along their direction of largest spread."""
    centred = points - points.mean(axis=0)
    if len(points) < 2 or not np.any(centred):
        return np.zeros(len(points))
    _, _, vt = np.linalg.svd(centred, full_matrices=False)
    return centred @ vt[0]


def _tied_modes(values: np.ndarray) -> int:
    """How many non-constant low modes sit at the constant mode's eigenvalue."""
    if len(values) < _LOW_MODES:
        return 0
    cutoff = NumericTolerances.DEGENERATE_RATIO * values[-1]
    return int(np.sum(values[1:-1] <= cutoff))


def _break_tie(basis: np.ndarray, points: np.ndarray) -> Optional[np.ndarray]:
    # Within a degenerate eigenspace every unit vector is optimal; take the
    # one closest to the points' longest axis.
    target = principal_axis(points)
    y = basis @ (basis.T @ target)
    y = y - y.mean()
    norm = np.linalg.norm(y)
    return y / norm if norm > 0.0 else None


def embed_1d(weights: WeightMatrix) -> Embedding:
    """
    Unit eigenvector of M = (I - W)^T (I - W) for its second-smallest
    eigenvalue, signed so the first user lies left of the last user.

    When the affine modes are tied with the constant one (every node has
    enough neighbours to be rebuilt exactly) the eigenvector is not unique;
    if node coordinates are known, the tied mode along the longest axis of
    the point set is returned and ``eigenvalue`` is its Rayleigh quotient.

    Raises:
        NumericalError: If the eigen-solver fails
    """
    n = len(weights.weights)
    if n < 2:
        raise ValueError("Embedding needs at least two nodes")
    residual_op = np.eye(n) - weights.weights
    m = residual_op.T @ residual_op
    try:
        values, vectors = eigh(m, subset_by_index=[0, min(_LOW_MODES, n) - 1])
    except LinAlgError as e:
        raise NumericalError(f"Eigen-solver failed: {e}") from e

    tied = _tied_modes(values)
    y = None
    if tied >= 2 and weights.points is not None:
        y = _break_tie(vectors[:, : tied + 1], weights.points)
    resolved = y is not None
    if y is None:
        y = vectors[:, 1]
    y = y / np.linalg.norm(y)
    if weights.n_users >= 2 and y[0] > y[weights.n_users - 1]:
        y = -y
    residual = float(y @ m @ y)
    eigenvalue = residual if resolved else float(values[1])
    logger.debug(f"Embedded {n} nodes, low eigenvalues {np.round(values, 12).tolist()}")
    return Embedding(y, weights.n_users, residual, eigenvalue)


def _split_coordinate(
    points: np.ndarray, is_user: np.ndarray, config: EmbeddingConfig
) -> Tuple[np.ndarray, Optional[Embedding]]:
    n_users = int(is_user.sum())
    k_users, k_servers = config.counts_within(n_users, len(points) - n_users)
    if min(k_users, k_servers) < PLANAR_NEIGHBOURS:
        return principal_axis(points), None

    weights = weight_matrix(points[is_user], points[~is_user], k_users, k_servers, config.tikhonov)
    embedding = embed_1d(weights)
    coord = np.empty(len(points))
    coord[is_user] = embedding.user_coords
    coord[~is_user] = embedding.server_coords
    return coord, embedding


def _join(first: np.ndarray, second: np.ndarray, points: np.ndarray) -> np.ndarray:
    best = None
    for a in (first, first[::-1]):
        for b in (second, second[::-1]):
            seam = float(np.linalg.norm(points[a[-1]] - points[b[0]]))
            if best is None or seam < best[0]:
                best = (seam, a, b)
    return np.concatenate([best[1], best[2]])


def _ordered(
    idx: np.ndarray,
    points: np.ndarray,
    is_user: np.ndarray,
    config: EmbeddingConfig,
    coord: Optional[np.ndarray] = None,
) -> np.ndarray:
    if len(idx) <= config.leaf_size:
        return idx[np.argsort(principal_axis(points[idx]), kind="stable")]
    if coord is None:
        coord, _ = _split_coordinate(points[idx], is_user[idx], config)
    split = np.argsort(coord, kind="stable")
    half = len(idx) // 2
    first = _ordered(idx[split[:half]], points, is_user, config)
    second = _ordered(idx[split[half:]], points, is_user, config)
    return _join(first, second, points)


def hierarchical_embedding(
    instance: PlanarInstance, config: Optional[EmbeddingConfig] = None
) -> Embedding:
    """
    Embed, split the nodes at the median coordinate, and re-embed each half
    until a part holds at most ``leaf_size`` nodes. Parts too small for
    planar reconstruction are split along their longest axis instead.

    Halves are joined in the orientation with the shortest planar step at
    the seam, and each node's coordinate is the planar path length from the
    start of the final order, so 1D distance never undercuts 2D distance.
    ``residual`` and ``eigenvalue`` describe the top-level embedding (NaN
    when the instance itself is too small for one).
    """
    config = config or EmbeddingConfig()
    config.neighbor_counts(instance)
    points = instance.points
    if len(points) < 2:
        raise ValueError("Embedding needs at least two nodes")
    is_user = np.arange(len(points)) < instance.n_users

    coord, top = _split_coordinate(points, is_user, config)
    order = _ordered(np.arange(len(points)), points, is_user, config, coord)
    steps = np.linalg.norm(np.diff(points[order], axis=0), axis=1)
    coords = np.empty(len(points))
    coords[order] = np.concatenate([[0.0], np.cumsum(steps)])

    residual = top.residual if top is not None else float("nan")
    eigenvalue = top.eigenvalue if top is not None else float("nan")
    logger.debug(f"Hierarchical order over {len(points)} nodes, path length {coords.max():.4g}")
    return Embedding(coords, instance.n_users, residual, eigenvalue)


def default_delta_far(instance: PlanarInstance) -> float:
    """Twice the mean distance from a node to its nearest opposite node."""
    d = cdist(instance.users, instance.servers)
    nearest = np.concatenate([d.min(axis=1), d.min(axis=0)])
    return 2.0 * float(nearest.mean())


def spread_adjust(
    embedding: Embedding,
    instance: PlanarInstance,
    config: Optional[EmbeddingConfig] = None,
) -> Embedding:
    """
    Walk nodes in embedded order; whenever consecutive nodes are closer than
    epsilon in 1D but farther than delta_far in 2D, every later node moves
    right by a further shift.
    """
    config = config or EmbeddingConfig()
    y = embedding.coords
    n = len(y)
    if n < 2:
        return embedding

    span = embedding.span
    epsilon = config.epsilon if config.epsilon is not None else 1e-4 * span
    shift = config.shift if config.shift is not None else span / n
    delta_far = config.delta_far if config.delta_far is not None else default_delta_far(instance)

    order = np.argsort(y, kind="stable")
    points = instance.points[order]
    gaps_1d = np.diff(y[order])
    gaps_2d = np.linalg.norm(np.diff(points, axis=0), axis=1)
    flagged = (gaps_1d < epsilon) & (gaps_2d > delta_far)
    if not flagged.any():
        return embedding

    offsets = np.concatenate([[0.0], np.cumsum(flagged) * shift])
    adjusted = y.copy()
    adjusted[order] = y[order] + offsets
    logger.debug(f"Spread adjustment flagged {int(flagged.sum())} pairs")
    return replace(embedding, coords=adjusted)
