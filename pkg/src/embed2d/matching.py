"""2D assignment through the 1D embedding and the line DP."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.embed2d.embedding import Embedding, embed_1d, hierarchical_embedding, spread_adjust
from src.embed2d.instance import PlanarInstance
from src.embed2d.weights import EmbeddingConfig, knn_weights
from src.optimal_assign.dp import OptAssignment, opt_dp
from src.optimal_assign.oracles import min_cost_matching_oracle
from src.utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class EmbeddingMatch:
    """Embedding-based assignment (original indices) and how it compares with OPT."""

    result: OptAssignment
    opt_assignment: np.ndarray
    opt_mean: float
    embedding: Embedding

    @property
    def embed_mean(self) -> float:
        return self.result.mean

    @property
    def ratio(self) -> float:
        if self.opt_mean == 0.0:
            return 1.0 if self.embed_mean == 0.0 else float("inf")
        return self.embed_mean / self.opt_mean

    def summary(self) -> dict:
        return {"opt_mean": self.opt_mean, "embed_mean": self.embed_mean, "ratio": self.ratio}


def match_via_embedding(
    instance: PlanarInstance, config: Optional[EmbeddingConfig] = None
) -> EmbeddingMatch:
    config = config or EmbeddingConfig()
    if config.method == "spectral":
        embedding = embed_1d(knn_weights(instance, config))
    else:
        embedding = hierarchical_embedding(instance, config)
    embedding = spread_adjust(embedding, instance, config)

    user_order = np.argsort(embedding.user_coords, kind="stable")
    server_order = np.argsort(embedding.server_coords, kind="stable")
    line = opt_dp(
        embedding.user_coords[user_order], embedding.server_coords[server_order]
    )

    assignment = np.empty(instance.n_users, dtype=np.int64)
    assignment[user_order] = server_order[line.assignment]
    distance = instance.distance_matrix()
    chosen = distance[np.arange(instance.n_users), assignment]

    opt_assignment, opt_total = min_cost_matching_oracle(distance)
    opt_mean = opt_total / instance.n_users if instance.n_users else 0.0
    match = EmbeddingMatch(OptAssignment(assignment, chosen), opt_assignment, opt_mean, embedding)
    logger.info(
        f"Embedding match: {instance.n_users} users, OPT mean {opt_mean:.4g}, "
        f"ratio {match.ratio:.3f}"
    )
    return match
