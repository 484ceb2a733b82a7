"""Planar assignment by one-dimensional embedding."""

from src.embed2d.embedding import (
    Embedding,
    default_delta_far,
    embed_1d,
    hierarchical_embedding,
    principal_axis,
    spread_adjust,
)
from src.embed2d.instance import PlanarInstance, clustered_instance, collinear_instance
from src.embed2d.matching import EmbeddingMatch, match_via_embedding
from src.embed2d.weights import EmbeddingConfig, WeightMatrix, knn_weights, weight_matrix

__all__ = [
    "Embedding",
    "EmbeddingConfig",
    "EmbeddingMatch",
    "PlanarInstance",
    "WeightMatrix",
    "clustered_instance",
    "collinear_instance",
    "default_delta_far",
    "embed_1d",
    "hierarchical_embedding",
    "knn_weights",
    "match_via_embedding",
    "principal_axis",
    "spread_adjust",
    "weight_matrix",
]
