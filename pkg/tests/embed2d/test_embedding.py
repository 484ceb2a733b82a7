"""Tests for the 1D embedding and spread adjustment."""

import numpy as np
import pytest

from scipy.spatial.distance import cdist

from src.embed2d.embedding import (
    Embedding,
    embed_1d,
    hierarchical_embedding,
    principal_axis,
    spread_adjust,
)
from src.embed2d.instance import PlanarInstance, clustered_instance, collinear_instance
from src.embed2d.weights import EmbeddingConfig, WeightMatrix, knn_weights


def _comb_positions():
    users = np.array([10.0 * k for k in range(6)])
    servers = np.sort(np.concatenate([users + 1.0, users + 5.0]))
    return users, servers


class TestEmbed1d:
    """Test the eigenvector embedding."""

    def test_unit_norm_and_residual(self):
        embedding = embed_1d(knn_weights(clustered_instance(30, 60, seed=8)))
        assert np.linalg.norm(embedding.coords) == pytest.approx(1.0, abs=1e-10)
        assert embedding.residual == pytest.approx(embedding.eigenvalue, abs=1e-8)
        assert len(embedding.user_coords) == 30
        assert len(embedding.server_coords) == 60

    def test_sign_convention(self):
        embedding = embed_1d(knn_weights(clustered_instance(30, 60, seed=8)))
        assert embedding.user_coords[0] <= embedding.user_coords[-1]

    @pytest.mark.parametrize("direction", [(1.0, 0.0), (1.0, 1.0), (-2.0, 0.5)])
    def test_collinear_order_preserved(self, direction):
        users, servers = _comb_positions()
        instance = collinear_instance(users, servers, origin=(3.0, -1.0), direction=direction)
        embedding = embed_1d(knn_weights(instance))
        along = np.concatenate([users, servers])
        assert np.array_equal(
            np.argsort(embedding.coords, kind="stable"), np.argsort(along, kind="stable")
        )

    def test_tied_modes_follow_longest_axis(self):
        # Many planar neighbours make the affine modes degenerate with the constant one
        instance = clustered_instance(30, 60, seed=8)
        embedding = embed_1d(knn_weights(instance))
        axis = principal_axis(instance.points)
        assert abs(np.corrcoef(embedding.coords, axis)[0, 1]) > 0.8

    def test_too_few_nodes(self):
        with pytest.raises(ValueError):
            embed_1d(WeightMatrix(np.zeros((1, 1)), 1))


class TestHierarchicalEmbedding:
    """Test recursive median splitting and path-length coordinates."""

    def test_path_coordinates(self):
        instance = clustered_instance(30, 60, seed=2)
        embedding = hierarchical_embedding(instance)
        order = np.argsort(embedding.coords, kind="stable")
        steps = np.linalg.norm(np.diff(instance.points[order], axis=0), axis=1)
        assert embedding.coords[order[0]] == 0.0
        assert np.allclose(np.diff(embedding.coords[order]), steps)

    def test_line_distance_never_undercuts_plane(self):
        instance = clustered_instance(25, 50, seed=5)
        coords = hierarchical_embedding(instance).coords
        planar = cdist(instance.points, instance.points)
        assert np.all(np.abs(coords[:, None] - coords[None, :]) >= planar - 1e-9)

    @pytest.mark.parametrize("direction", [(1.0, 0.0), (1.0, 1.0), (-2.0, 0.5)])
    def test_collinear_order_preserved(self, direction):
        users, servers = _comb_positions()
        instance = collinear_instance(users, servers, origin=(3.0, -1.0), direction=direction)
        order = np.argsort(hierarchical_embedding(instance).coords, kind="stable")
        along = np.concatenate([users, servers])[order]
        assert np.all(np.diff(along) > 0) or np.all(np.diff(along) < 0)

    def test_top_level_embedding_reported(self):
        embedding = hierarchical_embedding(clustered_instance(30, 60, seed=8))
        assert np.isfinite(embedding.residual)
        assert embedding.residual == pytest.approx(embedding.eigenvalue, abs=1e-8)

    def test_two_nodes(self):
        instance = PlanarInstance([[0.0, 0.0]], [[3.0, 4.0]])
        embedding = hierarchical_embedding(instance)
        assert sorted(embedding.coords.tolist()) == pytest.approx([0.0, 5.0])
        assert np.isnan(embedding.residual)

    def test_deterministic(self):
        instance = clustered_instance(40, 80, seed=3)
        first = hierarchical_embedding(instance).coords
        assert np.array_equal(first, hierarchical_embedding(instance).coords)

    def test_leaf_size_respected_by_small_parts(self):
        instance = clustered_instance(3, 4, seed=1)
        embedding = hierarchical_embedding(instance, EmbeddingConfig(leaf_size=10))
        order = np.argsort(embedding.coords, kind="stable")
        axis = principal_axis(instance.points)
        assert np.all(np.diff(axis[order]) >= 0) or np.all(np.diff(axis[order]) <= 0)


class TestSpreadAdjust:
    """Test separation of far-apart nodes that embed together."""

    INSTANCE = PlanarInstance([[0.0, 0.0], [10.0, 0.0]], [[10.0, 1.0], [20.0, 0.0]])
    CONFIG = EmbeddingConfig(epsilon=1e-3, delta_far=5.0, shift=1.0)

    def test_one_flagged_pair(self):
        embedding = Embedding(np.array([0.0, 0.5, 1e-6, 0.8]), 2, 0.0, 0.0)
        adjusted = spread_adjust(embedding, self.INSTANCE, self.CONFIG)
        assert adjusted.coords == pytest.approx([0.0, 1.5, 1.0 + 1e-6, 1.8])

    def test_two_flagged_pairs(self):
        embedding = Embedding(np.array([0.0, 0.5, 1e-6, 0.5 + 1e-6]), 2, 0.0, 0.0)
        adjusted = spread_adjust(embedding, self.INSTANCE, self.CONFIG)
        assert adjusted.coords == pytest.approx([0.0, 1.5, 1.0 + 1e-6, 2.5 + 1e-6])

    def test_close_in_plane_not_flagged(self):
        embedding = Embedding(np.array([0.0, 0.5, 0.2, 0.5 + 1e-6]), 2, 0.0, 0.0)
        instance = PlanarInstance([[0.0, 0.0], [10.0, 0.0]], [[0.0, 1.0], [10.0, 1.0]])
        assert spread_adjust(embedding, instance, self.CONFIG) is embedding

    def test_order_preserved(self):
        instance = clustered_instance(40, 80, seed=9)
        embedding = embed_1d(knn_weights(instance))
        adjusted = spread_adjust(embedding, instance)
        assert np.array_equal(
            np.argsort(adjusted.coords, kind="stable"),
            np.argsort(embedding.coords, kind="stable"),
        )
