"""Tests for reconstruction weights."""

import numpy as np
import pytest

from src.embed2d.instance import PlanarInstance, clustered_instance
from src.embed2d.weights import EmbeddingConfig, knn_weights, weight_matrix


class TestEmbeddingConfig:
    """Test neighbour-count resolution."""

    def test_fractions_of_opposite_set(self):
        instance = clustered_instance(20, 40, seed=1)
        assert EmbeddingConfig().neighbor_counts(instance) == (10, 5)

    def test_absolute_counts(self):
        instance = clustered_instance(20, 40, seed=1)
        assert EmbeddingConfig(k_users=3, k_servers=2).neighbor_counts(instance) == (3, 2)

    def test_count_exceeds_available(self):
        instance = clustered_instance(5, 10, seed=1)
        with pytest.raises(ValueError):
            EmbeddingConfig(k_servers=6).neighbor_counts(instance)

    def test_invalid_fraction(self):
        instance = clustered_instance(5, 10, seed=1)
        with pytest.raises(ValueError):
            EmbeddingConfig(k_users=1.5).neighbor_counts(instance)

    def test_nonpositive_parameters(self):
        with pytest.raises(ValueError):
            EmbeddingConfig(tikhonov=0.0)
        with pytest.raises(ValueError):
            EmbeddingConfig(shift=-1.0)

    def test_method_and_leaf_size(self):
        assert EmbeddingConfig().method == "hierarchical"
        assert EmbeddingConfig.from_dict({"method": "spectral", "leaf_size": 8}).leaf_size == 8
        with pytest.raises(ValueError):
            EmbeddingConfig(method="isomap")
        with pytest.raises(ValueError):
            EmbeddingConfig(leaf_size=0)

    def test_counts_within_subset(self):
        config = EmbeddingConfig()
        assert config.counts_within(20, 40) == (10, 5)
        assert config.counts_within(2, 3) == (1, 1)
        assert config.counts_within(0, 3) == (1, 0)
        assert EmbeddingConfig(k_users=6, k_servers=2).counts_within(4, 3) == (3, 2)

    def test_from_dict_ignores_unknown_keys(self):
        config = EmbeddingConfig.from_dict({"k_users": 4, "epsilon": 1e-3, "colour": "red"})
        assert config.k_users == 4
        assert config.epsilon == 1e-3


class TestKnnWeights:
    """Test locally linear reconstruction over the opposite role."""

    def test_single_neighbour(self):
        instance = PlanarInstance([[0.0, 0.0]], [[1.0, 0.0], [5.0, 0.0]])
        weights = knn_weights(instance, EmbeddingConfig(k_users=1, k_servers=1))
        assert weights.weights[0].tolist() == [0.0, 1.0, 0.0]

    def test_symmetric_neighbours_split_evenly(self):
        instance = PlanarInstance([[0.0, 0.0]], [[-1.0, 0.0], [1.0, 0.0]])
        weights = knn_weights(instance, EmbeddingConfig(k_users=2, k_servers=1))
        assert weights.weights[0, 1] == pytest.approx(0.5, abs=1e-12)
        assert weights.weights[0, 2] == pytest.approx(0.5, abs=1e-12)

    def test_rows_sum_to_one(self):
        weights = knn_weights(clustered_instance(30, 60, seed=4))
        assert np.allclose(weights.weights.sum(axis=1), 1.0, atol=1e-10)

    def test_only_opposite_role(self):
        instance = clustered_instance(10, 20, seed=2)
        w = knn_weights(instance).weights
        assert np.all(w[:10, :10] == 0.0)
        assert np.all(w[10:, 10:] == 0.0)

    def test_neighbour_count_per_row(self):
        instance = clustered_instance(10, 20, seed=2)
        w = knn_weights(instance, EmbeddingConfig(k_users=4, k_servers=3)).weights
        assert np.all(np.count_nonzero(w[:10], axis=1) <= 4)
        assert np.all(np.count_nonzero(w[10:], axis=1) <= 3)

    def test_coincident_neighbourhood(self):
        instance = PlanarInstance([[0.0, 0.0]], [[0.0, 0.0], [0.0, 0.0]])
        weights = knn_weights(instance, EmbeddingConfig(k_users=2, k_servers=1))
        assert weights.degenerate == [0]
        assert weights.weights[0].tolist() == [0.0, 0.5, 0.5]


class TestWeightMatrix:
    """Test weights built directly from point arrays."""

    def test_matches_instance_weights(self):
        instance = clustered_instance(12, 24, seed=4)
        direct = weight_matrix(instance.users, instance.servers, 6, 3)
        assert np.allclose(direct.weights, knn_weights(instance).weights)

    def test_carries_points(self):
        users = np.array([[0.0, 0.0], [1.0, 0.0]])
        servers = np.array([[0.0, 1.0], [1.0, 1.0], [2.0, 2.0]])
        weights = weight_matrix(users, servers, 2, 1)
        assert weights.points.tolist() == np.vstack([users, servers]).tolist()
        assert weights.n_users == 2
