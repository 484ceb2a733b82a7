"""Tests for the exact reference solvers."""

from itertools import permutations

import numpy as np
import pytest

from src.optimal_assign.oracles import (
    BRUTE_FORCE_LIMIT,
    brute_force_oracle,
    min_cost_matching_oracle,
)


class TestBruteForceOracle:
    """Test exhaustive search."""

    def test_single_user(self):
        result = brute_force_oracle([2.0], [0.0, 2.5])
        assert result.assignment.tolist() == [1]
        assert result.total_cost == pytest.approx(0.5)

    def test_capacity(self):
        assert brute_force_oracle([1.0, 2.0], [3.0], 2).total_cost == pytest.approx(3.0)

    def test_unsorted_input_allowed(self):
        result = brute_force_oracle([4.0, 1.0], [5.0, 0.0])
        assert result.assignment.tolist() == [0, 1]

    def test_limits(self):
        with pytest.raises(ValueError):
            brute_force_oracle(np.arange(BRUTE_FORCE_LIMIT + 1.0), np.arange(20.0))
        with pytest.raises(ValueError):
            brute_force_oracle([1.0, 2.0], [0.0])


class TestMinCostMatchingOracle:
    """Test the Hungarian reference."""

    def test_single_entry(self):
        assignment, total = min_cost_matching_oracle(np.array([[3.5]]))
        assert assignment.tolist() == [0]
        assert total == 3.5

    def test_two_by_two(self):
        assignment, total = min_cost_matching_oracle(np.array([[1.0, 2.0], [2.0, 1.0]]))
        assert assignment.tolist() == [0, 1]
        assert total == pytest.approx(2.0)

    def test_rectangular_matches_enumeration(self, rng):
        perms = np.array(list(permutations(range(8), 6)))
        rows = np.arange(6)
        for _ in range(50):
            matrix = rng.uniform(0.0, 1.0, (6, 8))
            assignment, total = min_cost_matching_oracle(matrix)
            assert len(set(assignment.tolist())) == 6
            assert total == pytest.approx(matrix[rows, perms].sum(axis=1).min(), abs=1e-12)

    @pytest.mark.parametrize(
        "matrix",
        [np.ones(3), np.ones((3, 2)), np.array([[np.inf, 1.0]])],
    )
    def test_invalid(self, matrix):
        with pytest.raises(ValueError):
            min_cost_matching_oracle(matrix)
