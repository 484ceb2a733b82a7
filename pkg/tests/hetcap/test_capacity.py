"""Tests for capacity laws."""

import numpy as np
import pytest

from src.hetcap.capacity import CapacityDist, capacity_from_config


class TestCapacityDist:
    """Test capacity law construction."""

    def test_constant(self):
        cap = CapacityDist.constant(3)
        assert cap.probs == (0.0, 0.0, 1.0)
        assert cap.mean == 3.0
        assert cap.max_capacity == 3

    def test_uniform(self):
        cap = CapacityDist.uniform(1, 4)
        assert cap.mean == pytest.approx(2.5)
        assert cap.pmf(2) == pytest.approx(0.25)
        assert cap.pmf(5) == 0.0

    def test_shifted_dominates(self):
        cap = CapacityDist.uniform(1, 2).shifted()
        assert cap.probs == (0.0, 0.5, 0.5)
        assert cap.mean == pytest.approx(2.5)

    def test_sample_support(self, rng):
        draws = CapacityDist((0.2, 0.0, 0.8)).sample(rng, 1000)
        assert set(np.unique(draws).tolist()) == {1, 3}

    @pytest.mark.parametrize(
        "probs", [(), (0.5, 0.6), (-0.1, 1.1), (1.0, 0.0)]
    )
    def test_invalid(self, probs):
        with pytest.raises(ValueError):
            CapacityDist(probs)

    def test_invalid_ranges(self):
        with pytest.raises(ValueError):
            CapacityDist.constant(0)
        with pytest.raises(ValueError):
            CapacityDist.uniform(3, 2)


class TestCapacityFromConfig:
    """Test config parsing."""

    def test_integer(self):
        assert capacity_from_config(2) == 2

    def test_probability_list(self):
        assert capacity_from_config([0.5, 0.5]) == CapacityDist((0.5, 0.5))

    def test_probs_dict(self):
        assert capacity_from_config({"probs": [0.0, 1.0]}) == CapacityDist.constant(2)

    def test_uniform_dict(self):
        assert capacity_from_config({"uniform": [1, 4]}) == CapacityDist.uniform(1, 4)

    def test_rejects_bool_and_zero(self):
        with pytest.raises(ValueError):
            capacity_from_config(True)
        with pytest.raises(ValueError):
            capacity_from_config(0)
