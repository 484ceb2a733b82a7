"""Tests for the queue profile."""

import numpy as np
import pytest

from src.spatial_sim.instance import SpatialInstance
from src.spatial_sim.policies import allocate_mtr
from src.spatial_sim.profile import build_profile, profile_after_servers


class TestBuildProfile:
    """Test N_x construction."""

    def test_hand_instance(self, small_instance):
        _, profile = allocate_mtr(small_instance)
        assert profile.breakpoints.tolist() == [1.0, 2.0, 3.0, 4.0, 5.0]
        assert profile.levels.tolist() == [1, 2, 1, 2, 1]
        assert profile.level_at(0.5) == 0
        assert profile.level_at(3.0) == 1
        assert profile.level_at(10.0) == 1

    def test_busy_cycles(self):
        instance = SpatialInstance([1.0, 5.0], [2.0, 7.0], 1)
        _, profile = allocate_mtr(instance)
        assert profile.busy_cycles == [(1.0, 2.0), (5.0, 7.0)]
        assert profile.integral() == pytest.approx(3.0)

    def test_user_at_server_counted_first(self):
        instance = SpatialInstance([2.0], [2.0], 1)
        _, profile = allocate_mtr(instance)
        assert len(profile.levels) == 0
        assert profile.integral() == 0.0

    def test_rejects_overserved(self):
        instance = SpatialInstance([3.0], [2.0], 1)
        with pytest.raises(ValueError):
            build_profile(instance, np.array([1]))

    def test_integral_upto(self):
        instance = SpatialInstance([1.0, 2.0], [3.0], 2)
        _, profile = allocate_mtr(instance)
        assert profile.integral() == pytest.approx(3.0)
        assert profile.integral(upto=2.0) == pytest.approx(1.0)


class TestProfileAfterServers:
    """Test sampling N_x just after servers."""

    def test_hand_instance(self, small_instance):
        _, profile = allocate_mtr(small_instance)
        after = profile_after_servers(profile, small_instance.servers)
        assert after.tolist() == [1, 1]

    def test_empty_queue(self):
        instance = SpatialInstance([1.0], [2.0, 3.0], 1)
        _, profile = allocate_mtr(instance)
        assert profile_after_servers(profile, instance.servers).tolist() == [0, 0]
