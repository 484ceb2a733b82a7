"""Instance generation and allocation policies on the line."""

from src.spatial_sim.instance import (
    SpatialInstance,
    covering_server_count,
    generate_instance,
)
from src.spatial_sim.policies import (
    AssignmentResult,
    allocate,
    allocate_gs,
    allocate_mtr,
    allocate_nn,
    allocate_ugs,
)
from src.spatial_sim.profile import QueueProfile, build_profile, profile_after_servers
from src.spatial_sim.stats import distance_stats, path_loss_cost, warmup_truncate
from src.spatial_sim.forkjoin import simulate_forkjoin

__all__ = [
    "AssignmentResult",
    "QueueProfile",
    "SpatialInstance",
    "allocate",
    "allocate_gs",
    "allocate_mtr",
    "allocate_nn",
    "allocate_ugs",
    "build_profile",
    "covering_server_count",
    "distance_stats",
    "generate_instance",
    "path_loss_cost",
    "profile_after_servers",
    "simulate_forkjoin",
    "warmup_truncate",
]
