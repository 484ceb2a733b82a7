"""Random server capacities under PRGS."""

from src.hetcap.capacity import CapacityDist, capacity_from_config
from src.hetcap.solver import (
    HetCapSolution,
    arrival_batch_probs,
    hetcap_expected_distance,
    hetcap_solve,
    hetcap_zero_count,
)

__all__ = [
    "CapacityDist",
    "HetCapSolution",
    "arrival_batch_probs",
    "capacity_from_config",
    "hetcap_expected_distance",
    "hetcap_solve",
    "hetcap_zero_count",
]
