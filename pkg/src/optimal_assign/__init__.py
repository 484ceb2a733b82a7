"""Optimal assignment on the line and exact oracles."""

from src.optimal_assign.dp import (
    OptAssignment,
    assignment_cost,
    has_crossing,
    opt_dp,
    replicate_servers,
    trivial_equal_assignment,
    usable_slot_range,
)
from src.optimal_assign.oracles import brute_force_oracle, min_cost_matching_oracle
from src.optimal_assign.worst_case import gs_worst_case_instance

__all__ = [
    "OptAssignment",
    "assignment_cost",
    "brute_force_oracle",
    "gs_worst_case_instance",
    "has_crossing",
    "min_cost_matching_oracle",
    "opt_dp",
    "replicate_servers",
    "trivial_equal_assignment",
    "usable_slot_range",
]
