"""Closed and semi-closed forms for unidirectional policies."""

from src.analytic.bulk import BulkMM1Result, mm1_bulk, mm1_sojourn, ugs_distance_density
from src.analytic.cost import CostResult, cost_grps, cost_prgs
from src.analytic.grps import GrpsResult, grps_expected_distance, grps_queue_pmf
from src.analytic.limits import (
    forkjoin_expected_max,
    heavy_traffic_distance,
    uncapacitated_distance,
)
from src.analytic.prgs import (
    EsabqSolution,
    esabq_pmf,
    prgs_expected_distance,
    prgs_zero_count,
    prgs_zeros,
    welch_sojourn_mean,
)

__all__ = [
    "BulkMM1Result",
    "CostResult",
    "EsabqSolution",
    "GrpsResult",
    "cost_grps",
    "cost_prgs",
    "esabq_pmf",
    "forkjoin_expected_max",
    "grps_expected_distance",
    "grps_queue_pmf",
    "heavy_traffic_distance",
    "mm1_bulk",
    "mm1_sojourn",
    "prgs_expected_distance",
    "prgs_zero_count",
    "prgs_zeros",
    "uncapacitated_distance",
    "ugs_distance_density",
    "welch_sojourn_mean",
]
