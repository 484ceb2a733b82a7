"""
Per-trial work for each scenario kind.

Every function returns a ``TrialOutput`` whose rows carry the trial inputs,
outputs and seed; the runner adds the version column and orders the rows.
"""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd

from src.analytic import (
    cost_grps,
    cost_prgs,
    grps_expected_distance,
    heavy_traffic_distance,
    mm1_bulk,
    prgs_expected_distance,
    uncapacitated_distance,
)
from src.distributions.laws import Distribution, Exponential
from src.embed2d import EmbeddingConfig, PlanarInstance, clustered_instance, match_via_embedding
from src.experiments.config import ExperimentConfig
from src.hetcap import CapacityDist, hetcap_solve
from src.optimal_assign import has_crossing, opt_dp
from src.spatial_sim import (
    SpatialInstance,
    allocate,
    allocate_mtr,
    covering_server_count,
    generate_instance,
    path_loss_cost,
    simulate_forkjoin,
    warmup_truncate,
)
from src.utils.logger import get_logger
from src.utils.numerics import NumericalError

logger = get_logger(__name__)

COMPARE_POLICIES = ("MTR", "NN", "GS", "OPT")

_HEAD = ["scenario", "trial", "seed"]
_QUEUE = ["lam", "mu", "c", "rho", "user_law", "server_law"]
_TAIL = ["error", "version"]

COLUMNS: Dict[str, List[str]] = {
    "simulate": _HEAD + ["policy"] + _QUEUE
    + ["n_users", "n_servers", "matched", "mean_distance", "variance", "beta", "cost"] + _TAIL,
    "analytic": _HEAD + ["mode"] + _QUEUE
    + ["beta", "expected_distance", "expected_cost"] + _TAIL,
    "hetcap": _HEAD + ["capacity"] + _QUEUE + ["mean_queue", "expected_distance"] + _TAIL,
    "assign": _HEAD
    + ["n_users", "n_servers", "total_capacity", "total_cost", "mean_distance", "no_crossing"]
    + _TAIL,
    "embed": _HEAD
    + ["n_users", "n_servers", "k_users", "k_servers", "opt_mean", "embed_mean", "ratio"]
    + _TAIL,
}
COLUMNS["compare"] = COLUMNS["simulate"]


@dataclass
class TrialOutput:
    rows: List[Dict[str, Any]]
    assignment: Optional[pd.DataFrame] = None


def law_label(law: Distribution) -> str:
    params = ",".join(
        f"{k}={v:.6g}" for k, v in law.to_dict().items() if k != "kind"
    )
    return f"{law.kind}({params})"


def _queue_fields(cfg: ExperimentConfig) -> Dict[str, Any]:
    capacity = (
        cfg.capacity.to_dict()["probs"] if isinstance(cfg.capacity, CapacityDist) else cfg.capacity
    )
    return {
        "lam": cfg.lam,
        "mu": cfg.mu,
        "c": cfg.mean_capacity,
        "rho": cfg.rho,
        "user_law": law_label(cfg.users),
        "server_law": law_label(cfg.servers),
        "capacity": str(capacity),
    }


def _require_poisson_users(cfg: ExperimentConfig) -> None:
    if not isinstance(cfg.users, Exponential):
        raise ValueError("Model needs Poisson users (exponential user gaps)")


def _require_poisson_servers(cfg: ExperimentConfig) -> None:
    if not isinstance(cfg.servers, Exponential):
        raise ValueError("Model needs Poisson servers (exponential server gaps)")


def trial_seed(cfg: ExperimentConfig, trial: int) -> int:
    return cfg.seed + trial


def _line_instance(cfg: ExperimentConfig, seed: int) -> SpatialInstance:
    n_servers = cfg.n_servers or covering_server_count(cfg.n_users, cfg.users, cfg.servers)
    return generate_instance(cfg.users, cfg.servers, cfg.n_users, n_servers, cfg.capacity, seed)


def _distance_row(
    cfg: ExperimentConfig, policy: str, distances: np.ndarray, n_servers: int
) -> Dict[str, Any]:
    matched = len(distances)
    return {
        "policy": policy,
        "n_users": cfg.n_users,
        "n_servers": n_servers,
        "matched": matched,
        "mean_distance": float(np.mean(distances)) if matched else math.nan,
        "variance": float(np.var(distances, ddof=1)) if matched > 1 else math.nan,
        "beta": cfg.beta,
        "cost": path_loss_cost(distances, cfg.beta, cfg.t0) if matched else math.nan,
    }


def _opt_distances(instance: SpatialInstance) -> np.ndarray:
    result = opt_dp(instance.users, instance.servers, instance.capacities)
    if has_crossing(result.assignment):
        raise NumericalError("Optimal assignment has a crossing")
    return result.distances


def _guarded(row_base: Dict[str, Any], label: str, compute) -> Dict[str, Any]:
    """Run one row's computation, turning numeric and input failures into an error cell."""
    try:
        return {**row_base, **compute()}
    except (ValueError, NumericalError) as e:
        logger.warning(f"{label} failed: {e}")
        return {**row_base, "error": str(e)}


def simulate_trial(cfg: ExperimentConfig, trial: int) -> TrialOutput:
    """One seeded line instance; each configured policy in turn, after warm-up."""
    seed = trial_seed(cfg, trial)
    instance = _line_instance(cfg, seed)
    base = {"scenario": cfg.scenario, "trial": trial, "seed": seed, **_queue_fields(cfg)}

    def run_policy(policy: str) -> Dict[str, Any]:
        if policy == "OPT":
            distances = _opt_distances(instance)
            skip = int(cfg.warmup * len(distances))
            distances = distances[skip:]
        elif policy == "FORKJOIN":
            _require_poisson_users(cfg)
            _require_poisson_servers(cfg)
            if cfg.unit_capacity != 1:
                raise ValueError("Fork-join runs with unit capacities")
            distances = simulate_forkjoin(cfg.lam, cfg.mu, cfg.n_users, seed, cfg.warmup)
        else:
            distances = warmup_truncate(allocate(policy, instance), cfg.warmup).distances
        return _distance_row(cfg, policy, distances, instance.n_servers)

    rows = [
        _guarded({**base, "policy": policy}, f"{policy} trial {trial}", lambda p=policy: run_policy(p))
        for policy in cfg.policies
    ]
    return TrialOutput(rows)


def compare_trial(cfg: ExperimentConfig, trial: int) -> TrialOutput:
    """
    Run MTR, then NN, GS and OPT on the users MTR matched, so every policy
    is scored on the same user set.
    """
    seed = trial_seed(cfg, trial)
    instance = _line_instance(cfg, seed)
    base = {"scenario": cfg.scenario, "trial": trial, "seed": seed, **_queue_fields(cfg)}

    mtr, _ = allocate_mtr(instance)
    subset = instance.restrict_users(mtr.matched_users)
    runs = {
        "MTR": lambda: mtr.distances,
        "NN": lambda: allocate("NN", subset).distances,
        "GS": lambda: allocate("GS", subset).distances,
        "OPT": lambda: _opt_distances(subset),
    }
    rows = []
    for policy in COMPARE_POLICIES:
        def compute(p=policy):
            return _distance_row(cfg, p, runs[p](), instance.n_servers)

        rows.append(_guarded({**base, "policy": policy}, f"{policy} trial {trial}", compute))
    return TrialOutput(rows)


def _analytic_mode(cfg: ExperimentConfig, mode: str) -> Dict[str, Any]:
    c = cfg.unit_capacity
    cost = math.nan
    integer_beta = float(cfg.beta).is_integer() and 0 <= cfg.beta <= 4

    if mode == "PRGS":
        _require_poisson_users(cfg)
        distance = prgs_expected_distance(cfg.lam, cfg.servers, c).expected_distance
        if c == 1 and integer_beta:
            cost = cost_prgs(cfg.lam, cfg.servers, int(cfg.beta), cfg.t0).expected_cost
    elif mode == "GRPS":
        _require_poisson_servers(cfg)
        distance = grps_expected_distance(cfg.users, cfg.mu, c).expected_distance
        if c == 1:
            cost = cost_grps(cfg.users, cfg.mu, cfg.beta, cfg.t0).expected_cost
    elif mode == "MM1_BULK":
        _require_poisson_users(cfg)
        _require_poisson_servers(cfg)
        distance = mm1_bulk(cfg.lam, cfg.mu, c).expected_distance
    elif mode == "HEAVY_TRAFFIC":
        if c != 1:
            raise ValueError("Heavy-traffic approximation is for unit capacities")
        distance = heavy_traffic_distance(cfg.users, cfg.servers)
    elif mode == "UNCAPACITATED_GRPS":
        _require_poisson_servers(cfg)
        distance = uncapacitated_distance("GRPS", cfg.servers)
    elif mode == "UNCAPACITATED_PRGS":
        _require_poisson_users(cfg)
        distance = uncapacitated_distance("PRGS", cfg.servers)
    else:
        raise ValueError(f"Unknown analytic mode: {mode}")
    return {"expected_distance": distance, "expected_cost": cost}


_MODE_ROWS = {"UNCAPACITATED": ("UNCAPACITATED_GRPS", "UNCAPACITATED_PRGS")}


def analytic_trial(cfg: ExperimentConfig, trial: int = 0) -> TrialOutput:
    base = {
        "scenario": cfg.scenario,
        "trial": trial,
        "seed": trial_seed(cfg, trial),
        "beta": cfg.beta,
        **_queue_fields(cfg),
    }
    rows = [
        _guarded({**base, "mode": row}, f"{row} analytic", lambda m=row: _analytic_mode(cfg, m))
        for mode in cfg.modes
        for row in _MODE_ROWS.get(mode, (mode,))
    ]
    return TrialOutput(rows)


def hetcap_trial(cfg: ExperimentConfig, trial: int = 0) -> TrialOutput:
    _require_poisson_users(cfg)
    cap = cfg.capacity if isinstance(cfg.capacity, CapacityDist) else CapacityDist.constant(cfg.capacity)
    solution = hetcap_solve(cfg.lam, cfg.servers, cap)
    row = {
        "scenario": cfg.scenario,
        "trial": trial,
        "seed": trial_seed(cfg, trial),
        **_queue_fields(cfg),
        "mean_queue": solution.mean_queue,
        "expected_distance": solution.expected_distance,
    }
    return TrialOutput([row])


def assign_trial(cfg: ExperimentConfig, trial: int) -> TrialOutput:
    seed = trial_seed(cfg, trial)
    instance = SpatialInstance.read_csv(cfg.instance) if cfg.instance else _line_instance(cfg, seed)
    result = opt_dp(instance.users, instance.servers, instance.capacities)
    row = {
        "scenario": cfg.scenario,
        "trial": trial,
        "seed": seed,
        "n_users": instance.n_users,
        "n_servers": instance.n_servers,
        "total_capacity": instance.total_capacity,
        "total_cost": result.total_cost,
        "mean_distance": result.mean,
        "no_crossing": not has_crossing(result.assignment),
    }
    assignment = pd.DataFrame(
        {
            "user_idx": np.arange(instance.n_users),
            "server_idx": result.assignment,
            "distance": result.distances,
        }
    )
    return TrialOutput([row], assignment)


def embed_trial(cfg: ExperimentConfig, trial: int) -> TrialOutput:
    seed = trial_seed(cfg, trial)
    if cfg.instance:
        instance = PlanarInstance.read_csv(cfg.instance)
    else:
        instance = clustered_instance(cfg.n_users, cfg.n_servers or 2 * cfg.n_users, seed)
    config = EmbeddingConfig.from_dict(cfg.embedding)
    k_users, k_servers = config.neighbor_counts(instance)
    match = match_via_embedding(instance, config)
    row = {
        "scenario": cfg.scenario,
        "trial": trial,
        "seed": seed,
        "n_users": instance.n_users,
        "n_servers": instance.n_servers,
        "k_users": k_users,
        "k_servers": k_servers,
        **match.summary(),
    }
    assignment = pd.DataFrame(
        {
            "user_idx": np.arange(instance.n_users),
            "server_idx": match.result.assignment,
            "distance": match.result.distances,
        }
    )
    return TrialOutput([row], assignment)


TRIAL_FUNCTIONS = {
    "simulate": simulate_trial,
    "compare": compare_trial,
    "analytic": analytic_trial,
    "hetcap": hetcap_trial,
    "assign": assign_trial,
    "embed": embed_trial,
}

# Scenarios whose output does not depend on the trial index
SINGLE_SHOT = ("analytic", "hetcap")
