"""Seeded replication and sweep orchestration."""

import itertools
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, replace
from typing import Any, Callable, Dict, List, Optional

import pandas as pd

from config.settings import Settings
from src import __version__
from src.experiments.config import GRID_KEYS, ConfigError, ExperimentConfig
from src.experiments.scenarios import COLUMNS, SINGLE_SHOT, TRIAL_FUNCTIONS, TrialOutput
from src.utils.logger import get_logger
from src.utils.numerics import NumericalError

logger = get_logger(__name__)


@dataclass
class Task:
    prefix: Dict[str, Any]
    scenario: str
    trial: int
    seed: int
    func: Callable[[], TrialOutput]


@dataclass
class RunReport:
    frame: pd.DataFrame
    assignment: Optional[pd.DataFrame] = None


def _trial_count(cfg: ExperimentConfig) -> int:
    if cfg.scenario in SINGLE_SHOT or (cfg.scenario in ("assign", "embed") and cfg.instance):
        return 1
    return cfg.trials


def _tasks_for(cfg: ExperimentConfig, prefix: Dict[str, Any]) -> List[Task]:
    func = TRIAL_FUNCTIONS[cfg.scenario]
    return [
        Task(prefix, cfg.scenario, trial, cfg.seed + trial, lambda t=trial: func(cfg, t))
        for trial in range(_trial_count(cfg))
    ]


def sweep_cells(cfg: ExperimentConfig) -> List[Dict[str, float]]:
    """Cartesian product of the grid, keys in a fixed order."""
    keys = [k for k in GRID_KEYS if k in cfg.grid]
    return [dict(zip(keys, values)) for values in itertools.product(*(cfg.grid[k] for k in keys))]


def build_tasks(cfg: ExperimentConfig) -> List[Task]:
    if cfg.scenario != "sweep":
        return _tasks_for(cfg, {})

    tasks: List[Task] = []
    for index, cell in enumerate(sweep_cells(cfg)):
        prefix = {"cell": index, **{f"grid_{k}": v for k, v in cell.items()}}
        cell_cfg = cfg.with_cell(cell)
        try:
            cell_cfg._check_stability()
        except ConfigError as e:
            message = str(e)
            tasks.append(
                Task(prefix, cell_cfg.scenario, 0, cell_cfg.seed, lambda m=message: _fail(m))
            )
            continue
        tasks.extend(_tasks_for(cell_cfg, prefix))
    return tasks


def _fail(message: str) -> TrialOutput:
    raise ValueError(message)


def _execute(task: Task) -> TrialOutput:
    try:
        return task.func()
    except (ValueError, NumericalError) as e:
        logger.warning(f"{task.scenario} trial {task.trial} failed: {e}")
        row = {"scenario": task.scenario, "trial": task.trial, "seed": task.seed, "error": str(e)}
        return TrialOutput([row])


def run_tasks(tasks: List[Task], workers: int) -> List[TrialOutput]:
    """Outputs in task order, whatever order the workers finish in."""
    if workers <= 1:
        return [_execute(task) for task in tasks]

    outputs: Dict[int, TrialOutput] = {}
    with ThreadPoolExecutor(max_workers=workers) as executor:
        future_to_index = {executor.submit(_execute, task): i for i, task in enumerate(tasks)}
        for future in as_completed(future_to_index):
            outputs[future_to_index[future]] = future.result()
    return [outputs[i] for i in range(len(tasks))]


def columns_for(cfg: ExperimentConfig) -> List[str]:
    if cfg.scenario != "sweep":
        return COLUMNS[cfg.scenario]
    grid = [f"grid_{k}" for k in GRID_KEYS if k in cfg.grid]
    return ["cell"] + grid + COLUMNS[cfg.sweep_of]


def run(cfg: ExperimentConfig, workers: Optional[int] = None) -> RunReport:
    """
    Run every trial (and sweep cell) of a config.

    Trial i uses seed ``cfg.seed + i``. Failed rows keep their inputs and
    carry the message in the ``error`` column.
    """
    workers = Settings.WORKERS if workers is None else workers
    tasks = build_tasks(cfg)
    logger.info(f"Running {cfg.name}: {cfg.scenario}, {len(tasks)} tasks, {workers} workers")

    outputs = run_tasks(tasks, workers)
    rows = []
    assignment = None
    for task, output in zip(tasks, outputs):
        for row in output.rows:
            rows.append({**task.prefix, **row, "version": __version__})
        if assignment is None and output.assignment is not None:
            assignment = output.assignment

    frame = pd.DataFrame(rows).reindex(columns=columns_for(cfg))
    failed = int(frame["error"].notna().sum())
    if failed:
        logger.warning(f"{failed} of {len(frame)} rows failed")
    logger.info(f"Finished {cfg.name}: {len(frame)} rows")
    return RunReport(frame, assignment)


def compare_policies(cfg: ExperimentConfig, workers: Optional[int] = None) -> RunReport:
    """Run the config as a policy comparison on MTR-matched users."""
    if cfg.scenario == "sweep":
        return run(replace(cfg, sweep_of="compare"), workers)
    return run(replace(cfg, scenario="compare"), workers)
