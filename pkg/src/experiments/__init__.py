"""Experiment harness: configs, seeded trials, sweeps and CSV reports."""

from src.experiments.config import ConfigError, ExperimentConfig
from src.experiments.io import load_config, save_report, write_frame
from src.experiments.runner import RunReport, compare_policies, run, sweep_cells

__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "RunReport",
    "compare_policies",
    "load_config",
    "run",
    "save_report",
    "sweep_cells",
    "write_frame",
]
