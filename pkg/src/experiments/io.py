"""Config loading and report/artifact writing."""

import json
import os
from typing import Any, Dict, Optional

import pandas as pd

from config.settings import Settings
from src.experiments.config import ConfigError, ExperimentConfig
from src.experiments.runner import RunReport
from src.utils.logger import get_logger

logger = get_logger(__name__)


def load_config(path: str, overrides: Optional[Dict[str, Any]] = None) -> ExperimentConfig:
    """
    Read a JSON config and apply CLI overrides.

    Raises:
        ConfigError: If the file is unreadable or any field is invalid
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError([{"field": "config", "message": f"cannot read {path}: {e}"}]) from e
    if not isinstance(data, dict):
        raise ConfigError([{"field": "config", "message": "top level must be an object"}])

    data.update({k: v for k, v in (overrides or {}).items() if v is not None})
    return ExperimentConfig.from_dict(data)


def write_frame(frame: pd.DataFrame, path: str) -> str:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    frame.to_csv(path, index=False, float_format=Settings.FLOAT_FORMAT, encoding="utf-8")
    return path


def assignment_path(report_path: str) -> str:
    stem, ext = os.path.splitext(report_path)
    return f"{stem}_assignment{ext or '.csv'}"


def default_output(cfg: ExperimentConfig) -> str:
    return os.path.join(Settings.ARTIFACT_DIR, cfg.name, "report.csv")


def save_report(cfg: ExperimentConfig, report: RunReport, path: Optional[str] = None) -> str:
    """Write the report CSV, the assignment sidecar if any, and the resolved config."""
    path = path or cfg.output or default_output(cfg)
    write_frame(report.frame, path)
    if report.assignment is not None:
        write_frame(report.assignment, assignment_path(path))

    config_path = f"{os.path.splitext(path)[0]}_config.json"
    with open(config_path, "w", encoding="utf-8") as f:
        json.dump(cfg.to_dict(), f, indent=2)

    logger.info(f"Report saved to {path}")
    return path
