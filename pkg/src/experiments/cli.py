"""Command-line surface: run an experiment config and write its CSV report."""

import argparse
import sys
from typing import List, Optional

from config.settings import Settings
from src.experiments.config import SCENARIOS, ConfigError
from src.experiments.io import load_config, save_report
from src.experiments.runner import run
from src.utils.logger import get_logger

logger = get_logger(__name__)

EXIT_CONFIG_ERROR = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Run a SERVLINE experiment")
    parser.add_argument("--config", required=True, help="Path to a JSON experiment config")
    parser.add_argument("--out", help="Output CSV path")
    parser.add_argument("--seed", type=int, help="Base seed (trial i uses seed + i)")
    parser.add_argument(
        "--workers", type=int, default=Settings.WORKERS, help="Parallel workers"
    )
    parser.add_argument("--scenario", choices=SCENARIOS, help="Override the config scenario")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Returns:
        0 on success (the report path is printed), 2 on an invalid config
    """
    args = build_parser().parse_args(argv)

    try:
        cfg = load_config(args.config, {"seed": args.seed, "scenario": args.scenario})
    except ConfigError as e:
        for error in e.errors:
            print(f"config error: {error['field']}: {error['message']}", file=sys.stderr)
        logger.error(str(e))
        return EXIT_CONFIG_ERROR

    report = run(cfg, workers=args.workers)
    path = save_report(cfg, report, args.out)
    print(path)
    return 0
