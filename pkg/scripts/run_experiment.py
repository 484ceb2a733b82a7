#!/usr/bin/env python3
"""
Run an experiment config and write its CSV report.

    python scripts/run_experiment.py --config config/experiments/mtr_exp.json
"""

import os
import sys

# Add repository root to path
sys.path.append(os.path.join(os.path.dirname(__file__), ".."))

from src.experiments.cli import main

if __name__ == "__main__":
    sys.exit(main())
