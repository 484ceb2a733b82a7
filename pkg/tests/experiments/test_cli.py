"""Tests for the command-line surface."""

import json

import pandas as pd

from src.experiments.cli import EXIT_CONFIG_ERROR, main


class TestMain:
    """Test the experiment CLI."""

    def test_runs_config(self, tmp_path, capsys):
        config = tmp_path / "cfg.json"
        config.write_text(json.dumps({"scenario": "analytic", "modes": ["PRGS", "MM1_BULK"]}))
        out = tmp_path / "report.csv"

        assert main(["--config", str(config), "--out", str(out)]) == 0
        assert capsys.readouterr().out.strip() == str(out)
        frame = pd.read_csv(out)
        assert frame["mode"].tolist() == ["PRGS", "MM1_BULK"]

    def test_seed_override(self, tmp_path):
        config = tmp_path / "cfg.json"
        config.write_text(json.dumps({"scenario": "simulate", "n_users": 300, "trials": 2}))
        out = tmp_path / "report.csv"

        assert main(["--config", str(config), "--out", str(out), "--seed", "40"]) == 0
        assert pd.read_csv(out)["seed"].tolist() == [40, 41]

    def test_invalid_config_exit_code(self, tmp_path, capsys):
        config = tmp_path / "cfg.json"
        config.write_text(json.dumps({"scenario": "simulate", "trials": -1, "lam": 2.0}))
        out = tmp_path / "report.csv"

        assert main(["--config", str(config), "--out", str(out)]) == EXIT_CONFIG_ERROR
        assert "trials" in capsys.readouterr().err
        assert not out.exists()

    def test_missing_config_file(self, tmp_path):
        assert main(["--config", str(tmp_path / "nope.json")]) == EXIT_CONFIG_ERROR
