import json

import pandas as pd
import pytest

from app.api import cli
from app.api.models import RunConfig
from app.domain.exceptions import ConfigError, FuelNotFoundError, InfeasibleCycleError, UndefinedMetricError
from app.domain.entities.engine import StationId
from app.infrastructure.persistence.config_loader import load_run_config


def _write(path, text):
    path.write_text(text, encoding="utf-8")
    return str(path)


class TestExitCodes:
    @pytest.mark.parametrize("error, code", [
        (ConfigError("bad"), cli.EXIT_CONFIG),
        (FuelNotFoundError("kerosene", ["JP10"]), cli.EXIT_CONFIG),
        (InfeasibleCycleError("no heat", StationId.COMBUSTOR_EXIT), cli.EXIT_INFEASIBLE),
        (UndefinedMetricError("tsfc"), cli.EXIT_INFEASIBLE),
        (RuntimeError("boom"), cli.EXIT_UNEXPECTED),
    ])
    def test_mapping(self, error, code):
        assert cli.exit_code_for(error) == code


def test_dump_defaults_round_trip(tmp_path):
    target = tmp_path / "defaults.yaml"
    assert cli.run(["dump-defaults", "--output", str(target)]) == cli.EXIT_OK
    assert load_run_config(target) == RunConfig()


def test_dump_defaults_to_stdout(capsys):
    assert cli.run(["dump-defaults"]) == cli.EXIT_OK
    assert "engine:" in capsys.readouterr().out


def test_malformed_config_exits_2(tmp_path):
    config = _write(tmp_path / "bad.yaml", "engine:\n  TIT: hot\n")
    assert cli.run(["analyze", "--config", config, "--output", str(tmp_path / "out")]) == cli.EXIT_CONFIG


def test_unknown_fuel_exits_2(tmp_path):
    assert cli.run(["analyze", "--fuel", "kerosene", "--output", str(tmp_path)]) == cli.EXIT_CONFIG


def test_bad_override_exits_2(tmp_path):
    assert cli.run(["analyze", "--condition", "landing", "--output", str(tmp_path)]) == cli.EXIT_CONFIG


def test_bad_jobs_exits_2(tmp_path):
    assert cli.run(["sweep", "--jobs", "0", "--output", str(tmp_path)]) == cli.EXIT_CONFIG


def test_low_turbine_inlet_temperature_exits_3(tmp_path):
    config = _write(tmp_path / "cold.yaml", "engine:\n  TIT: 600\n")
    assert cli.run(["analyze", "--config", config, "--output", str(tmp_path / "out")]) == cli.EXIT_INFEASIBLE


class TestAnalyze:
    def test_take_off_report(self, tmp_path):
        assert cli.run(["analyze", "--output", str(tmp_path)]) == cli.EXIT_OK
        report = json.loads((tmp_path / "analyze.json").read_text())
        assert report["performance"]["thrust"] == pytest.approx(318.29, rel=2e-3)
        assert report["fuel"] == "JP10"
        stations = pd.read_csv(tmp_path / "stations.csv")
        assert len(stations) == len(StationId)
        assert (tmp_path / "exergy.csv").exists()

    def test_changes_against_reference(self, tmp_path):
        args = ["analyze", "--condition", "on_design", "--delta-T", "-20", "--format", "csv", "--output", str(tmp_path)]
        assert cli.run(args) == cli.EXIT_OK
        assert (tmp_path / "analyze.csv").exists()
        assert not (tmp_path / "analyze.json").exists()


class TestSweep:
    def test_default_grid_is_reproducible(self, tmp_path):
        first, second = tmp_path / "a", tmp_path / "b"
        assert cli.run(["sweep", "--format", "csv", "--output", str(first)]) == cli.EXIT_OK
        assert cli.run(["sweep", "--format", "csv", "--output", str(second)]) == cli.EXIT_OK
        table = pd.read_csv(first / "sweep.csv")
        assert len(table) == 21
        assert set(table["fuel"]) == {"JP10", "natural_gas", "hydrogen"}
        assert (first / "sweep.csv").read_bytes() == (second / "sweep.csv").read_bytes()

    def test_json_rows(self, tmp_path):
        assert cli.run(["sweep", "--output", str(tmp_path)]) == cli.EXIT_OK
        rows = json.loads((tmp_path / "sweep.json").read_text())["rows"]
        assert len(rows) == 21


class TestRank:
    def test_published_matrix(self, tmp_path):
        assert cli.run(["rank", "--output", str(tmp_path)]) == cli.EXIT_OK
        report = json.loads((tmp_path / "rank.json").read_text())
        assert report["results"]["economic"]["ranking"] == ["case1", "case2", "case3"]
        assert report["results"]["exero_environmental"]["ranking"][0] == "case3"

    def test_missing_results_file_exits_2(self, tmp_path):
        config = _write(tmp_path / "rank.yaml", f"rank:\n  results: ['{tmp_path / 'absent.json'}']\n")
        assert cli.run(["rank", "--config", config, "--output", str(tmp_path / "out")]) == cli.EXIT_CONFIG


def test_validate_passes(tmp_path):
    assert cli.run(["validate", "--output", str(tmp_path)]) == cli.EXIT_OK
    report = json.loads((tmp_path / "validate.json").read_text())
    assert report["passed"] is True
    assert any(check["status"] == "INFO" for check in report["checks"])
    names = [check["check"] for check in report["checks"]]
    assert not any("GA" in name for name in names)
    info = {check["check"] for check in report["checks"] if check["status"] == "INFO"}
    assert "on-design thrust (kN)" in info


def test_validate_with_optimization_adds_checks(tmp_path):
    args = ["validate", "--with-optimization", "--generations", "3", "--population", "10",
            "--oracle-points", "2", "--output", str(tmp_path)]
    assert cli.run(args) in (cli.EXIT_OK, cli.EXIT_VALIDATION)
    checks = {c["check"]: c for c in json.loads((tmp_path / "validate.json").read_text())["checks"]}
    oracle = [name for name in checks if name.endswith("GA reaches the grid oracle")]
    assert len(oracle) == 3
    assert checks["GA seed 42 reproduces the run"]["status"] == "PASS"
    for name in ("thrust case: thrust at least 1.10 x baseline",
                 "thermal case: thermal efficiency not below baseline",
                 "propulsive case: propulsive efficiency at least baseline + 0.08"):
        assert checks[name]["status"] in ("PASS", "FAIL")


class TestOptimize:
    SMALL = ["--generations", "3", "--population", "10", "--oracle-points", "2"]

    def test_unconstrained_run_then_rank(self, tmp_path):
        config = _write(tmp_path / "free.yaml", "optimize:\n  constraints: none\n")
        out = tmp_path / "opt"
        args = ["optimize", "--config", config, "--case", "all", "--format", "csv", "--output", str(out)] + self.SMALL
        assert cli.run(args) == cli.EXIT_OK
        report = json.loads((out / "optimize.json").read_text())
        assert len(report["outcomes"]) == 3
        history = pd.read_csv(out / "optimize_history.csv")
        assert len(history) == 9

        rank_config = _write(tmp_path / "rank.yaml", f"rank:\n  results: ['{out / 'optimize.json'}']\n")
        assert cli.run(["rank", "--config", rank_config, "--output", str(tmp_path / "ranked")]) == cli.EXIT_OK
        ranked = json.loads((tmp_path / "ranked" / "rank.json").read_text())
        assert sorted(ranked["matrix"]["alternatives"]) == ["case1", "case2", "case3"]

    def test_published_bands_leave_no_feasible_design(self, tmp_path):
        args = ["optimize", "--case", "1", "--output", str(tmp_path), "--generations", "2",
                "--population", "10", "--oracle-points", "0"]
        assert cli.run(args) == cli.EXIT_NO_FEASIBLE_DESIGN
        report = json.loads((tmp_path / "optimize.json").read_text())
        assert report["outcomes"][0]["ga"]["feasible"] is False
