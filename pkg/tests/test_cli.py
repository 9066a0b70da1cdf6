"""
Tests for the hsl-verify command line: exit codes, artifacts and config precedence.
"""

import csv
import json
import math

import pytest

from infrastructure.config.settings import reset_settings
from presentation.cli.commands import FIELD_COLUMNS
from presentation.cli.main import main
from presentation.schemas.report_schemas import CheckSchema, SweepRecordSchema


def read_json(path):
    return json.loads(path.read_text(encoding="utf-8"))


class TestList:
    def test_lists_families_and_constraints(self, capsys):
        assert main(["list"]) == 0
        out = capsys.readouterr().out
        assert "ch2-family1: a≠0, a²+b²<1" in out
        assert "cp2-flat: a≠0" in out
        assert "controls:" in out and "control-graph" in out


class TestVerify:
    def test_passing_entry(self, output_dir, capsys):
        code = main(["verify", "--entry", "cp2-flat", "--param", "a=1", "--param", "b=0.5", "--grid", "21x21"])
        assert code == 0
        report = read_json(output_dir / "verify-cp2-flat.json")
        assert report["overall_pass"] is True
        assert report["params"] == {"a": 1.0, "b": 0.5}
        assert report["grid"] == [21, 21]
        assert report["wall_ms"] is None
        assert all(check["pass"] for check in report["checks"])
        assert "✅" in capsys.readouterr().out

    def test_control_fails_with_exit_one(self, output_dir):
        assert main(["verify", "--entry", "control-graph", "--grid", "21x21"]) == 1
        report = read_json(output_dir / "verify-control-graph.json")
        failed = {check["name"] for check in report["checks"] if not check["pass"]}
        assert "hamiltonian_stationary" in failed

    def test_violated_constraint_names_the_clause(self, output_dir, capsys):
        assert main(["verify", "--entry", "ch2-family1", "--param", "a=0", "--param", "b=0.5"]) == 2
        err = capsys.readouterr().err
        assert "a≠0" in err and "a ≠ 0" in err
        assert not output_dir.exists()

    @pytest.mark.parametrize(
        "argv",
        [
            ["verify", "--entry", "no-such-entry"],
            ["verify", "--entry", "c2-plane", "--param", "r=1"],
            ["verify", "--entry", "c2-plane", "--profile", "loose"],
            ["verify", "--entry", "c2-plane", "--grid", "big"],
            ["verify"],
            ["verify", "--entry", "c2-plane", "--log-level", "chatty"],
        ],
    )
    def test_bad_parameters_exit_two(self, output_dir, argv):
        assert main(argv) == 2

    def test_coarse_grid_exits_three(self, output_dir, capsys):
        assert main(["verify", "--entry", "c2-plane", "--grid", "3x3"]) == 3
        assert "too coarse" in capsys.readouterr().err

    def test_unwritable_output_exits_four(self, tmp_path):
        blocker = tmp_path / "blocker"
        blocker.write_text("not a directory")
        assert main(["verify", "--entry", "c2-plane", "--grid", "9x9", "--out", str(blocker / "r.json")]) == 4

    def test_reports_are_byte_identical(self, output_dir):
        argv = ["verify", "--entry", "ch2-family3", "--grid", "11x11"]
        assert main(argv + ["--out", "first.json"]) == 0
        assert main(argv + ["--out", "second.json"]) == 0
        assert (output_dir / "first.json").read_bytes() == (output_dir / "second.json").read_bytes()

    def test_timing_records_wall_ms(self, output_dir):
        assert main(["verify", "--entry", "c2-plane", "--grid", "9x9", "--timing"]) == 0
        assert read_json(output_dir / "verify-c2-plane.json")["wall_ms"] >= 0.0

    def test_domain_override(self, output_dir):
        argv = ["verify", "--entry", "c2-cylinder", "--grid", "9x9", "--domain", "-1:1:-2:2"]
        assert main(argv) == 0
        report = read_json(output_dir / "verify-c2-cylinder.json")
        xs = [check["argmax_point"][0] for check in report["checks"]]
        assert all(-1.0 <= x <= 1.0 for x in xs)


class TestConfigFile:
    def test_flags_override_file(self, output_dir, tmp_path):
        config = tmp_path / "run.toml"
        config.write_text(
            'entry = "cp2-flat"\nprofile = "strict"\ngrid = "11x11"\n[params]\na = 2.0\nb = 0.25\n',
            encoding="utf-8",
        )
        assert main(["verify", "--config", str(config), "--param", "a=1"]) == 0
        report = read_json(output_dir / "verify-cp2-flat.json")
        assert report["params"] == {"a": 1.0, "b": 0.25}
        assert report["profile"] == "strict"
        assert report["grid"] == [11, 11]

    def test_environment_supplies_defaults(self, output_dir, monkeypatch):
        monkeypatch.setenv("HSL_PROFILE", "sweep")
        monkeypatch.setenv("HSL_DEFAULT_GRID", "9")
        reset_settings()
        assert main(["verify", "--entry", "c2-plane"]) == 0
        report = read_json(output_dir / "verify-c2-plane.json")
        assert report["profile"] == "sweep"
        assert report["grid"] == [9, 9]

    def test_missing_config_file(self, output_dir, tmp_path):
        assert main(["verify", "--config", str(tmp_path / "absent.toml")]) == 2


class TestSweep:
    def test_cartesian_product(self, output_dir):
        argv = ["sweep", "--entry", "cp2-flat", "--param", "a=0.5:2:0.5", "--param", "b=0:1:0.25", "--grid", "11x11"]
        assert main(argv) == 0
        report = read_json(output_dir / "sweep-cp2-flat.json")
        assert len(report["records"]) == 20
        assert report["ranges"] == {"a": [0.5, 1.0, 1.5, 2.0], "b": [0.0, 0.25, 0.5, 0.75, 1.0]}
        assert report["checked"] == 20 and report["skipped"] == 0
        assert report["records"][0]["params"] == {"a": 0.5, "b": 0.0}
        assert report["records"][1]["params"] == {"a": 0.5, "b": 0.25}

    def test_invalid_tuples_are_skipped(self, output_dir):
        argv = ["sweep", "--entry", "ch2-family1", "--param", "a=0:0.5:0.5", "--param", "b=0.5", "--grid", "11x11"]
        assert main(argv) == 0
        records = read_json(output_dir / "sweep-ch2-family1.json")["records"]
        assert records[0]["status"] == "skipped"
        assert records[0]["violated_clause"] == "a≠0"
        assert records[1]["status"] == "checked" and records[1]["overall_pass"] is True

    def test_no_valid_tuple_exits_two(self, output_dir):
        argv = ["sweep", "--entry", "ch2-family1", "--param", "a=0", "--param", "b=0.5", "--grid", "11x11"]
        assert main(argv) == 2

    def test_zero_step_exits_two(self, output_dir):
        assert main(["sweep", "--entry", "cp2-flat", "--param", "a=0:1:0"]) == 2

    def test_unknown_parameter_exits_two(self, output_dir):
        assert main(["sweep", "--entry", "cp2-flat", "--param", "r=1:2:1"]) == 2

    def test_oversized_range_exits_two(self, output_dir):
        assert main(["sweep", "--entry", "cp2-flat", "--param", "a=1:2:1e-6", "--grid", "11x11"]) == 2

    def test_small_family5_parameters_are_checked(self, output_dir):
        argv = ["sweep", "--entry", "ch2-family5", "--param", "b=0.005:0.015:0.005", "--grid", "9x9"]
        assert main(argv) in (0, 1)
        records = read_json(output_dir / "sweep-ch2-family5.json")["records"]
        assert [record["params"]["b"] for record in records] == [0.005, 0.01, 0.015]
        assert all(record["status"] == "checked" for record in records)
        assert all(record["worst"]["lift_constraint"] < 1e-10 for record in records)

    def test_coarse_grid_exits_three(self, output_dir):
        assert main(["sweep", "--entry", "cp2-flat", "--param", "a=1", "--grid", "5x5"]) == 3


class TestDumpFields:
    def test_rows_and_header(self, output_dir):
        assert main(["dump-fields", "--entry", "cp2-flat", "--grid", "5x5"]) == 0
        raw = (output_dir / "fields-cp2-flat.csv").read_bytes()
        assert raw.count(b"\r\n") == 26
        rows = list(csv.reader(raw.decode("utf-8").splitlines()))
        assert tuple(rows[0]) == FIELD_COLUMNS
        assert len(rows) == 26

    def test_cylinder_mean_curvature(self, output_dir):
        assert main(["dump-fields", "--entry", "c2-cylinder", "--grid", "5x7", "--out", "cyl.csv"]) == 0
        with open(output_dir / "cyl.csv", newline="", encoding="utf-8") as f:
            rows = list(csv.DictReader(f))
        assert len(rows) == 35
        assert all(abs(float(row["absH"]) - 1.0) < 1e-12 for row in rows)
        assert all(abs(float(row["K"])) < 1e-12 for row in rows)
        # x-major order
        assert rows[0]["x"] == rows[6]["x"] != rows[7]["x"]


class TestVariation:
    def test_stationary_plane(self, output_dir):
        assert main(["variation", "--entry", "c2-plane", "--seed", "42", "--bumps", "3"]) == 0
        report = read_json(output_dir / "variation-c2-plane.json")
        assert report["pass"] is True
        assert report["seed"] == 42 and len(report["bumps"]) == 3
        assert report["max_abs"] < 1e-6
        assert all(bump["lagrangian_defect"] < 1e-12 for bump in report["bumps"])

    def test_curved_ambient_is_unsupported(self, output_dir, capsys):
        assert main(["variation", "--entry", "cp2-flat"]) == 2
        assert "C^2" in capsys.readouterr().err

    def test_step_out_of_range(self, output_dir):
        assert main(["variation", "--entry", "c2-plane", "--step", "0.5"]) == 2


class TestReportSerialization:
    def test_non_finite_residuals_are_null(self):
        check = CheckSchema(name="bochner_residual", sup_residual=math.inf, tolerance=1e-5, passed=False)
        record = SweepRecordSchema(params={"b": 0.5}, status="checked", worst={"wintgen": math.nan})
        check_text, record_text = check.to_json(), record.to_json()
        assert "Infinity" not in check_text and "NaN" not in record_text
        assert json.loads(check_text)["sup_residual"] is None
        assert json.loads(check_text)["pass"] is False
        assert json.loads(record_text)["worst"] == {"wintgen": None}
