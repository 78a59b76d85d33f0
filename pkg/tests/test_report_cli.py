import csv
import io
import json

import jsonschema
import pytest
from click.testing import CliRunner

from hodgeres import report as report_mod
from hodgeres.cli import main
from hodgeres.report import RunConfig, build_report, run

from conftest import ROOT

SCHEMA = json.loads((ROOT / "src" / "hodgeres" / "data" / "report.schema.json").read_text())


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, tmp_path, *args):
    return runner.invoke(main, ["check", "--trace-dir", str(tmp_path / "traces"), *args])


def test_single_case_markdown(runner, tmp_path):
    res = invoke(runner, tmp_path, "--case", "PhiB1", "--format", "md")
    assert res.exit_code == 0, res.stderr
    rows = [line for line in res.stdout.splitlines() if line.startswith("| PhiB1")]
    assert len(rows) == 1
    assert "| true | match |" in rows[0]
    assert "1 matched, 0 allowlisted, 0 mismatched of 1 cases" in res.stderr


def test_full_json_report_validates(runner, tmp_path):
    out = tmp_path / "report.json"
    res = invoke(runner, tmp_path, "--all", "--out", str(out))
    assert res.exit_code == 0, res.stderr
    assert res.stdout == ""
    data = json.loads(out.read_text())
    jsonschema.validate(data, SCHEMA)
    s = data["summary"]
    assert (s["matched"], s["allowlisted"], s["mismatched"]) == (12, 5, 0)
    assert s["flags"] == ["type II theorem: S2"]
    assert "flag: type II theorem: S2" in res.stderr
    written = sorted(p.name for p in (tmp_path / "traces").iterdir())
    assert written == sorted(f"{c}.txt" for c in ("PhiB4", "PhiB5_A1", "PhiB5_A2", "PsiB4_B1", "PsiB4_B2"))
    by_id = {c["case_id"]: c for c in data["cases"]}
    assert by_id["PhiB4"]["trace_path"].endswith("PhiB4.txt")
    assert by_id["PhiB4"]["allowlist"]["reason"]
    assert by_id["PhiA"]["trace_path"] is None
    assert data["totals"]["PhiB"]["status"] == "allowlisted"
    assert data["totals"]["PhiB"]["expected_table_consistent"] is True


def test_k_basis(runner, tmp_path):
    res = invoke(runner, tmp_path, "--basis", "K")
    data = json.loads(res.stdout)
    th = {t["name"]: t for t in data["theorems"]}
    assert th["type I theorem"]["expected_table"]["K"]["S4"] == "88/9"
    assert th["type I theorem"]["status"] == "match"
    assert th["type II theorem"]["status"] == "flagged"
    flag = th["type II theorem"]["flags"][0]
    assert (flag["printed_K"], flag["expected_table_K"]) == ("-16/9", "-16/3")
    phib = data["totals"]["PhiB"]["expected"]
    assert phib["S4"] == "88/9"


def test_csv_output(runner, tmp_path):
    res = invoke(runner, tmp_path, "--case", "PsiB2", "--case", "PhiA", "--format", "csv")
    assert res.exit_code == 0
    rows = list(csv.DictReader(io.StringIO(res.stdout)))
    cases = [r["id"] for r in rows if r["kind"] == "case"]
    assert cases == ["PhiA", "PsiB2"]


def test_output_is_deterministic(runner, tmp_path):
    a = invoke(runner, tmp_path, "--all", "--format", "json").stdout
    b = invoke(runner, tmp_path, "--all", "--format", "json").stdout
    assert a == b
    assert a.encode() == run(RunConfig(trace_dir=str(tmp_path / "traces"))).text.encode()


def test_unknown_case_is_engine_error(runner, tmp_path):
    res = invoke(runner, tmp_path, "--case", "PhiB9")
    assert res.exit_code == 1
    assert "unknown case id 'PhiB9'" in res.stderr


def test_unwritable_output_is_engine_error(runner, tmp_path):
    res = invoke(runner, tmp_path, "--case", "PhiA", "--out", str(tmp_path / "missing" / "r.json"))
    assert res.exit_code == 1
    assert "cannot write output" in res.stderr


def test_bad_option_values_are_engine_errors(runner, tmp_path):
    res = invoke(runner, tmp_path, "--case", "PhiA", "--numeric-check", "--tol", "0")
    assert res.exit_code == 1
    res = invoke(runner, tmp_path, "--basis", "Q")
    assert res.exit_code == 1
    assert runner.invoke(main, ["frobnicate"]).exit_code == 1


def test_unexplained_mismatch_exits_2(runner, tmp_path, monkeypatch):
    monkeypatch.setattr(report_mod, "load_allowlist", lambda: {})
    res = invoke(runner, tmp_path, "--all")
    assert res.exit_code == 2
    data = json.loads(res.stdout)
    assert data["summary"]["mismatched"] == 5
    assert "PhiB" in data["summary"]["failing"]


def test_stale_allowlist_entry_is_a_mismatch(monkeypatch, tmp_path):
    real = report_mod.load_allowlist()
    entry = real["PhiB4"]
    stale = dict(real, PhiB4=type(entry)(entry.case_id, entry.expected, entry.expected, entry.trace_file, entry.reason))
    monkeypatch.setattr(report_mod, "load_allowlist", lambda: stale)
    report, _ = build_report(RunConfig(cases=("PhiB4",), trace_dir=str(tmp_path)))
    case = report["cases"][0]
    assert case["status"] == "mismatch"
    assert "stale" in case["notes"][0]
    assert report_mod.exit_code(report) == 2


def test_numeric_check_in_report(runner, tmp_path):
    res = invoke(runner, tmp_path, "--case", "PhiA", "--case", "PhiB1", "--numeric-check", "--samples", "5", "--seed", "3")
    assert res.exit_code == 0, res.stderr
    data = json.loads(res.stdout)
    jsonschema.validate(data, SCHEMA)
    checks = {c["case_id"]: c["numeric_check"] for c in data["cases"]}
    assert checks["PhiA"]["passed"] and not checks["PhiA"]["trivial"]
    assert checks["PhiB1"]["trivial"]


def test_table_command(runner):
    res = runner.invoke(main, ["table", "--basis", "K"])
    assert res.exit_code == 0
    data = json.loads(res.stdout)
    assert len(data["cases"]) == 17
    totals = {t["case_id"]: t["coeffs"] for t in data["totals"]}
    assert totals["PhiB"]["S4"] == "88/9"


def test_trace_command(runner, tmp_path):
    out = tmp_path / "PhiA.txt"
    res = runner.invoke(main, ["trace", "PhiA", "--out", str(out)])
    assert res.exit_code == 0
    text = out.read_text()
    assert "pi/8" in text
    assert "anchor:" in text

    out = tmp_path / "C2.txt"
    runner.invoke(main, ["trace", "PsiB5_C2", "--out", str(out)])
    assert "trace" in out.read_text().lower()

    out = tmp_path / "A2.txt"
    runner.invoke(main, ["trace", "PhiB5_A2", "--out", str(out)])
    assert "tr[c(w) A(v) c(dx_n)]" in out.read_text()

    res = runner.invoke(main, ["trace", "Nope", "--out", str(tmp_path / "x.txt")])
    assert res.exit_code == 1
