import csv
import io
import json
import subprocess
import sys

import pytest

from kunion.cli import EXIT_FAIL, EXIT_PASS, EXIT_USAGE, RunConfig, main, parse_config


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def json_lines(text):
    return [json.loads(line) for line in text.splitlines()]


def test_bound_json_stream(capsys):
    code, out, _ = run(capsys, "bound", "--k", "3", "--eps", "0", "--family-size", "1024",
                       "--format", "json", "--no-timestamp")
    assert code == EXIT_PASS
    header, result, summary = json_lines(out)
    assert header["type"] == "RunHeader" and header["config"]["command"] == "bound"
    assert "timestamp" not in header and "elapsed_seconds" not in summary
    assert result["delta"] == "0.0" and result["guaranteed_fraction"].startswith("0.3176721")
    assert summary == {"exit_code": 0, "schema_version": "1.0", "status": "pass", "type": "RunSummary"}


def test_json_is_deterministic_without_timestamp(capsys):
    argv = ("verify-m", "--k", "2", "--samples", "2000", "--seed", "5", "--format", "json", "--no-timestamp")
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    assert first == second


def test_timestamp_present_by_default(capsys):
    _, out, _ = run(capsys, "bound", "--k", "4", "--eps", "0.01", "--format", "json")
    lines = json_lines(out)
    assert "timestamp" in lines[0] and "elapsed_seconds" in lines[-1]


def test_table_csv_and_failing_cell(capsys):
    code, out, _ = run(capsys, "table", "--kmax", "8", "--prec", "1e-6", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [int(r["k"]) for r in rows] == list(range(2, 9))
    assert rows[0]["phi"] == "0.618034" and rows[6]["alpha"] == "0.232055"
    assert code == EXIT_FAIL  # one printed cell of the reference table is off by 1.5e-4


def test_table_text_k_ranges(capsys):
    code, out, _ = run(capsys, "table", "--k", "2-3,16", "--prec", "1e-5")
    assert code == EXIT_PASS
    assert "0.61803" in out and "16" in out


def test_precision_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("KUNION_PREC", "1e-20")
    assert parse_config(["table", "--k", "2"]).precision == "1e-20"
    assert parse_config(["table", "--k", "2", "--prec", "1e-3"]).precision == "1e-3"


def test_output_file(capsys, tmp_path):
    target = tmp_path / "out.json"
    code, out, _ = run(capsys, "poly", "--k", "2", "--format", "json", "--no-timestamp", "-o", str(target))
    assert code == EXIT_PASS and out == ""
    poly = json_lines(target.read_text())[1]
    assert poly["name"] == "p_2" and poly["degree"] == 3


def test_roots_and_discriminants(capsys):
    code, out, _ = run(capsys, "roots", "--k", "2-4")
    assert code == EXIT_PASS and out.count("[PASS]") == 3
    code, out, _ = run(capsys, "discriminants", "--k", "4")
    assert code == EXIT_PASS


def test_derivative_structure_command(capsys):
    code, out, _ = run(capsys, "verify-appendix", "--format", "csv")
    assert code == EXIT_PASS
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows and all(r["holds"] == "true" for r in rows)


def test_verify_fk(capsys):
    code, out, _ = run(capsys, "verify-fk", "--k", "3", "--grid", "5000")
    assert code == EXIT_PASS and "[PASS]" in out


def test_verify_constants_reports_failures(capsys):
    code, out, _ = run(capsys, "verify-constants", "--kmax", "50", "--format", "json", "--no-timestamp")
    assert code == EXIT_FAIL
    ids = {d.get("claim_id"): d["status"] for d in json_lines(out) if "claim_id" in d}
    assert ids["lemma-4.3"] == "pass" and ids["table-1"] == "fail"


def test_entropy_command_small(capsys):
    code, _, _ = run(capsys, "verify-entropy-lemma", "--n", "2", "--k", "2", "--trials", "50")
    assert code == EXIT_PASS


def test_simulate_small_family(capsys):
    code, out, _ = run(capsys, "simulate", "--n", "12", "--k", "2", "--trials", "2000",
                       "--format", "json", "--no-timestamp")
    sims = [d for d in json_lines(out) if d["type"] == "SimReport"]
    assert sims and sims[0]["spec"]["degenerate"] is True
    assert code in (EXIT_PASS, EXIT_FAIL)


@pytest.mark.parametrize("argv", [
    ["table", "--bogus"],
    ["nonsense"],
    ["roots", "--k", "9"],
    ["bound", "--k", "1", "--eps", "0.1"],
    ["bound", "--k", "3", "--eps", "0.7"],
    ["table", "--k", "2", "--prec", "tiny"],
    ["verify-constants", "--kmax", "2"],
    ["verify-entropy-lemma", "--n", "9"],
    ["simulate", "--k", "3", "--format", "yaml"],
])
def test_usage_errors_exit_3(capsys, argv):
    assert main(argv) == EXIT_USAGE


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0


def test_config_dataclass_defaults():
    cfg = parse_config(["bound", "--k", "3"])
    assert isinstance(cfg, RunConfig) and cfg.k == [3] and cfg.format == "text"


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "kunion", "bound", "--k", "2", "--eps", "0.001",
                          "--family-size", "4096", "--format", "json", "--no-timestamp"],
                         capture_output=True, text=True, timeout=120)
    assert res.returncode == 0
    assert json.loads(res.stdout.splitlines()[1])["base_name"] == "psi_k"
