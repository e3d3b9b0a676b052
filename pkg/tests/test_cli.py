import csv
import io
import json
import subprocess
import sys

import pytest

from antinorm.checks import REGISTRY, register
from antinorm.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_list(capsys):
    code, out, _ = run(capsys, "list")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 31
    assert lines[0].startswith("rotfeld_trace") and "search" in lines[-1]


def test_run_minkowski_example(capsys):
    code, out, _ = run(capsys, "run", "minkowski", "--n", "4", "--trials", "1000", "--seed", "7")
    row = next(csv.DictReader(io.StringIO(out)))
    assert code == 0 and row["pass"] == "pass" and float(row["worst_margin"]) >= 0


def test_run_json_and_out(capsys, tmp_path):
    code, out, _ = run(capsys, "run", "fisher", "cor45", "--n", "2", "3", "--trials", "10", "--format", "json")
    docs = json.loads(out)
    assert code == 0 and [d["check_id"] for d in docs] == ["fisher", "cor45"]
    assert docs[0]["dims"] == [2, 3] and docs[0]["trials"] == 20
    target = tmp_path / "reports"
    code, _, _ = run(capsys, "run", "fisher", "--n", "2", "--trials", "5", "--format", "json", "--out", f"{target}/")
    assert code == 0 and (target / "fisher.json").exists() and (target / "summary.csv").exists()
    code, out, _ = run(capsys, "report", str(target / "fisher.json"))
    assert code == 0 and "reproduced" in out


def test_run_with_bindings_and_specs(capsys):
    code, out, _ = run(capsys, "run", "thm41_norm", "--n", "3", "--trials", "10", "--fn", "g=poly(0,1,0,1)",
                       "--fn", "q=1/3", "--spec", "kyfan(k=1)", "--spec", "schatten(p=2)", "--spectrum", "exp")
    assert code == 0 and ",pass," in out


def test_unmet_hypotheses_exit_zero(capsys):
    # t^2 with q = 1 is convex but (t^2)^1 is not subadditive: hypotheses unmet, not a failure
    code, out, _ = run(capsys, "run", "thm41_norm", "--n", "2", "--trials", "5", "--fn", "q=1")
    assert code == 0 and "hypotheses-not-met" in out


def test_failing_check_exit_1(capsys):
    from antinorm.report import le

    @register("always_false", "0 <= -1")
    def _false(ctx, n, rng):
        return [le("false", 0.0, -1.0)], None

    try:
        code, out, _ = run(capsys, "run", "always_false", "--n", "2", "--trials", "3")
    finally:
        del REGISTRY["always_false"]
    assert code == 1 and ",fail," in out


@pytest.mark.parametrize("argv", [
    ["run", "nope"], ["run", "fisher", "--fn", "f=sqrt"], ["run", "fisher", "--fn", "junk"],
    ["run", "fisher", "--trials", "0"], ["run", "fisher", "--spectrum", "weird"], ["run", "--bogus"],
    ["search", "nope"], ["report", "/nonexistent.json"], [],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.strip()


def test_search_writes_and_report_reverifies(capsys, tmp_path):
    code, out, _ = run(capsys, "search", "cex_nonconvex_g", "--budget", "10000", "--out", str(tmp_path))
    path = tmp_path / "cex_nonconvex_g.json"
    assert code == 0 and "found" in out and path.exists()
    code, out, _ = run(capsys, "report", str(path))
    assert code == 0 and "reproduced" in out
    doc = json.loads(path.read_text())
    doc["violation"] += 1.0
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "report", str(path))
    assert code == 1 and "MISMATCH" in out


def test_output_is_deterministic(capsys):
    argv = ["run", "rotfeld_norm", "cor410", "--n", "2", "4", "--trials", "20", "--format", "json"]
    first = json.loads(run(capsys, *argv)[1])
    second = json.loads(run(capsys, *argv)[1])
    for d in first + second:
        d.pop("wall_time")
    assert first == second


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("ANTINORM_SEED", "0x2a")
    _, out, _ = run(capsys, "run", "minkowski", "--n", "2", "--trials", "3", "--format", "json")
    assert json.loads(out)[0]["seed"] == 42


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "antinorm.cli", "list"], capture_output=True, text=True)
    assert proc.returncode == 0 and len(proc.stdout.splitlines()) == 31
