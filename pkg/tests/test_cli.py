import json
import subprocess
import sys

import pytest

from cgkit import __version__
from cgkit.cli import main, run
from cgkit.report import Report

PRIME = str(2 ** 61 - 1)


def report_of(capsys, argv):
    code, rep = run(argv)
    out = capsys.readouterr().out
    return code, rep, out


def names(doc):
    return [c["name"] for c in doc["checks"]]


def test_r_check_example(capsys):
    code, rep, out = report_of(capsys, ["r", "check", "--n", "3", "--checks",
                                        "ybe,hecke,structure,twist"])
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == 1 and doc["tool_version"] == __version__
    assert doc["command"] == "r check"
    assert names(doc) == sorted(names(doc))
    assert {"ybe", "hecke", "homogeneity", "twist_identity"} <= set(names(doc))
    assert all(c["timing_ms"] is None for c in doc["checks"])


def test_timing_flag(capsys):
    code, _, out = report_of(capsys, ["r", "check", "--n", "2", "--timing"])
    assert code == 0
    assert all(isinstance(c["timing_ms"], float) for c in json.loads(out)["checks"])


def test_poincare_example(capsys):
    code, _, out = report_of(capsys, ["qa", "poincare", "--algebra", "lambda", "--n", "3",
                                      "--max-deg", "3", "--modulus", PRIME, "--seed", "7",
                                      "--trials", "3"])
    assert code == 0
    doc = json.loads(out)
    assert doc["params"]["dimensions"][1:] == [3, 3, 1]
    assert all(len(c["details"]["per_trial"]) == 3 for c in doc["checks"])


def test_bd_run_example(capsys):
    code, rep, out = report_of(capsys, ["bd", "run", "--algebra", "sl", "--rank", "3",
                                        "--triple", "cg"])
    assert code == 0
    assert json.loads(out)["params"]["quotient_dim"] == 4
    assert rep.passed


def test_output_is_deterministic(capsys, tmp_path):
    argv = ["qa", "poincare", "--algebra", "sym", "--n", "2", "--seed", "3"]
    _, _, a = report_of(capsys, argv)
    _, _, b = report_of(capsys, argv)
    assert a == b
    run(argv + ["--out", str(tmp_path / "r.json")])
    assert (tmp_path / "r.json").read_text() == a


def test_report_round_trip(capsys):
    _, rep, out = report_of(capsys, ["qa", "dual", "--n", "2"])
    back = Report.from_json(out)
    assert back.to_json() == out
    with pytest.raises(ValueError):
        Report.from_json(json.dumps({"schema": 99}))


def test_r_file_round_trip(tmp_path, capsys):
    f1, f2 = tmp_path / "r3.json", tmp_path / "r3b.json"
    assert run(["r", "build", "--n", "3", "--out", str(f1)])[0] == 0
    assert run(["r", "build", "--from", str(f1), "--out", str(f2)])[0] == 0
    assert f1.read_bytes() == f2.read_bytes()
    code, rep, _ = report_of(capsys, ["r", "check", "--file", str(f1), "--checks", "ybe,hecke"])
    assert code == 0 and rep.params["n"] == 3


def test_corrupted_r_file_exits_one(tmp_path, capsys):
    f = tmp_path / "r2.json"
    run(["r", "build", "--n", "2", "--out", str(f)])
    doc = json.loads(f.read_text())
    for e in doc["entries"]:
        if e["in"] == [2, 1] and e["out"] == [1, 2]:
            e["coeff"] = [[row[0], row[1], 2 * row[2], row[3]] for row in e["coeff"]]
    f.write_text(json.dumps(doc))
    code, rep, out = report_of(capsys, ["r", "check", "--file", str(f)])
    assert code == 1
    ybe = next(c for c in json.loads(out)["checks"] if c["name"] == "ybe")
    assert ybe["status"] == "fail" and ybe["witness"]["row"] == [1, 1, 2]


def test_bd_emit_validate_round_trip(tmp_path, capsys):
    f = tmp_path / "bd.json"
    code, _, _ = report_of(capsys, ["bd", "run", "--rank", "4", "--emit", str(f), "--no-compare"])
    assert code == 0
    code, rep, _ = report_of(capsys, ["bd", "validate", "--file", str(f)])
    assert code == 0
    assert {c.name for c in rep.checks} == {"triple_isometry", "triple_orbit_escape", "quadruple_skew",
                                            "quadruple_compatibility"}
    code, rep, _ = report_of(capsys, ["bd", "run", "--file", str(f)])
    assert code == 0 and rep.params["quotient_dim"] == 9
    g = tmp_path / "bd2.json"
    run(["bd", "run", "--file", str(f), "--emit", str(g)])
    capsys.readouterr()
    assert f.read_bytes() == g.read_bytes()


def test_bd_validate_tau_identity_exits_one(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text(json.dumps({"type": "sl", "rank": 3, "B1": [1], "B2": [1], "tau": {"1": 1}}))
    code, rep, _ = report_of(capsys, ["bd", "validate", "--file", str(f)])
    assert code == 1
    fail = [c for c in rep.checks if c.status == "fail"]
    assert [c.name for c in fail] == ["triple_orbit_escape"] and fail[0].witness


def test_bd_empty_triple_gl(capsys):
    code, rep, _ = report_of(capsys, ["bd", "run", "--algebra", "gl", "--rank", "2",
                                      "--triple", "empty"])
    assert code == 0 and rep.params["quotient_dim"] is not None


def test_limit(capsys):
    code, rep, _ = report_of(capsys, ["limit", "--n", "3", "--compare"])
    assert code == 0
    stat = {c.name: c.status for c in rep.checks}
    assert stat == {"cybe": "pass", "semiclassical_comparison": "info"}
    code, rep, _ = report_of(capsys, ["limit", "--n", "2", "--direction", "2,1"])
    assert code == 0 and rep.params["direction"] == [2, 1]


def test_qa_det_and_normality(capsys):
    code, rep, _ = report_of(capsys, ["qa", "det", "--n", "2"])
    assert code == 0 and "det_normality" in {c.name for c in rep.checks}
    code, rep, _ = report_of(capsys, ["qa", "det", "--n", "3", "--skip-normality"])
    assert code == 0 and "det_normality" not in {c.name for c in rep.checks}
    code, rep, _ = report_of(capsys, ["qa", "normality", "--n", "2", "--mode", "specialized"])
    assert code == 0 and rep.checks[0].details["mode"] == "specialized"


@pytest.mark.parametrize("argv", [
    ["r", "check", "--bogus"],
    ["r", "check"],
    ["r", "check", "--n", "2", "--checks", "nope"],
    ["r", "check", "--n", "0"],
    ["r", "build"],
    ["r", "check", "--file", "/nonexistent/file.json"],
    ["qa", "poincare", "--algebra", "lambda", "--n", "2", "--modulus", "101"],
    ["qa", "poincare", "--algebra", "lambda", "--n", "2", "--trials", "0"],
    ["qa", "det", "--n", "6"],
    ["bd", "run", "--rank", "1"],
    ["bd", "run", "--rank", "2"],
    ["bd", "run"],
    ["limit", "--n", "2", "--direction", "1,2,3"],
    ["limit", "--n", "2", "--direction", "x"],
    [],
])
def test_usage_errors_exit_two(argv, capsys):
    assert main(argv) == 2


@pytest.mark.parametrize("content", ["{not json", '{"n": 2}', '{"type": "sl"}'])
def test_malformed_files_exit_two(tmp_path, content):
    f = tmp_path / "x.json"
    f.write_text(content)
    assert main(["r", "check", "--file", str(f)]) == 2
    assert main(["bd", "validate", "--file", str(f)]) == 2


def test_bd_non_bijection_file_exits_two(tmp_path):
    f = tmp_path / "nb.json"
    f.write_text(json.dumps({"type": "sl", "rank": 4, "B1": [1, 2], "B2": [3], "tau": {"1": 3, "2": 3}}))
    assert main(["bd", "run", "--file", str(f)]) == 2
    assert main(["bd", "validate", "--file", str(f)]) == 2


def test_console_script_entry():
    out = subprocess.run([sys.executable, "-m", "cgkit.cli", "r", "check", "--n", "2"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert json.loads(out.stdout)["command"] == "r check"
