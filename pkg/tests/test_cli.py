import io
import json
import subprocess
import sys

import jsonschema
import pytest

from bdodometer.cli import run
from bdodometer.verify import REPORT_SCHEMA


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_digits():
    code, out, _ = call("digits", "--schedule", "2,3,2", "--n", "11", "--k", "3")
    assert code == 0 and out.strip() == "1,2,1"
    code, out, _ = call("digits", "--schedule", "2,3,2", "--n", "11", "--k", "3", "--json")
    assert json.loads(out)["digits"] == [1, 2, 1]


def test_digits_range_error():
    code, _, err = call("digits", "--schedule", "2,3", "--n", "6", "--k", "2")
    assert code == 1 and "outside" in err


def test_orbit_wrap():
    code, out, _ = call("orbit", "--schedule", "2,3", "--start", "max", "--steps", "1")
    assert code == 0
    assert out.splitlines() == ["|M", "|Z"]


def test_orbit_partial_domain_error():
    code, out, err = call("orbit", "--schedule", "2,3", "--start", "max", "--steps", "1", "--partial")
    assert code == 1 and "domain error" in err


def test_orbit_start_forms():
    code, out, _ = call("orbit", "--schedule", "2,3", "--start", "nat:4", "--steps", "2")
    assert out.split() == ["4", "5", "6"]
    code, out, _ = call("orbit", "--schedule", "2,3", "--start", "1,2|Z", "--steps", "1", "--json")
    assert json.loads(out)["points"] == ["1,2|Z", "0,0,1|Z"]


@pytest.mark.parametrize("argv", [
    ["digits", "--n", "1", "--k", "1"],
    ["digits", "--schedule", "2,1", "--n", "1", "--k", "1"],
    ["nonsense", "--schedule", "2"],
    [],
])
def test_usage_errors(argv, capsys):
    code, _, _ = call(*argv)
    assert code == 2


def test_visits_and_measure():
    code, out, _ = call("visits", "--schedule", "2,3", "--start", "zeros", "--steps", "12", "--k", "2", "--json")
    assert code == 0
    assert set(json.loads(out)["visits"].values()) == {2}
    code, out, _ = call("measure", "--schedule", "2,3", "--k", "2", "--steps", "13", "--json")
    doc = json.loads(out)
    assert all(r["measure"] == "1/6" and r["within_bound"] for r in doc["cylinders"])
    code, out, _ = call("measure", "--schedule", "2,3", "--k", "1", "--steps", "5")
    assert code == 0 and "1/2" in out


def test_neighborhood():
    code, out, _ = call("neighborhood", "--schedule", "2,3", "--start", "1,2|Z", "--k", "2",
                        "--n", "5", "--json")
    doc = json.loads(out)
    assert doc["member"] is True
    assert doc["naturals"] == [5, 11, 17, 23]
    code, out, _ = call("neighborhood", "--schedule", "2,3", "--start", "nat:3", "--k", "1")
    assert code == 1


def test_converge():
    code, out, _ = call("converge", "--schedule", "2,3,2", "--start", "max", "--k", "4")
    assert code == 0 and out.strip() == "true"
    code, out, _ = call("converge", "--schedule", "2,3,2", "--start", "zeros", "--k", "2", "--seq", "0,0,0")
    assert out.strip() == "false"


def test_verify_json_schema():
    code, out, _ = call("verify", "--schedule", "2,3,2", "--dim", "16", "--trials", "20", "--json")
    report = json.loads(out)
    jsonschema.validate(report, REPORT_SCHEMA)
    assert code == 0 and report["pass"]
    assert report["schedule"] == "2,3,2"


def test_verify_deterministic_and_consistent():
    argv = ["verify", "--schedule", "2,3*", "--dim", "12", "--trials", "10", "--k", "2"]
    a = call(*argv, "--json")[1]
    b = call(*argv, "--json")[1]
    assert a == b
    human = call(*argv)[1]
    report = json.loads(a)
    for c in report["checks"]:
        line = next(l for l in human.splitlines() if f" {c['name']} " in l + " ")
        assert line.startswith("PASS" if c["pass"] else "FAIL")


def test_verify_fails_with_impossible_eps():
    code, out, _ = call("verify", "--schedule", "2,3", "--dim", "12", "--trials", "5", "--eps", "0",
                        "--k", "1", "--json")
    report = json.loads(out)
    assert code == (0 if report["pass"] else 1)


def test_verify_dump():
    code, out, _ = call("verify", "--schedule", "2", "--dim", "3", "--trials", "2", "--k", "1", "--dump")
    assert "S =" in out and "0 0 0\n1 0 0\n0 1 0" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "bdodometer", "digits", "--schedule", "2,3", "--n", "5",
                           "--k", "2"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "1,2"
