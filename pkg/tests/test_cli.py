import json
import subprocess
import sys

import pytest

from loopkt.cli import main
from loopkt.verify import run_verify


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_reduce(capsys):
    code, out, _ = run(capsys, "reduce", "L1*L1", "--ring", "kg", "--n", "2")
    assert code == 0
    assert out.strip() == "v*L1 - 1"


def test_reduce_json_symmetric(capsys):
    code, out, _ = run(capsys, "reduce", "s1*s1", "--ring", "kg", "--n", "2", "--json")
    payload = json.loads(out)
    assert code == 0 and payload["symmetric"]
    assert payload["s_basis"] == ["-2", "v", "2"]


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "reduce", "b*L1", "--ring", "kg")
    assert code == 2
    assert "not a coefficient" in err


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as info:
        main(["verify", "--rmax", "0"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["nonsense"])
    assert info.value.code == 2


def test_istar_and_kernel(capsys):
    code, out, _ = run(capsys, "istar", "--r", "1", "--ring", "kg", "--json")
    assert code == 0 and json.loads(out)["matrix"] == [["1", "v", "1"]]
    code, out, _ = run(capsys, "kernel", "--r", "1", "--ring", "hg")
    assert code == 0 and out.splitlines() == ["K1 = s1", "K2 = -t*s0 - s2"]


def test_istar_of_element(capsys):
    code, out, _ = run(capsys, "istar", "L1*L2", "--ring", "kt", "--n", "2")
    assert code == 0 and out.strip() == "1"


def test_chern(capsys):
    code, out, _ = run(capsys, "chern", "b", "--ring", "kt", "--n", "0", "--degree", "2")
    assert code == 0 and out.strip() == "(1 + bb + 1/2*bb^2 + O(bb^3))"
    code, _, _ = run(capsys, "chern", "L1", "--ring", "hg")
    assert code == 2


def test_gamma(capsys):
    code, out, _ = run(capsys, "gamma", "--k", "4")
    assert code == 0 and len(out.splitlines()) == 5


def test_limit(capsys):
    code, out, _ = run(capsys, "limit", "s2 + v*s1", "--rmax", "2", "--json")
    payload = json.loads(out)
    assert code == 0 and payload["compatible"]
    assert len(payload["tower"]) == 3


def test_verify_small_json(capsys):
    code, out, _ = run(capsys, "verify", "--rmax", "1", "--degree", "4", "--json", "--seed", "7")
    report = json.loads(out)
    assert code == 0
    assert set(report) == {"version", "params", "suite", "pass"}
    assert report["pass"] and report["params"] == {"rmax": 1, "degree": 4, "seed": 7}
    assert len(report["suite"]) >= 60
    for rec in report["suite"]:
        assert set(rec) == {"check", "params", "status", "detail"}
        assert rec["status"] == "pass"


def test_verify_exit_code_on_failure(capsys, monkeypatch):
    import loopkt.verify as verify

    real_plan = verify.plan

    def broken_plan(rmax, D):
        return real_plan(rmax, D) + [("forced.failure", {}, lambda rng: (False, "lhs = 1; rhs = 2"))]

    monkeypatch.setattr(verify, "plan", broken_plan)
    code, out, _ = run(capsys, "verify", "--rmax", "1", "--degree", "4")
    assert code == 1
    assert "FAIL  forced.failure" in out


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv("LOOPKT_SEED", "42")
    assert run_verify(1, 4).params["seed"] == 42


def test_report_bytes_deterministic():
    a = run_verify(1, 4, seed=3).to_json()
    b = run_verify(1, 4, seed=3).to_json()
    assert a == b


def test_run_verify_validation():
    with pytest.raises(ValueError):
        run_verify(0, 12)
    with pytest.raises(ValueError):
        run_verify(1, 3)


def test_full_suite_passes():
    report = run_verify(4, 12, seed=0)
    failed = [r.as_dict() for r in report.suite if r.status != "pass"]
    assert report.passed, failed


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "loopkt", "reduce", "s1", "--ring", "kg", "--n", "2"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip().splitlines()[0] == "L1 + L2"
