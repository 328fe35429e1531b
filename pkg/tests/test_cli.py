import json
import subprocess
import sys

import numpy as np
import pytest

from petzrenyi.cli import fmt15, main
from petzrenyi.linalg import matrix_to_json


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("argv,expected", [
    (["--alpha", "0.5", "--x", "0.6"], "0.446287102628420"),
    (["--alpha", "2", "--x", "0"], "0"),
    (["--alpha", "0.5", "--inverse", "0.6931471805599453"], "0.707106781186548"),
    (["--alpha", "0.5", "--inverse", "0.693147180559945"], "0.707106781186547"),
    (["--alpha", "2", "--x", "0.7615941559557649"], "1.87554767409476"),
    (["--alpha", "1", "--f", "1.5231883119115297"], "0.724061660966311"),
    (["--alpha", "0.3", "--pinsker", "0.5"], "0.150000000000000"),
])
def test_bound(capsys, argv, expected):
    code, out, _ = run(capsys, "bound", *argv)
    assert code == 0
    assert out.strip() == expected


@pytest.mark.parametrize("argv", [
    ["--alpha", "0", "--x", "0.5"],
    ["--alpha", "1", "--x", "1.0"],
    ["--alpha", "1", "--inverse", "-1"],
    ["--alpha", "1", "--pinsker", "2"],
])
def test_bound_domain_errors(capsys, argv):
    code, _, err = run(capsys, "bound", *argv)
    assert code == 2 and err.startswith("error:")


def test_fmt15():
    assert fmt15(0.0) == "0"
    assert fmt15(1.0) == "1.00000000000000"
    assert fmt15(float("inf")) == "inf"
    assert fmt15(1.5e-20) == "1.50000000000000e-20"


def test_verify_csv_and_summary(tmp_path, capsys):
    out = tmp_path / "t.csv"
    code, stdout, _ = run(capsys, "verify", "theorem", "--trials", "20", "--dims", "2,3",
                          "--seed", "7", "--out", str(out))
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "trial,dim,alpha,seed,lhs,rhs,margin,inequality-id,T,s,epsilon-kernel"
    assert len(lines) == 1 + 20 * 7
    summary = json.loads((tmp_path / "t.csv.summary.json").read_text())
    assert summary["failures"] == 0 and summary["rows"] == 140
    assert json.loads(stdout)["failures"] == 0


def test_verify_deterministic_across_jobs(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run(capsys, "verify", "holevo", "--trials", "12", "--seed", "3", "--out", str(a))
    run(capsys, "verify", "holevo", "--trials", "12", "--seed", "3", "--jobs", "2", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_verify_seed_from_env_and_config(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("PRL_SEED", "5")
    _, env_out, _ = run(capsys, "verify", "lemma2", "--trials", "3")
    _, flag_out, _ = run(capsys, "verify", "lemma2", "--trials", "3", "--seed", "5")
    assert env_out == flag_out
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"seed": 9, "trials": 3}))
    _, cfg_out, _ = run(capsys, "verify", "lemma2", "--config", str(cfg))
    _, flag_out, _ = run(capsys, "verify", "lemma2", "--trials", "3", "--seed", "9")
    assert cfg_out == flag_out


@pytest.mark.parametrize("which", ["inverted", "classical", "exchange", "ns-identity", "lemma1", "lemma2"])
def test_verify_other_sweeps(capsys, which):
    code, out, err = run(capsys, "verify", which, "--trials", "5", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["summary"]["failures"] == 0


def test_ns_identity_summary(capsys):
    code, _, err = run(capsys, "verify", "ns-identity", "--trials", "30")
    assert code == 0
    assert json.loads(err)["max_abs_residual"]["ns-identity"] <= 1e-9


@pytest.mark.parametrize("argv", [["--trials", "0"], ["--dims", "1,2"], ["--alphas", "0,1"]])
def test_verify_config_errors(capsys, argv):
    code, _, err = run(capsys, "verify", "theorem", *argv)
    assert code == 2 and "error" in err


def test_verify_unknown_config_key(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"trails": 3}))
    code, _, err = run(capsys, "verify", "theorem", "--config", str(cfg))
    assert code == 2 and "trails" in err


def test_verify_failure_exit_code(capsys):
    # a negative tolerance turns every zero margin into a failure
    code, _, _ = run(capsys, "verify", "lemma1", "--trials", "2", "--tol", "-1")
    assert code == 2
    code, _, _ = run(capsys, "saturation", "--tol", "-1")
    assert code == 1


def test_saturation(tmp_path, capsys):
    out = tmp_path / "sat.csv"
    code, stdout, _ = run(capsys, "saturation", "--eps", "0,1,2", "--alphas", "0.5,2", "--out", str(out))
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "eps,alpha,lhs,rhs,gap,s"
    assert len(lines) == 1 + 3 * 2
    zero = [l.split(",") for l in lines[1:] if l.startswith("0,")]
    assert all(float(r[2]) == 0 and float(r[3]) == 0 for r in zero)
    assert json.loads(stdout)["max_gap"] <= 1e-8


def write_matrix(path, m):
    path.write_text(json.dumps(matrix_to_json(np.asarray(m, dtype=complex))))
    return str(path)


def test_dump_ns(tmp_path, capsys):
    rho = write_matrix(tmp_path / "rho.json", [[1, 0], [0, 0]])
    sigma = write_matrix(tmp_path / "sigma.json", [[0.5, 0.5], [0.5, 0.5]])
    code, out, _ = run(capsys, "dump-ns", "--rho", rho, "--sigma", sigma)
    assert code == 0
    doc = json.loads(out)
    np.testing.assert_allclose(doc["P"], [0.5, 0.5, 0, 0], atol=1e-15)
    np.testing.assert_allclose(doc["Q"], [0.5, 0, 0.5, 0], atol=1e-15)
    assert doc["Theta"] is None and "row-major" in doc["layout"]


def test_dump_ns_with_theta(tmp_path, capsys):
    rho = write_matrix(tmp_path / "rho.json", np.diag([0.7, 0.3]))
    theta = write_matrix(tmp_path / "theta.json", np.diag([1.0, -1.0]))
    out = tmp_path / "ns.json"
    code, _, _ = run(capsys, "dump-ns", "--rho", rho, "--sigma", rho, "--theta", theta, "--out", str(out))
    doc = json.loads(out.read_text())
    assert code == 0 and doc["P"] == doc["Q"]
    assert len(doc["Theta"]["re"]) == 4


def test_dump_ns_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    good = write_matrix(tmp_path / "g.json", np.eye(2) / 2)
    code, _, err = run(capsys, "dump-ns", "--rho", str(bad), "--sigma", good)
    assert code == 2 and "bad.json" in err and "JSON" in err
    notpsd = write_matrix(tmp_path / "n.json", np.diag([1.5, -0.5]))
    code, _, err = run(capsys, "dump-ns", "--rho", notpsd, "--sigma", good)
    assert code == 2 and "n.json" in err
    code, _, err = run(capsys, "dump-ns", "--rho", str(tmp_path / "missing.json"), "--sigma", good)
    assert code == 2


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "petzrenyi", "bound", "--alpha", "0.5", "--x", "0.6"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "0.446287102628420"
