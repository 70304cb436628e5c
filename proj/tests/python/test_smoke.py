"""Smoke tests for the paraword python module and CLI."""

import json
import math
import os
import subprocess

import pytest

import paraword


def test_stform_full():
    out = paraword.stform("S M T")
    assert out["form"] == "S^2 T + S T^2"
    assert out["delta_L"] == 0
    assert out["k"] == 2 and out["n"] == 1

    sm = paraword.stform("S M")
    assert sm["form"] == "S^2 + S T"  # canonical order: same length, S before T
    assert sm["delta_L"] == 1


def test_stform_h0():
    assert paraword.stform("T S", h0=True)["form"] == "S T - T^2"


def test_verify_identity_exact():
    ok = paraword.verify_identity("T S", "S T - T^2", trials=10, h0_only=True, seed=7)
    assert ok["equal"] and ok["trials"] == 10
    bad = paraword.verify_identity("T S", "S T", trials=20, h0_only=True, seed=7)
    assert not bad["equal"]
    assert "witness_g" in bad


def test_parse_errors():
    with pytest.raises(paraword.ParseError):
        paraword.normalize("S Q T")


def test_moebius_and_hyperbolic():
    a = 0.5 + 0.2j
    assert abs(paraword.moebius(a, a)) < 1e-15
    assert abs(paraword.moebius(a, 0.0) - a) < 1e-15
    assert paraword.hyperbolic_dist(0.0, 0.5) == pytest.approx(0.5 * math.log(3.0))


def test_weight_psi_limit():
    _, psi = paraword.weight_w_alpha(0.999, 0.0)
    assert abs(psi - 0.5) < 1e-3


def test_sym_eval_loge():
    v, d = paraword.sym_eval("loge", 0.0)
    assert v == pytest.approx(1.0)
    assert d == pytest.approx(1.0)


def test_bloch_seminorm_of_z():
    rep = paraword.seminorm("bloch", "poly", q=1.0, coeffs=[0.0, 1.0], n_r=64, n_theta=64)
    assert rep["value"] == pytest.approx(1.0, abs=1e-9)


def test_op_lower_bound_identity():
    rep = paraword.op_lower_bound("1", "poly", coeffs=[0.0, 1.0], n_r=64, n_theta=64)
    assert rep["value"] == pytest.approx(1.0, abs=1e-9)


def test_scan_shape():
    out = paraword.equivalence_scan("S T^2", "powlog", beta=0.58333333,
                                    r_list=[0.9, 0.95], threads=2)
    assert out["s"] == pytest.approx(1.5)
    assert out["N"] == 3
    assert len(out["rows"]) == 2
    assert out["csv"].startswith("r,opnorm_lb,seminorm_pow_N,ratio\n")


@pytest.fixture(scope="module")
def cli():
    path = os.environ.get("PARAWORD_CLI")
    if not path or not os.path.exists(path):
        pytest.skip("PARAWORD_CLI not set")
    return path


def test_cli_stform(cli):
    res = subprocess.run([cli, "stform", "S M T"], capture_output=True, text=True, check=True)
    assert "S^2 T + S T^2" in res.stdout
    assert "delta_L = 0" in res.stdout


def test_cli_verify_exit_codes(cli):
    res = subprocess.run(
        [cli, "verify", "--a", "T S", "--b", "S T - T^2", "--h0", "--trials", "5"],
        capture_output=True, text=True)
    assert res.returncode == 0
    res = subprocess.run([cli, "verify", "--a", "T S", "--b", "S T", "--h0", "--trials", "5"],
                         capture_output=True, text=True)
    assert res.returncode == 2
    res = subprocess.run([cli, "stform", "Q"], capture_output=True, text=True)
    assert res.returncode == 1
    err = json.loads(res.stderr)
    assert err["error"] == "parse"


def test_cli_scan_deterministic(cli, tmp_path):
    args = [cli, "--threads", "2", "scan", "--word", "T", "--symbol", "z", "--p", "2",
            "--alpha", "0", "--r-list", "0.9", "0.95", "--n-r", "64", "--n-theta", "64",
            "--r-max", "0.99"]
    a = subprocess.run(args + ["--csv", str(tmp_path / "a.csv")], capture_output=True, text=True)
    b = subprocess.run(args + ["--csv", str(tmp_path / "b.csv")], capture_output=True, text=True)
    assert a.returncode == 0 and b.returncode == 0
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()


def test_cli_json_config(cli, tmp_path):
    cfg = {
        "symbol": {"kind": "powlog", "beta": 0.5, "dilate": 0.9},
        "grid": {"n_r": 64, "n_theta": 64, "r_max": 0.99},
    }
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(cfg))
    out_path = tmp_path / "report.json"
    res = subprocess.run(
        [cli, "--config", str(cfg_path), "seminorm", "--functional", "bloch", "--q", "2",
         "-o", str(out_path)],
        capture_output=True, text=True)
    assert res.returncode == 0, res.stderr
    envelope = json.loads(out_path.read_text())
    assert envelope["tool_version"]
    assert envelope["results"][0]["functional"] == "bloch_q"
    assert "dilate" in envelope["results"][0]["symbol"]
    assert envelope["results"][0]["grid"]["n_r"] == 64
