import json
import subprocess
import sys

import numpy as np
import pytest

from cauchymeans import FamilyParams, Interval, build_family
from cauchymeans.cli import dumps, main

POLY = {"kind": "family", "gamma": 0, "A": 0, "B": 1, "C": 1, "D": 0, "domain": {"lo": -5, "hi": 5}}


def _job(tmp_path, obj, name="job.json"):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_poly(tmp_path, capsys):
    code, out, _ = _run(capsys, "check", "--spec", _job(tmp_path, POLY), "--resolution", "201")
    rep = json.loads(out)
    assert code == 0 and rep["passed"] and rep["report"]["max_abs"] <= 1e-9
    assert rep["tag"] == "PolyFamily" and rep["report"]["grid_points"] == 201


def test_check_tolerance_failure(tmp_path, capsys):
    # rounding alone exceeds this tolerance
    trig = {"kind": "family", "gamma": -1, "A": 1, "B": 2, "C": 0.5, "D": -1, "domain": {"lo": 0.2, "hi": 1.4}}
    code, out, _ = _run(capsys, "check", "--spec", _job(tmp_path, trig), "--tol", "1e-30")
    assert code == 1 and json.loads(out)["passed"] is False


def test_check_exact_piecewise(tmp_path, capsys):
    pw = {"kind": "piecewise", "ambient": {"lo": 0, "hi": 4},
          "K": {"lo": 1, "hi": 2.5, "lo_open": False, "hi_open": False},
          "lambda_star": 0.5, "lambda_sup": 3.25, "A": 1.5, "mu": -0.75, "f_core": "square", "phi_out": "cos"}
    code, out, _ = _run(capsys, "check", "--spec", _job(tmp_path, pw), "--exact", "--resolution", "31")
    assert code == 0 and json.loads(out)["report"]["max_abs"] == 0


def test_check_csv(tmp_path, capsys):
    code, out, _ = _run(capsys, "check", "--spec", _job(tmp_path, POLY), "--resolution", "4", "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "x,y,residual" and len(lines) == 17


def test_delta_job(tmp_path, capsys):
    job = dict(POLY, equation="delta_h", h=0.25)
    code, out, _ = _run(capsys, "check", "--spec", _job(tmp_path, job))
    rep = json.loads(out)["report"]
    assert code == 0 and rep["equation"] == "delta_h" and rep["domain"]["lo"] == -4.75


def test_mean(tmp_path, capsys):
    job = {"kind": "cauchy", "G": "square", "H": "identity", "x": 2, "y": 4}
    code, out, _ = _run(capsys, "mean", "--spec", _job(tmp_path, job))
    assert code == 0 and json.loads(out)["mean"] == 3
    job = {"kind": "quasi_arithmetic", "phi": "reciprocal", "x": 2, "y": 6}
    code, out, _ = _run(capsys, "mean", "--spec", _job(tmp_path, job), "--format", "csv")
    assert out.splitlines()[0] == "x,y,mean" and float(out.splitlines()[1].split(",")[2]) == pytest.approx(3)


def test_reflect(tmp_path, capsys):
    job = {"kind": "reflect", "J": {"lo": 4, "hi": 5}, "ambient": {"lo": 0, "hi": 10}, "n": 3,
           "S": {"lo": 7, "hi": 7, "lo_open": False, "hi_open": False}, "P": {"lo": 1, "hi": 2}}
    code, out, _ = _run(capsys, "reflect", "--spec", _job(tmp_path, job))
    rep = json.loads(out)
    assert code == 0
    assert [(t["lo"], t["hi"]) for t in rep["terms"]] == [(4, 5), (3, 6), (2, 7), (1, 8)]
    assert rep["closure"] == {"lo": 0, "hi": 10, "lo_open": True, "hi_open": True}
    assert rep["reflect"] == {"empty": True}


def test_reflect_exact_decimals(tmp_path, capsys):
    job = {"kind": "reflect", "J": {"lo": 0.9, "hi": 1.1}, "ambient": {"lo": 0, "hi": 10}}
    code, out, _ = _run(capsys, "reflect", "--spec", _job(tmp_path, job))
    assert json.loads(out)["closure"]["hi"] == 2.2


def test_equality(tmp_path, capsys):
    job = {"kind": "equality", "G": "identity", "H": "reciprocal", "phi": "log", "gamma": 1,
           "domain": {"lo": 0.1, "hi": 10}}
    code, out, _ = _run(capsys, "equality", "--spec", _job(tmp_path, job), "--resolution", "41")
    rep = json.loads(out)
    assert code == 0 and rep["verify"]["max_abs"] <= 1e-10 and rep["affine_fit"]["det"] == pytest.approx(-2)
    job["gamma"] = 0
    code, out, _ = _run(capsys, "equality", "--spec", _job(tmp_path, job), "--resolution", "41")
    assert code == 1 and json.loads(out)["affine_fit"]["fit_residual"] > 1e-3


def test_equality_affine_block(tmp_path, capsys):
    job = {"kind": "equality", "phi": "log", "gamma": -1, "domain": {"lo": 0.5, "hi": 2},
           "affine": {"A": 1, "B": 0.5, "C": 0, "D": 1, "mu": 2}}
    code, out, _ = _run(capsys, "equality", "--spec", _job(tmp_path, job), "--resolution", "31")
    assert code == 0 and json.loads(out)["affine_fit"]["mu"] == pytest.approx(2)


def test_family_and_recover(tmp_path, capsys):
    job = {"kind": "family", "gamma": 1, "A": 1, "B": 0.5, "C": -0.2, "D": 1, "lambda": 0.1, "mu": 0.3,
           "domain": {"lo": 0.5, "hi": 3}}
    code, out, _ = _run(capsys, "family", "--spec", _job(tmp_path, job), "--resolution", "5")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "x,phi,f,F" and len(lines) == 6

    t = build_family(FamilyParams(1, 1, 0.5, -0.2, 1, 0.1, 0.3), Interval.open(-0.1, 1.1))
    xs = np.arange(1001) / 1000
    rows = ["x,f,F,phi"] + [f"{x!r},{float(t.f(x))!r},{float(t.F(x))!r},{float(t.phi(x))!r}"
                                 for x in map(float, xs)]
    csv_path = tmp_path / "samples.csv"
    csv_path.write_text("\n".join(rows) + "\n")
    code, out, _ = _run(capsys, "recover", "--spec", str(csv_path))
    rep = json.loads(out)
    assert code == 0 and rep["classified_case"] == "HyperFamily"
    assert rep["gamma"] == pytest.approx(1, rel=1e-4) and rep["max_function_discrepancy"] <= 1e-8


@pytest.mark.parametrize("obj,needle", [
    (dict(POLY, colour="red"), "unknown keys"),
    ({k: v for k, v in POLY.items() if k != "A"}, "missing keys"),
    (dict(POLY, kind="spline"), "kind"),
    (dict(POLY, A=0, B=0), "AD != BC"),
    (dict(POLY, domain={"lo": -5, "hi": 5, "closed": True}), "interval"),
    (dict(POLY, equation="quadratic"), "equation"),
])
def test_spec_errors_exit_2(tmp_path, capsys, obj, needle):
    code, out, err = _run(capsys, "check", "--spec", _job(tmp_path, obj))
    assert code == 2 and out == ""
    rec = json.loads(err)
    assert set(rec) == {"error", "message"} and needle in rec["message"]


def test_io_and_flag_errors(tmp_path, capsys):
    code, _, err = _run(capsys, "check", "--spec", str(tmp_path / "missing.json"))
    assert code == 2 and json.loads(err)["error"] == "FileNotFoundError"
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert _run(capsys, "check", "--spec", str(bad))[0] == 2
    assert _run(capsys, "check", "--spec", _job(tmp_path, POLY), "--resolution", "1")[0] == 2
    assert _run(capsys, "check", "--spec", _job(tmp_path, POLY), "--tol", "0")[0] == 2


def test_output_file_and_byte_identical(tmp_path):
    spec = _job(tmp_path, dict(POLY, domain={"lo": 0.5, "hi": 3}))
    outs = []
    for k in range(2):
        target = tmp_path / f"out{k}.json"
        proc = subprocess.run([sys.executable, "-m", "cauchymeans.cli", "check", "--spec", spec,
                               "--output", str(target)], capture_output=True)
        assert proc.returncode == 0
        outs.append(target.read_bytes())
    assert outs[0] == outs[1] and outs[0].endswith(b"\n")


def test_dumps_formatting():
    text = dumps({"a": 0.1, "b": float("inf"), "c": float("nan"), "d": [1, -float("inf")], "e": True})
    assert text == '{"a": 0.10000000000000001, "b": "+inf", "c": null, "d": [1, "-inf"], "e": true}\n'
    assert float(json.loads(dumps(1 / 3))) == 1 / 3
