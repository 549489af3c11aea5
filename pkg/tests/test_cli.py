import csv
import io
import json

import pytest

from awfunctions.cli import FUNCTIONS, build_parser, config_from_args, main, run


def _run(argv):
    out = io.StringIO()
    ns = build_parser().parse_args(argv)
    return run(config_from_args(ns), out), out.getvalue()


def test_eval_elliptic_cosine_at_origin():
    code, text = _run(["eval", "elliptic_cosine", "--mu", "0", "--x", "0"])
    assert code == 0
    d = json.loads(text)
    assert abs(d["value"]["re"] - 1) < 1e-10 and abs(d["value"]["im"]) < 1e-10
    assert d["error_estimate"] >= 0


def test_verify_gamma_passes():
    code, text = _run(["verify", "gamma", "--tau", "0.3j"])
    d = json.loads(text)
    assert code == 0 and d["suite"] == "gamma" and d["seed"] == 20040101
    assert all(c["pass"] for c in d["checks"])
    assert {"name", "paper_ref", "residual", "tolerance", "pass"} <= set(d["checks"][0])


def test_verify_is_deterministic():
    a = _run(["verify", "rep", "--seed", "7"])[1]
    b = _run(["verify", "rep", "--seed", "7"])[1]
    assert a == b and json.loads(a)["seed"] == 7


def test_residual_scan_E_plus(capsys):
    code = main(["residual-scan", "D:E_plus", "--grid", "-1:1:41", "--axis", "im",
                 "--format", "csv"])
    out = capsys.readouterr().out
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 41
    finite = [float(r["residual"]) for r in rows if r["note"] == ""]
    assert len(finite) == 40 and max(finite) < 1e-7
    assert [r["note"] for r in rows if r["note"]] == ["SingularPoint"]


def test_table_round_trip():
    code, text = _run(["table", "E_plus", "--grid", "0:1:5", "--format", "csv"])
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    ns = build_parser().parse_args(["eval", "E_plus"])
    cfg = config_from_args(ns)
    for r in rows:
        x = complex(float(r["x_re"]), float(r["x_im"]))
        v, _ = FUNCTIONS["E_plus"](cfg, x)
        assert complex(v) == complex(float(r["re"]), float(r["im"]))


@pytest.mark.parametrize("argv", [
    ["eval", "psi_lambda", "--tau", "0.3j"],
    ["eval", "no_such_function"],
    ["verify", "no_such_suite"],
    ["table", "q_gamma", "--grid", "1:2"],
    ["table", "q_gamma", "--grid", "0:1:0"],
    ["eval", "q_gamma", "--tau", "-0.7"],
    ["residual-scan", "L:E_plus"],
    ["eval", "q_gamma", "--tol", "0"],
])
def test_config_errors_exit_2(argv):
    assert main(argv) == 2


def test_numerical_failure_exit_1():
    # x on the pole lattice of the q-gamma function
    assert main(["eval", "q_gamma", "--tau", "0.5j", "--x", "-1-2j"]) == 1


def test_nudge_changes_lambda():
    ns = build_parser().parse_args(["eval", "psi_lambda", "--nudge"])
    assert config_from_args(ns).lam_eff == pytest.approx(0.37 + 1e-3j)


def test_eval_psi_csv():
    code, text = _run(["eval", "psi_lambda", "--tau", "-0.3", "--alpha", "0.4", "--rho", "0.7",
                       "--beta", "0.55", "--sigma", "0.3", "--format", "csv"])
    row = next(csv.DictReader(io.StringIO(text)))
    assert code == 0 and float(row["error_bound"]) < 1e-10


def test_grid_offset_shifts_points():
    code, text = _run(["table", "q_gamma", "--grid=-1:1:3", "--axis", "re",
                       "--offset=0.25j", "--format", "csv"])
    assert code == 0
    rows = [r for r in csv.DictReader(l for l in io.StringIO(text) if not l.startswith("#"))]
    assert [float(r["x_re"]) for r in rows] == [-1.0, 0.0, 1.0]
    assert all(float(r["x_im"]) == 0.25 for r in rows)
