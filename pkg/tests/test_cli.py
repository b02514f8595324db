"""CLI surface: selectors, exit codes, output formats, the environment
override, and byte determinism of reports."""

import csv
import io
import json

import pytest

from exptail.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_eval_tail(capsys):
    code, out, _ = run(capsys, "eval", "--quantity", "rn", "--n", "4", "--x", "0.1")
    assert code == 0
    assert out.splitlines()[0].startswith("8.4742314291478")
    assert "err_estimate" in out


def test_eval_zero(capsys):
    code, out, _ = run(capsys, "eval", "--quantity", "rn", "--n", "0", "--x", "0")
    assert code == 0
    assert out.splitlines()[0] == "0.0"


def test_eval_pade_exact(capsys):
    code, out, _ = run(capsys, "eval", "--quantity", "pade", "--n", "1", "--m", "1", "--x", "1")
    assert code == 0
    assert out.splitlines()[0] == "3.0"


@pytest.mark.parametrize("quantity,flags", [
    ("ra", ["--a", "0.5", "--x", "2"]),
    ("rneg", ["--n", "2", "--x", "3"]),
    ("robr", ["--n", "1", "--m", "1", "--x", "1"]),
    ("q", ["--n", "2", "--x", "1"]),
    ("b", ["--nu", "0.5", "--x", "2"]),
    ("eps", ["--nu", "1", "--x", "1"]),
    ("g", ["--n", "1", "--x", "1"]),
    ("gammainc", ["--v", "3", "--x", "1"]),
    ("kummer", ["--b", "4", "--x", "2"]),
    ("aitken", ["--n", "2", "--x", "1"]),
    ("cesaro", ["--n", "1", "--x", "1"]),
])
def test_eval_all_selectors(capsys, quantity, flags):
    code, out, _ = run(capsys, "eval", "--quantity", quantity, *flags)
    assert code == 0
    assert out.strip()


def test_eval_usage_errors(capsys):
    code, _, err = run(capsys, "eval", "--quantity", "nosuch", "--x", "1")
    assert code == 2
    code, _, err = run(capsys, "eval", "--quantity", "rn", "--x", "1")
    assert code == 2 and "requires --n" in err
    code, _, err = run(capsys, "eval", "--quantity", "rn", "--n", "1.5", "--x", "1")
    assert code == 2


def test_check_single_pass_row(capsys):
    code, out, _ = run(capsys, "check", "--id", "ALZER", "--grid", "n=1..1;x=lin(1,1,1)",
                       "--format", "text")
    assert code == 0
    assert out.count("PASS") == 1


def test_check_unknown_id(capsys):
    code, _, err = run(capsys, "check", "--id", "NOSUCH")
    assert code == 2
    assert "unknown check id" in err


def test_check_bad_grid(capsys):
    code, _, _ = run(capsys, "check", "--id", "ALZER", "--grid", "n=1..8;x=geo(1,2,3)")
    assert code == 2
    code, _, _ = run(capsys, "check", "--id", "ALZER", "--grid", "zz=1..3;x=lin(1,1,1)")
    assert code == 2  # axis matching no parameter


def test_check_all_with_shared_grid(capsys, tmp_path):
    # one shared grid drives the whole catalog: named axes override the
    # defaults, everything else keeps its default values
    out_file = tmp_path / "all.json"
    code, _, _ = run(capsys, "check", "--id", "all", "--grid", "n=2..3;x=lin(1,2,2)",
                     "--out", str(out_file))
    assert code == 0
    doc = json.loads(out_file.read_text())
    assert doc["summary"]["FAIL"] == 0
    covered = {rec["check"] for rec in doc["records"]}
    assert {"ALZER", "KIM_37", "FRACMONO_34", "PADE_ROW_45"} <= covered


def test_check_json_schema(capsys, tmp_path):
    out_file = tmp_path / "report.json"
    code, _, _ = run(capsys, "check", "--id", "ALZER", "--grid", "n=1..2;x=lin(1,2,2)",
                     "--out", str(out_file))
    assert code == 0
    doc = json.loads(out_file.read_text())
    assert doc["precision_bits"] == 256
    assert doc["summary"]["PASS"] == 4
    rec = doc["records"][0]
    assert list(rec) == ["check", "params", "x", "lhs", "rhs", "margin", "ratio",
                         "status", "err_bound"]
    assert rec["status"] == "PASS"
    assert isinstance(rec["margin"], str)


def test_check_csv_format(capsys, tmp_path):
    out_file = tmp_path / "report.csv"
    code, _, _ = run(capsys, "check", "--id", "SANDWICH_49", "--grid", "n=1..2;x=lin(1,3,2)",
                     "--out", str(out_file), "--format", "csv")
    assert code == 0
    with open(out_file, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["check", "params", "x", "lhs", "rhs", "margin", "ratio",
                       "status", "err_bound"]
    assert len(rows) == 5
    assert all(row[7] == "PASS" for row in rows[1:])


def test_check_determinism_bytes(capsys, tmp_path):
    args = ("check", "--id", "ALZER,REVERSE_43", "--grid", "n=1..3;x=log(1e-2,5,4)")
    f1, f2 = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, *args, "--out", str(f1))[0] == 0
    assert run(capsys, *args, "--out", str(f2))[0] == 0
    assert f1.read_bytes() == f2.read_bytes()


def test_check_indeterminate_does_not_flip_exit_code(capsys):
    # a degenerate equality point reports INDET and still exits 0
    code, out, _ = run(capsys, "check", "--id", "GEN_K", "--grid", "n=3..3;k=0..0;x=lin(1,1,1)")
    assert code == 0
    doc = json.loads(out)
    assert doc["summary"]["INDET"] == 1 and doc["summary"]["PASS"] == 0


def test_check_numerical_failure_exits_3(capsys, monkeypatch):
    from mpmath import mpf

    import exptail.cli as cli
    from exptail.inequalities import CheckResult

    nan = mpf("nan")
    broken = CheckResult(check="ALZER", params={"n": 1}, x=mpf(1), lhs=nan, rhs=nan,
                         margin=nan, ratio=None, err_bound=nan, status="ERROR")
    monkeypatch.setattr(cli, "default_sweep", lambda ids, ctx: [broken])
    code, out, _ = run(capsys, "check", "--id", "ALZER")
    assert code == 3
    assert json.loads(out)["summary"]["ERROR"] == 1


def test_bits_floor_rejected(capsys):
    code, _, err = run(capsys, "check", "--id", "ALZER", "--grid", "n=1..1;x=lin(1,1,1)",
                       "--bits", "52")
    assert code == 2
    assert "53" in err


def test_precision_env_and_flag(capsys, monkeypatch):
    monkeypatch.setenv("EXPTAIL_PREC", "128")
    code, out, _ = run(capsys, "check", "--id", "ALZER", "--grid", "n=1..1;x=lin(1,1,1)")
    assert code == 0
    assert json.loads(out)["precision_bits"] == 128
    # explicit flag wins over the environment
    code, out, _ = run(capsys, "check", "--id", "ALZER", "--grid", "n=1..1;x=lin(1,1,1)",
                       "--bits", "192")
    assert json.loads(out)["precision_bits"] == 192


def test_sharpness_output(capsys):
    code, out, _ = run(capsys, "sharpness", "--id", "ALZER", "--n", "3", "--dir", "zero")
    assert code == 0
    assert out.splitlines()[0].startswith("0.8 ")
    assert "documented limit: 0.8" in out


def test_sharpness_missing_direction(capsys):
    code, _, _ = run(capsys, "sharpness", "--id", "ALZER", "--n", "3")
    assert code == 2


def test_sharpness_undocumented(capsys):
    code, _, err = run(capsys, "sharpness", "--id", "LINEAR_44", "--n", "3", "--dir", "zero")
    assert code == 2
    assert "no documented sharpness limit" in err


def test_explore_rk(capsys):
    code, out, _ = run(capsys, "explore", "--problem", "rk", "--lambda", "1", "--h", "0.1")
    assert code == 0
    doc = json.loads(out)
    assert doc["kind"] == "rk"
    assert float(doc["diagnostics"]["relative_agreement"]) < 1e-10


def test_explore_problem15(capsys):
    code, out, _ = run(capsys, "explore", "--problem", "15", "--n", "3")
    assert code == 0
    doc = json.loads(out)
    assert doc["diagnostics"]["violations"] == []


def test_explore_out_of_scope(capsys):
    code, _, err = run(capsys, "explore", "--problem", "2")
    assert code == 2
    assert "not implemented (out of scope)" in err


def test_explore_unknown(capsys):
    code, _, _ = run(capsys, "explore", "--problem", "99")
    assert code == 2


def test_explore_each_problem_runs(capsys):
    fast_args = {
        "1": ["--n", "2", "--xgrid", "log(0.1,5,5)"],
        "5": ["--n", "1", "--kmax", "2"],
        "7": ["--nmax", "20"],
        "8": ["--n", "2", "--k", "3", "--xgrid", "log(0.5,2,3)"],
        "9": ["--nmax", "20"],
        "11": ["--kmax", "2", "--nmax", "6", "--xgrid", "lin(1,1,1)"],
        "12": ["--nmax", "3"],
        "15": ["--n", "2", "--xgrid", "log(0.1,5,5)"],
    }
    for problem, extra in fast_args.items():
        code, out, _ = run(capsys, "explore", "--problem", problem, *extra)
        assert code == 0, problem
        assert json.loads(out)["kind"] == f"problem{problem}"


def test_explore_text_and_csv_formats(capsys):
    code, out, _ = run(capsys, "explore", "--problem", "rk", "--format", "text")
    assert code == 0 and out.startswith("report: rk")
    code, out, _ = run(capsys, "explore", "--problem", "rk", "--format", "csv")
    assert code == 0
    header = next(csv.reader(io.StringIO(out)))
    assert header == ["one_step_error", "remainder_reference", "relative_agreement"]
