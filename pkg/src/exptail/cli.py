"""Command-line surface: single evaluations, inequality sweeps, sharpness
probes and open-problem explorations with machine-readable output.

Exit codes: 0 success (and, for ``check``, zero failing rows), 1 at least
one FAIL row, 2 usage problems (unknown selector, malformed grid, bad
parameters), 3 numerical failure.  INDETERMINATE rows are counted but
never change the exit code.

Numbers in JSON and CSV reports are decimal strings rendered at full
context precision, so extended-precision results survive serialisation;
identical invocations produce byte-identical JSON.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from .errors import (DegeneratePointError, DomainError, NumericalError, PoleError,
                     UsageError)
from .explorer import (problem1_monotonicity, problem5_pade_cm, problem7_limit,
                       problem8_gautschi_k, problem9_limit, problem11_gdiffs,
                       problem12_row_monotone, problem15_range, rk_error_demo)
from .inequalities import (CHECK_IDS, default_sweep, parse_grid, sharpness_probe,
                           summarize, sweep)
from .numerics import kummer_1f1_one, lower_incomplete_gamma
from .pade import aitken_row, cesaro_mean, eval_approximant, pade_exp
from .precision import PrecisionContext, format_real, parse_real
from .remainders import (b_value, eps_value, g_ratio, q_value, r_frac, r_neg,
                         r_obreshkov, r_tail)

ENV_PRECISION = "EXPTAIL_PREC"

EVAL_QUANTITIES = ("rn", "ra", "rneg", "robr", "q", "b", "eps", "g",
                   "gammainc", "kummer", "pade", "aitken", "cesaro")

OUT_OF_SCOPE_PROBLEMS = {"2", "3", "4", "6", "10", "13", "14"}


def _context(args) -> PrecisionContext:
    bits = args.bits
    if bits is None:
        env = os.environ.get(ENV_PRECISION)
        bits = int(env) if env else 256
    return PrecisionContext(bits=bits)


def _dec(value, ctx) -> str:
    if value is None:
        return ""
    return format_real(value, ctx)


def _param_json(value, ctx):
    if value is None or isinstance(value, (int, str, bool)):
        return value
    if isinstance(value, (list, tuple)):
        return [_param_json(v, ctx) for v in value]
    if isinstance(value, dict):
        return {k: _param_json(v, ctx) for k, v in value.items()}
    return _dec(value, ctx)


# ---------------------------------------------------------------------------
# eval


def _cmd_eval(args) -> int:
    ctx = _context(args)
    q = args.quantity

    def need(flag):
        v = getattr(args, flag if flag != "lambda" else "lam")
        if v is None:
            raise UsageError(f"quantity '{q}' requires --{flag}")
        return v

    def real(flag):
        return parse_real(need(flag), ctx)

    def integer(flag):
        raw = need(flag)
        try:
            return int(raw)
        except ValueError as exc:
            raise UsageError(f"--{flag} must be an integer, got {raw!r}") from exc

    if q == "rn":
        value = r_tail(integer("n"), real("x"), ctx)
    elif q == "ra":
        value = r_frac(real("a"), real("x"), ctx)
    elif q == "rneg":
        value = r_neg(integer("n"), real("x"), ctx)
    elif q == "robr":
        value = r_obreshkov(integer("n"), integer("m"), real("x"), ctx)
    elif q == "q":
        value = q_value(integer("n"), real("x"), ctx)
    elif q == "b":
        value = b_value(real("nu"), real("x"), ctx)
    elif q == "eps":
        value = eps_value(real("nu"), real("x"), ctx)
    elif q == "g":
        value = g_ratio(integer("n"), real("x"), ctx)
    elif q == "gammainc":
        value = lower_incomplete_gamma(real("v"), real("x"), ctx)
    elif q == "kummer":
        value = kummer_1f1_one(real("b"), real("x"), ctx)
    elif q == "pade":
        value = eval_approximant(pade_exp(integer("n"), integer("m")), real("x"), ctx)
    elif q == "aitken":
        value = aitken_row(integer("n"), real("x"), ctx)
    elif q == "cesaro":
        value = cesaro_mean(integer("n"), real("x"), ctx)
    else:
        raise UsageError(f"unknown quantity '{q}' (known: {', '.join(EVAL_QUANTITIES)})")

    print(_dec(value, ctx))
    print(f"err_estimate = {_dec(abs(value) * ctx.target_rel_err, ctx)}")
    return 0


# ---------------------------------------------------------------------------
# check


def _check_record(r, ctx) -> dict:
    return {
        "check": r.check,
        "params": _param_json(r.params, ctx),
        "x": _dec(r.x, ctx),
        "lhs": _dec(r.lhs, ctx),
        "rhs": _dec(r.rhs, ctx),
        "margin": _dec(r.margin, ctx),
        "ratio": _dec(r.ratio, ctx),
        "status": r.status,
        "err_bound": _dec(r.err_bound, ctx),
    }


def render_check_report(results, ctx, fmt: str) -> str:
    summary = summarize(results)
    if fmt == "json":
        obj = {
            "precision_bits": ctx.bits,
            "target_rel_err": _dec(ctx.target_rel_err, ctx),
            "records": [_check_record(r, ctx) for r in results],
            "summary": summary,
        }
        return json.dumps(obj, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, quoting=csv.QUOTE_MINIMAL, lineterminator="\r\n")
        fields = ["check", "params", "x", "lhs", "rhs", "margin", "ratio", "status", "err_bound"]
        writer.writerow(fields)
        for r in results:
            rec = _check_record(r, ctx)
            rec["params"] = json.dumps(rec["params"], sort_keys=True)
            writer.writerow([rec[f] for f in fields])
        return buf.getvalue()
    if fmt == "text":
        lines = []
        for r in results:
            ps = " ".join(f"{k}={_param_json(v, ctx)}" for k, v in r.params.items())
            lines.append(
                f"{r.status:6s} {r.check:14s} {ps} x={format_real(r.x, ctx, 8)} "
                f"margin={format_real(r.margin, ctx, 8)}"
            )
        lines.append(
            f"summary: {summary['PASS']} pass, {summary['FAIL']} fail, "
            f"{summary['INDET']} indeterminate, {summary['ERROR']} error"
        )
        return "\n".join(lines) + "\n"
    raise UsageError(f"unknown format '{fmt}'")


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_check(args) -> int:
    ctx = _context(args)
    ids = list(CHECK_IDS) if args.id == "all" else [s.strip() for s in args.id.split(",")]
    for name in ids:
        if name not in CHECK_IDS:
            raise UsageError(f"unknown check id '{name}' (known: {', '.join(CHECK_IDS)})")
    if args.grid:
        results = sweep(ids, parse_grid(args.grid, ctx), ctx)
    else:
        results = default_sweep(ids, ctx)
    _emit(render_check_report(results, ctx, args.format), args.out)
    summary = summarize(results)
    if summary["ERROR"]:
        return 3
    return 1 if summary["FAIL"] else 0


# ---------------------------------------------------------------------------
# sharpness


def _cmd_sharpness(args) -> int:
    ctx = _context(args)
    params = {}
    for flag in ("n", "k"):
        v = getattr(args, flag)
        if v is not None:
            params[flag] = int(v)
    for flag in ("a", "beta", "p", "nu", "theta"):
        v = getattr(args, flag)
        if v is not None:
            params[flag] = parse_real(v, ctx)
    direction = {"zero": "zero", "inf": "inf"}.get(args.dir)
    if direction is None:
        raise UsageError(f"--dir must be 'zero' or 'inf', got {args.dir!r}")
    result = sharpness_probe(args.id, direction, ctx, params)
    spread = max(abs(t - result.limit) for t in result.extrapolants[-3:])
    print(f"{format_real(result.limit, ctx, 12)} ± {format_real(spread, ctx, 3)}")
    if result.documented_limit is not None:
        print(f"documented limit: {format_real(result.documented_limit, ctx, 12)}")
    print(f"converged: {result.converged}")
    for x, ratio in result.samples:
        print(f"  x={format_real(x, ctx, 8)}  ratio={format_real(ratio, ctx, 20)}")
    return 0


# ---------------------------------------------------------------------------
# explore


def _report_json(report, ctx) -> dict:
    return {
        "kind": report.kind,
        "params": _param_json(report.params, ctx),
        "columns": report.columns,
        "rows": [[_param_json(v, ctx) for v in row] for row in report.rows],
        "notes": report.notes,
        "diagnostics": _param_json(report.diagnostics, ctx),
    }


def render_report(report, ctx, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(_report_json(report, ctx), indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, quoting=csv.QUOTE_MINIMAL, lineterminator="\r\n")
        writer.writerow(report.columns)
        for row in report.rows:
            writer.writerow([_param_json(v, ctx) for v in row])
        return buf.getvalue()
    if fmt == "text":
        lines = [f"report: {report.kind}", f"params: {_param_json(report.params, ctx)}"]
        lines.append(" | ".join(report.columns))
        for row in report.rows:
            lines.append(" | ".join(str(_param_json(v, ctx)) for v in row))
        lines.extend(f"note: {n}" for n in report.notes)
        lines.append(f"diagnostics: {json.dumps(_param_json(report.diagnostics, ctx))}")
        return "\n".join(lines) + "\n"
    raise UsageError(f"unknown format '{fmt}'")


def _explore_x_grid(args, ctx):
    if not args.xgrid:
        return None
    axis = parse_grid(f"x={args.xgrid}", ctx).axes[0]
    return axis.values


def _cmd_explore(args) -> int:
    ctx = _context(args)
    problem = args.problem
    if problem in OUT_OF_SCOPE_PROBLEMS:
        print(f"error: problem {problem} not implemented (out of scope)", file=sys.stderr)
        return 2
    xs = _explore_x_grid(args, ctx)
    if problem == "1":
        report = problem1_monotonicity(args.n if args.n is not None else 2, xs, ctx)
    elif problem == "5":
        report = problem5_pade_cm(args.n if args.n is not None else 2,
                                  args.kmax if args.kmax is not None else 4, xs, ctx)
    elif problem == "7":
        report = problem7_limit(args.nmax if args.nmax is not None else 60,
                                args.c if args.c is not None else "1", ctx)
    elif problem == "8":
        report = problem8_gautschi_k(args.n if args.n is not None else 2,
                                     args.k if args.k is not None else 3, xs, ctx)
    elif problem == "9":
        report = problem9_limit(args.a if args.a is not None else "0.5",
                                args.m if args.m is not None else 0,
                                args.nmax if args.nmax is not None else 60, ctx)
    elif problem == "11":
        top = args.nmax if args.nmax is not None else 10
        report = problem11_gdiffs(args.kmax if args.kmax is not None else 3,
                                  range(1, top + 1), xs, ctx)
    elif problem == "12":
        top = args.nmax if args.nmax is not None else 6
        report = problem12_row_monotone(range(1, top + 1), 12, ctx)
    elif problem == "15":
        report = problem15_range(args.n if args.n is not None else 3, xs, ctx)
    elif problem == "rk":
        report = rk_error_demo(args.lam if args.lam is not None else "1",
                               args.h if args.h is not None else "0.1",
                               args.y0 if args.y0 is not None else "1", ctx)
    else:
        print(f"error: unknown problem '{problem}'", file=sys.stderr)
        return 2
    _emit(render_report(report, ctx, args.format), args.out)
    return 0


# ---------------------------------------------------------------------------
# parser


def _parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="exptail",
        description="Exponential Taylor remainders: evaluation, sharp-constant "
                    "inequality verification, and open-problem exploration.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--bits", type=int, default=None,
                       help=f"working precision in bits (default: ${ENV_PRECISION} or 256)")

    p_eval = sub.add_parser("eval", help="evaluate one quantity at one point")
    p_eval.add_argument("--quantity", required=True,
                        help=f"one of: {', '.join(EVAL_QUANTITIES)}")
    p_eval.add_argument("--n", default=None)
    p_eval.add_argument("--m", default=None)
    p_eval.add_argument("--a", default=None)
    p_eval.add_argument("--nu", default=None)
    p_eval.add_argument("--v", default=None)
    p_eval.add_argument("--b", default=None)
    p_eval.add_argument("--x", default=None)
    add_common(p_eval)
    p_eval.set_defaults(func=_cmd_eval)

    p_check = sub.add_parser("check", help="run inequality checks over a grid")
    p_check.add_argument("--id", default="all",
                         help="comma-separated check ids, or 'all'")
    p_check.add_argument("--grid", default=None,
                         help="grid spec, e.g. 'n=1..8;x=log(1e-3,30,25)'; "
                              "omitted: the built-in default grid")
    p_check.add_argument("--out", default=None, help="output path (default stdout)")
    p_check.add_argument("--format", default="json", choices=("json", "csv", "text"))
    add_common(p_check)
    p_check.set_defaults(func=_cmd_check)

    p_sharp = sub.add_parser("sharpness", help="extrapolate a check's sharp limit")
    p_sharp.add_argument("--id", required=True)
    p_sharp.add_argument("--dir", required=True, help="'zero' (x->0) or 'inf' (x->oo)")
    p_sharp.add_argument("--n", default=None)
    p_sharp.add_argument("--k", default=None)
    p_sharp.add_argument("--a", default=None)
    p_sharp.add_argument("--beta", default=None)
    p_sharp.add_argument("--p", default=None)
    p_sharp.add_argument("--nu", default=None)
    p_sharp.add_argument("--theta", default=None)
    add_common(p_sharp)
    p_sharp.set_defaults(func=_cmd_sharpness)

    p_exp = sub.add_parser("explore", help="run an open-problem exploration")
    p_exp.add_argument("--problem", required=True,
                       help="one of 1, 5, 7, 8, 9, 11, 12, 15, rk")
    p_exp.add_argument("--n", type=int, default=None)
    p_exp.add_argument("--k", type=int, default=None)
    p_exp.add_argument("--kmax", type=int, default=None)
    p_exp.add_argument("--m", type=int, default=None)
    p_exp.add_argument("--nmax", type=int, default=None)
    p_exp.add_argument("--c", default=None)
    p_exp.add_argument("--a", default=None)
    p_exp.add_argument("--lambda", dest="lam", default=None)
    p_exp.add_argument("--h", default=None)
    p_exp.add_argument("--y0", default=None)
    p_exp.add_argument("--xgrid", default=None,
                       help="x grid, e.g. 'log(1e-2,10,20)' or 'lin(0.1,5,10)'")
    p_exp.add_argument("--out", default=None)
    p_exp.add_argument("--format", default="json", choices=("json", "csv", "text"))
    add_common(p_exp)
    p_exp.set_defaults(func=_cmd_explore)

    return top


def main(argv=None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, DomainError, PoleError, DegeneratePointError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
