"""Acceptance suite: one test per exit criterion, each printing a
PASS/FAIL line (run with ``pytest -s`` to see them inline).

Tolerances are pinned here and nowhere else; nothing is deferred to
later calibration.
"""

import json
import time
from fractions import Fraction

from mpmath import mp, mpf

from conftest import rel_err
from exptail.cli import main
from exptail.inequalities import (chebyshev_constant, constant_cross_identities, default_sweep,
                                  evaluate_check, log_grid, sharpness_probe, summarize)
from exptail.numerics import gamma_fn
from exptail.pade import aitken_row, eval_approximant, order_condition_defect, pade_exp
from exptail.precision import PrecisionContext
from exptail.remainders import RemainderKind, RemainderSpec, cross_check, r_frac
from exptail.explorer import rk_error_demo

CTX = PrecisionContext(256)


def _report(num: int, ok: bool, title: str) -> bool:
    print(f"\nacceptance criterion {num}: {'PASS' if ok else 'FAIL'} - {title}")
    return ok


def test_criterion_1_sharp_constant_exactness():
    t0 = time.time()
    violations = constant_cross_identities(12)
    elapsed = time.time() - t0
    ok = not violations and elapsed < 1.0
    assert _report(1, ok, f"exact-rational constant identities, n <= 12 ({elapsed:.3f}s)")
    assert violations == []
    assert elapsed < 1.0


def test_criterion_2_full_default_sweep():
    t0 = time.time()
    results = default_sweep(None, CTX)
    elapsed = time.time() - t0
    counts = summarize(results)
    ok = counts["FAIL"] == 0 and counts["ERROR"] == 0 and elapsed < 60.0
    assert _report(
        2, ok,
        f"default grid sweep: {counts['total']} points, {counts['FAIL']} fail, "
        f"{counts['INDET']} indeterminate ({elapsed:.1f}s)")
    assert counts["FAIL"] == 0 and counts["ERROR"] == 0
    assert elapsed < 60.0


def test_criterion_3_sharpness_probes():
    ok = True
    for n in range(1, 7):
        res = sharpness_probe("ALZER", "zero", CTX, {"n": n})
        ok &= abs(res.limit - Fraction(n + 1, n + 2)) < mpf("1e-6")
    rev = sharpness_probe("REVERSE_43", "inf", CTX, {"n": 2})
    at_1e4 = rev.samples[-1][1]
    ok &= abs(at_1e4 - 1) < mpf("1e-3") and abs(rev.limit - 1) < mpf("1e-3")
    cheb = sharpness_probe("CHEBYSHEV_GEN", "zero", CTX,
                           {"p": mpf("0.5"), "a": 1, "beta": 2})
    target = chebyshev_constant(mpf("0.5"), 1, 2, CTX)
    ok &= abs(cheb.limit - target) < mpf("1e-6")
    assert _report(3, ok, "ratio limits: product constant (x->0), reverse bound (x->oo), "
                          "Chebyshev constant (x->0)")
    assert ok


def test_criterion_4_sandwich_reproduction():
    xs = log_grid("1e-3", "50", 200, CTX)
    worst = None
    ok = True
    for n in range(1, 9):
        for x in xs:
            r = evaluate_check("SANDWICH_49", CTX, {"n": n, "x": x})
            ok &= r.status == "PASS"
            if worst is None or r.margin - r.err_bound < worst:
                worst = r.margin - r.err_bound
    assert _report(4, ok, f"two-sided enclosure strict on 8 x 200 grid "
                          f"(worst margin-over-bound {mp.nstr(worst, 3)})")
    assert ok


def test_criterion_5_multi_path_agreement():
    ok = True
    worst_int = mpf(0)
    for n in range(0, 11):
        for x in ("0.1", "1", "3", "10", "30"):
            d = cross_check(RemainderSpec(RemainderKind.INTEGER_TAIL, n=n), mpf(x), CTX)
            worst_int = max(worst_int, d)
    ok &= worst_int <= mpf("1e-25")
    worst_frac = mpf(0)
    for a in ("-0.5", "0.5", "1.5", "3.7"):
        for x in ("0.1", "1", "10", "30"):
            d = cross_check(RemainderSpec(RemainderKind.FRACTIONAL, a=mpf(a)), mpf(x), CTX)
            worst_frac = max(worst_frac, d)
    worst_obr = mpf(0)
    for n, m in ((0, 1), (1, 1), (2, 1), (2, 2), (3, 2)):
        for x in ("0.5", "2", "10", "30"):
            d = cross_check(RemainderSpec(RemainderKind.OBRESHKOV, n=n, m=m), mpf(x), CTX)
            worst_obr = max(worst_obr, d)
    ok &= worst_frac <= mpf("1e-20") and worst_obr <= mpf("1e-20")
    assert _report(5, ok, f"route agreement: integer {mp.nstr(worst_int, 3)}, "
                          f"fractional {mp.nstr(worst_frac, 3)}, "
                          f"two-parameter {mp.nstr(worst_obr, 3)}")
    assert worst_int <= mpf("1e-25")
    assert worst_frac <= mpf("1e-20")
    assert worst_obr <= mpf("1e-20")


def test_criterion_6_structural_identities():
    ok = True
    for a in ("-0.9", "-0.5", "0", "0.5", "1.7", "3", "8"):
        for x in ("0.1", "1", "5", "20"):
            a_, x_ = mpf(a), mpf(x)
            lhs = r_frac(a_, x_, CTX)
            rhs = x_ ** (a_ + 1) / gamma_fn(a_ + 2, CTX) + r_frac(a_ + 1, x_, CTX)
            ok &= rel_err(lhs, rhs) < 10 * CTX.target_rel_err
    for nu, x in ((mpf("3.5"), mpf(2)), (mpf("5.2"), mpf("0.7"))):
        target = r_frac(nu - 1, x, CTX)
        errs = []
        h = mpf(1) / 64
        for _ in range(3):
            approx = (r_frac(nu, x + h, CTX) - r_frac(nu, x - h, CTX)) / (2 * h)
            errs.append(abs(approx - target))
            h /= 2
        ok &= 3.5 < errs[0] / errs[1] < 4.5 and 3.5 < errs[1] / errs[2] < 4.5
    assert _report(6, ok, "ladder identity and order-2 convergence of the "
                          "derivative property")
    assert ok


def test_criterion_7_pade_suite():
    ok = all(
        all(d == 0 for d in order_condition_defect(pade_exp(n, m)))
        for n in range(11) for m in range(11 - n)
    )
    for n in range(1, 7):
        appr = pade_exp(n, 1)
        for x in ("0.3", "1", "2.7"):
            x_ = mpf(x)
            ok &= rel_err(aitken_row(n, x_, CTX), eval_approximant(appr, x_, CTX)) < mpf("1e-25")
    for n in range(0, 7):
        appr = pade_exp(n, 1)
        lo = mpf(n + 1) / 2
        hi = mpf(3) * (n + 1) / 2
        with mp.workprec(320):
            ok &= eval_approximant(appr, lo, CTX) > mp.exp(lo)
            ok &= eval_approximant(appr, hi, CTX) < mp.exp(hi)
    assert _report(7, ok, "order condition (n+m <= 10), Aitken row identity, "
                          "direction switch at x = n+1")
    assert ok


def test_criterion_8_rk_identity():
    worst = mpf(0)
    for lam_h in ("-2", "-0.5", "0.1", "1", "2"):
        report = rk_error_demo(lam_h, 1, 1, CTX)
        worst = max(worst, report.diagnostics["relative_agreement"])
    ok = worst < mpf("1e-10")
    assert _report(8, ok, f"one-step error equals the order-4 remainder "
                          f"(worst relative deviation {mp.nstr(worst, 3)})")
    assert ok


def test_criterion_9_byte_determinism(tmp_path):
    f1, f2 = tmp_path / "run1.json", tmp_path / "run2.json"
    assert main(["check", "--id", "all", "--out", str(f1)]) == 0
    assert main(["check", "--id", "all", "--out", str(f2)]) == 0
    b1, b2 = f1.read_bytes(), f2.read_bytes()
    ok = b1 == b2 and json.loads(b1)["summary"]["FAIL"] == 0
    assert _report(9, ok, f"two consecutive default sweeps byte-identical "
                          f"({len(b1)} bytes)")
    assert ok
