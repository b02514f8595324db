"""Rational approximants of exp: exact coefficients, the order condition,
the Aitken link to the first row, and the direction switch at x = n+1."""

from fractions import Fraction

import pytest
from mpmath import mp, mpf

from conftest import rel_err
from exptail.errors import DegeneratePointError, DomainError, PoleError
from exptail.pade import (RationalApproximant, aitken_row, cesaro_identity_probe, cesaro_mean,
                          delta_fn, denominator_roots, eval_approximant, order_condition_defect,
                          pade_exp, taylor_partial)


def test_low_order_coefficients():
    a = pade_exp(0, 1)
    assert a.num == (Fraction(1),)
    assert a.den == (Fraction(1), Fraction(-1))  # 1/(1-x)

    a = pade_exp(1, 1)
    assert a.num == (Fraction(1), Fraction(1, 2))  # (2+x)/(2-x) normalised
    assert a.den == (Fraction(1), Fraction(-1, 2))

    a = pade_exp(2, 1)
    assert a.num == (Fraction(1), Fraction(2, 3), Fraction(1, 6))  # (x**2+4x+6)/(6-2x)
    assert a.den == (Fraction(1), Fraction(-1, 3))


def test_normalisation_enforced():
    with pytest.raises(DomainError):
        RationalApproximant((Fraction(1),), (Fraction(2),), 0, 0)


def test_order_condition_symbolic():
    for n in range(11):
        for m in range(11 - n):
            defects = order_condition_defect(pade_exp(n, m))
            assert all(d == 0 for d in defects)


def test_eval_values(ctx):
    assert eval_approximant(pade_exp(1, 1), 1, ctx) == 3
    assert eval_approximant(pade_exp(1, 1), 0, ctx) == 1
    assert eval_approximant(pade_exp(0, 1), mpf("0.5"), ctx) == 2


def test_pole_guard(ctx):
    with pytest.raises(PoleError) as err:
        eval_approximant(pade_exp(1, 1), 2, ctx)
    assert err.value.root == 2
    with pytest.raises(PoleError):
        eval_approximant(pade_exp(0, 1), 1, ctx)


def test_denominator_roots(ctx):
    roots = denominator_roots(pade_exp(2, 1), 0, 10, ctx)
    assert len(roots) == 1
    assert rel_err(roots[0], 3) < mpf("1e-60")
    assert denominator_roots(pade_exp(2, 0), 0, 10, ctx) == []


def test_taylor_partial(ctx):
    assert taylor_partial(0, mpf("7.3"), ctx) == 1
    assert rel_err(taylor_partial(2, 1, ctx), mpf("2.5")) == 0
    with pytest.raises(DomainError):
        taylor_partial(-1, 1, ctx)


def test_aitken_equals_first_row(ctx):
    for n in range(1, 7):
        appr = pade_exp(n, 1)
        for x in (mpf("0.3"), mpf(1), mpf("2.7")):
            if abs(x - (n + 1)) < mpf("1e-6"):
                continue
            lhs = aitken_row(n, x, ctx)
            rhs = eval_approximant(appr, x, ctx)
            assert rel_err(lhs, rhs) < mpf("1e-25")


def test_aitken_closed_form_n1(ctx):
    # for n = 1 the transform simplifies to (2+x)/(2-x)
    for x in (mpf("0.5"), mpf(1), mpf("1.9")):
        assert rel_err(aitken_row(1, x, ctx), (2 + x) / (2 - x)) < mpf("1e-30")
    assert aitken_row(1, 1, ctx) == 3


def test_aitken_degenerate_points(ctx):
    with pytest.raises(DegeneratePointError):
        aitken_row(2, 3, ctx)
    with pytest.raises(DegeneratePointError):
        aitken_row(2, 0, ctx)


def test_aitken_near_zero_limit(ctx):
    assert abs(aitken_row(3, mpf("1e-8"), ctx) - 1) < mpf("1e-7")


def test_delta_fn():
    assert delta_fn(0, 1) == 0
    assert delta_fn(3, 1) == -3
    assert delta_fn(2, mpf("4.5")) == mpf("1.5")


def test_delta_sign_matches_inequality_direction(ctx):
    # below the switch the approximant dominates exp, above it is dominated
    for n in range(0, 7):
        appr = pade_exp(n, 1)
        lo = mpf(n + 1) / 2
        hi = mpf(3) * (n + 1) / 2
        assert delta_fn(n, lo) < 0
        assert eval_approximant(appr, lo, ctx) > mp.exp(lo)
        assert delta_fn(n, hi) > 0
        assert eval_approximant(appr, hi, ctx) < mp.exp(hi)


def test_cesaro_values(ctx):
    assert cesaro_mean(0, mpf(5), ctx) == 1
    assert rel_err(cesaro_mean(1, 1, ctx), mpf("1.5")) == 0


def test_cesaro_identity_probe(ctx):
    # the classical reading closes the identity with the two-parameter
    # remainder; the reading with x inside the bracket fails badly
    for n, x in [(2, mpf(2)), (1, mpf(2)), (4, mpf("0.5"))]:
        probe = cesaro_identity_probe(n, x, ctx)
        assert probe["closes_identity"] == "classical"
        assert probe["classical_residual"] < mpf("1e-60")
        assert probe["alternative_residual"] > mpf("1e-3")
    reported = cesaro_identity_probe(2, 1, ctx)
    assert {"classical_residual", "alternative_residual", "closes_identity"} <= set(reported)
