"""Extended-precision scalar special functions and a quadrature oracle.

The three series routines (gamma, lower incomplete gamma, Kummer 1F1 with
unit numerator parameter) are the workhorses behind every remainder
evaluation; all of them sum series whose terms are positive for
nonnegative argument, so no cancellation occurs and the truncation rule
"stop once the term is below target_rel_err times the partial sum and the
terms are decreasing" yields the requested relative accuracy directly.

``quad_integral`` is deliberately an independent second route: adaptive
bisection with a fixed-order Gauss-Legendre rule per panel.  An algebraic
endpoint factor (hi - t)**e with e > -1 is absorbed by the power
substitution t = hi - u**p (p chosen so the transformed integrand is
analytic, or at least bounded, at u = 0).  It only ever serves as an
oracle for the series paths, never the other way around.
"""

from __future__ import annotations

import heapq
import math
from typing import Callable, NamedTuple

from mpmath import mp, mpf

from .errors import DomainError, NumericalError
from .precision import GUARD_BITS, PrecisionContext, Real, as_real

# Hard cap on adaptive panels before quad_integral gives up.
DEFAULT_PANEL_BUDGET = 4000


def _series_budget(x_float: float, bits: int) -> int:
    """A-priori term-count bound from the ratio test: generous, never hit
    in practice, but turns a would-be hang into a diagnosable failure."""
    return int(3.0 * abs(x_float)) + 8 * bits + 256


def gamma_fn(v, ctx: PrecisionContext) -> Real:
    """Gamma function for v > 0, exact factorial path at positive integers."""
    with ctx.work():
        v = as_real(v, ctx)
        if not mp.isfinite(v) or v <= 0:
            raise DomainError(f"gamma_fn requires finite v > 0, got {v}")
        if v == int(v):
            result = mpf(math.factorial(int(v) - 1))
        else:
            result = mp.gamma(v)
    return ctx.finalize(result)


def lower_incomplete_gamma(v, x, ctx: PrecisionContext) -> Real:
    """gamma(v, x) = integral of t**(v-1) e**-t over (0, x).

    Evaluated through the all-positive series
    gamma(v,x) = x**v e**-x * sum_k x**k / (v (v+1) ... (v+k)).
    """
    with ctx.work():
        v = as_real(v, ctx)
        x = as_real(x, ctx)
        if v <= 0:
            raise DomainError(f"lower_incomplete_gamma requires v > 0, got v={v}")
        if x < 0:
            raise DomainError(f"lower_incomplete_gamma requires x >= 0, got x={x}")
        if x == 0:
            return ctx.finalize(0)
        term = 1 / v
        total = term
        budget = _series_budget(float(x), ctx.bits)
        for k in range(1, budget):
            term *= x / (v + k)
            total += term
            if term < ctx.target_rel_err * total and x < v + k + 1:
                break
        else:
            raise NumericalError(
                f"incomplete gamma series did not converge for v={v}, x={x}",
                best_estimate=ctx.finalize(x**v * mp.exp(-x) * total),
            )
        result = x**v * mp.exp(-x) * total
    return ctx.finalize(result)


def kummer_1f1_one(b, x, ctx: PrecisionContext) -> Real:
    """1F1(1; b; x) = sum_k x**k / (b)_k with (b)_k the rising factorial.

    All terms are positive for x >= 0.  For x < 0 the partial sums cancel
    down to roughly e**x times their peak, so the working precision is
    boosted by |x|*log2(e) bits to keep the requested relative accuracy.
    """
    boost = int(abs(float(x)) * 1.4427) + 16 if x < 0 else 0
    with ctx.work(boost):
        b = as_real(b, ctx)
        xw = +mpf(x)
        if b <= 0:
            raise DomainError(f"kummer_1f1_one requires b > 0, got b={b}")
        if xw == 0:
            return ctx.finalize(1)
        term = mpf(1)
        total = term
        budget = _series_budget(float(xw), ctx.bits)
        for k in range(1, budget):
            term *= xw / (b + k - 1)
            total += term
            if abs(term) < ctx.target_rel_err * abs(total) and abs(xw) < b + k:
                break
        else:
            raise NumericalError(
                f"Kummer series did not converge for b={b}, x={xw}",
                best_estimate=ctx.finalize(total),
            )
    return ctx.finalize(total)


class QuadResult(NamedTuple):
    value: Real
    error: Real


def _gauss_legendre_nodes(n: int, prec: int) -> list[tuple[mpf, mpf]]:
    """Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1],
    computed by Newton iteration on the Legendre recurrence."""
    with mp.workprec(prec + 32):
        pairs = []
        tol = mpf(2) ** (-prec - 8)
        for i in range(1, n // 2 + 2):
            x = mp.cos(mp.pi * (i - mpf(1) / 4) / (n + mpf(1) / 2))
            if x <= 0:
                break
            for _ in range(200):
                p0, p1 = mpf(1), x
                for k in range(2, n + 1):
                    p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
                dp = n * (x * p1 - p0) / (x * x - 1)
                dx = p1 / dp
                x -= dx
                if abs(dx) < tol:
                    break
            p0, p1 = mpf(1), x
            for k in range(2, n + 1):
                p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
            dp = n * (x * p1 - p0) / (x * x - 1)
            w = 2 / ((1 - x * x) * dp * dp)
            pairs.append((x, w))
        nodes = [(-x, w) for x, w in pairs]
        if n % 2 == 1:
            x = mpf(0)
            p0, p1 = mpf(1), x
            for k in range(2, n + 1):
                p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
            dp = n * (x * p1 - p0) / (x * x - 1)
            nodes.append((x, 2 / (dp * dp)))
        nodes.extend((x, w) for x, w in reversed(pairs))
        return nodes


_NODE_CACHE: dict[tuple[int, int], list[tuple[mpf, mpf]]] = {}


def _nodes(n: int, prec: int) -> list[tuple[mpf, mpf]]:
    key = (n, prec)
    if key not in _NODE_CACHE:
        _NODE_CACHE[key] = _gauss_legendre_nodes(n, prec)
    return _NODE_CACHE[key]


def _panel(f, a: mpf, b: mpf, rule: list[tuple[mpf, mpf]]) -> mpf:
    mid = (a + b) / 2
    half = (b - a) / 2
    total = mpf(0)
    for x, w in rule:
        total += w * f(mid + half * x)
    return total * half


def _substitution_power(e) -> int | mpf | None:
    """Integer p with p*(e+1)-1 a nonnegative integer, if one exists.

    With t = hi - u**p the factor (hi-t)**e together with the Jacobian
    becomes p * u**(p*(e+1)-1) * smooth(u**p), analytic at u = 0 whenever
    p*e is an integer.  For non-rational e in (-1, 0) the real power
    p = 1/(1+e) at least makes the transformed integrand bounded.
    """
    ef = float(e)
    if ef == int(ef) and ef >= 0:
        return None
    for s in range(2, 25):
        if abs(ef * s - round(ef * s)) < 1e-9:
            return s
    if -1 < ef < 0:
        return 1 / (1 + mpf(e))
    return None


def quad_integral(
    integrand: Callable[[mpf], mpf],
    lo,
    hi,
    endpoint_exponent=0,
    ctx: PrecisionContext = None,
    panel_budget: int = DEFAULT_PANEL_BUDGET,
) -> QuadResult:
    """Adaptive Gauss-Legendre integral of ``integrand`` over (lo, hi).

    The integrand must be smooth on the open interval apart from an
    algebraic factor (hi - t)**endpoint_exponent, endpoint_exponent > -1,
    which is absorbed by a power substitution before panels are laid down.
    Returns the value together with an error estimate; raises
    :class:`NumericalError` carrying the best estimate if the panel budget
    is exhausted before the target is met.
    """
    if ctx is None:
        ctx = PrecisionContext()
    e = float(endpoint_exponent)
    if not e > -1:
        raise DomainError(f"endpoint_exponent must exceed -1, got {endpoint_exponent}")
    with ctx.work():
        a = as_real(lo, ctx)
        b = as_real(hi, ctx)
        if not a < b:
            raise DomainError(f"quad_integral requires lo < hi, got [{a}, {b}]")

        p = _substitution_power(endpoint_exponent)
        if p is None:
            f, ta, tb = integrand, a, b
        else:
            width = b - a

            def f(u, _g=integrand, _hi=b, _p=p):
                return _g(_hi - u**_p) * _p * u ** (_p - 1)

            ta, tb = mpf(0), width ** (1 / mpf(p))

        n_nodes = max(32, ctx.bits // 4)
        rule = _nodes(n_nodes, ctx.bits + GUARD_BITS)
        rough = _nodes(n_nodes // 2, ctx.bits + GUARD_BITS)
        tol = 5 * ctx.target_rel_err

        def estimate(pa, pb):
            fine = _panel(f, pa, pb, rule)
            coarse = _panel(f, pa, pb, rough)
            return fine, abs(fine - coarse)

        val, err = estimate(ta, tb)
        heap = [(-err, 0, ta, tb, val, err)]
        seq = 0
        total_val, total_err = val, err
        panels = 1
        while total_err > tol * abs(total_val) and total_err > mpf(2) ** (-(ctx.bits + 8)):
            if panels >= panel_budget:
                raise NumericalError(
                    f"quadrature did not converge within {panel_budget} panels "
                    f"(estimate {mp.nstr(total_val, 17)}, error {mp.nstr(total_err, 5)})",
                    best_estimate=ctx.finalize(total_val),
                    error_estimate=ctx.finalize(total_err),
                )
            neg_err, _, pa, pb, pval, perr = heapq.heappop(heap)
            pm = (pa + pb) / 2
            lval, lerr = estimate(pa, pm)
            rval, rerr = estimate(pm, pb)
            total_val += lval + rval - pval
            total_err += lerr + rerr - perr
            seq += 1
            heapq.heappush(heap, (-lerr, seq, pa, pm, lval, lerr))
            seq += 1
            heapq.heappush(heap, (-rerr, seq, pm, pb, rval, rerr))
            panels += 1
        return QuadResult(ctx.finalize(total_val), ctx.finalize(total_err))
