"""Exponential Taylor remainders in all four flavours, each with at least
two independent evaluation routes.

The integer remainder R_n(x) = e**x - sum_{k<=n} x**k/k! is summed as the
tail series directly (all positive terms, no cancellation), never as the
subtraction, which loses ~x*log2(e) bits.  The fractional extension R_a
for real a > -1 goes through the Kummer series x**(a+1)/Gamma(a+2) *
1F1(1; a+2; x).  The negative-argument magnitude |R_n(-x)| and the
two-parameter remainder R_{n,m} are summed through termwise integration
of their positive integral kernels, which again yields all-positive
series; the quadrature forms survive only inside :func:`cross_check` as
oracles (together with the subtraction forms at boosted precision).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from mpmath import mp, mpf

from .errors import DomainError, NumericalError, UsageError
from .numerics import _series_budget, kummer_1f1_one, quad_integral
from .precision import PrecisionContext, Real, as_real


class RemainderKind(enum.Enum):
    INTEGER_TAIL = "integer_tail"
    FRACTIONAL = "fractional"
    NEGATIVE_ARGUMENT = "negative_argument"
    OBRESHKOV = "obreshkov"


@dataclass(frozen=True)
class RemainderSpec:
    """Which remainder variant to evaluate, with its order parameters."""

    kind: RemainderKind
    n: int | None = None
    a: float | Real | None = None
    m: int | None = None

    def __post_init__(self):
        k = self.kind
        if k in (RemainderKind.INTEGER_TAIL, RemainderKind.NEGATIVE_ARGUMENT):
            if self.n is None or self.n < 0 or self.a is not None or self.m is not None:
                raise UsageError(f"{k.value} spec needs only n >= 0, got {self}")
        elif k is RemainderKind.FRACTIONAL:
            if self.a is None or not mpf(self.a) > -1 or self.n is not None or self.m is not None:
                raise UsageError(f"fractional spec needs only a > -1, got {self}")
        elif k is RemainderKind.OBRESHKOV:
            if self.n is None or self.n < 0 or self.m is None or self.m < 0 or self.a is not None:
                raise UsageError(f"obreshkov spec needs n >= 0 and m >= 0, got {self}")


@dataclass(frozen=True)
class DiffTable:
    """Finite differences of a sequence indexed by order."""

    values: tuple
    k: int


def _check_nonneg_x(x, ctx):
    xw = as_real(x, ctx)
    if xw < 0:
        raise DomainError(f"remainder argument must be >= 0, got {xw}")
    return xw


def r_tail(n: int, x, ctx: PrecisionContext) -> Real:
    """Tail sum_{k>n} x**k/k! of the exponential series, x >= 0."""
    if n < 0:
        raise DomainError(f"r_tail requires n >= 0, got {n}")
    with ctx.work():
        xw = _check_nonneg_x(x, ctx)
        if xw == 0:
            return ctx.finalize(0)
        term = xw ** (n + 1) / mpf(math.factorial(n + 1))
        total = term
        budget = _series_budget(float(xw), ctx.bits)
        for k in range(n + 2, n + 2 + budget):
            term *= xw / k
            total += term
            if term < ctx.target_rel_err * total and xw < k + 1:
                break
        else:
            raise NumericalError(
                f"tail series did not converge for n={n}, x={xw}",
                best_estimate=ctx.finalize(total),
            )
    return ctx.finalize(total)


def r_frac(a, x, ctx: PrecisionContext) -> Real:
    """Fractional-order remainder R_a(x), real a > -1, via the Kummer series
    x**(a+1)/Gamma(a+2) * 1F1(1; a+2; x)."""
    with ctx.work():
        aw = as_real(a, ctx)
        if not aw > -1:
            raise DomainError(f"r_frac requires a > -1, got {aw}")
        xw = _check_nonneg_x(x, ctx)
        if xw == 0:
            return ctx.finalize(0)
        f11 = kummer_1f1_one(aw + 2, xw, ctx)
        result = xw ** (aw + 1) / mp.gamma(aw + 2) * f11
    return ctx.finalize(result)


def neg_remainder_sign(n: int) -> int:
    """Sign of R_n(-x) for x > 0: the first omitted term dominates."""
    return -1 if n % 2 == 0 else 1


def r_neg(n: int, x, ctx: PrecisionContext) -> Real:
    """Magnitude |R_n(-x)| for x >= 0 (use :func:`neg_remainder_sign` for
    the sign).

    Termwise integration of the positive kernel (x-t)**n e**-t gives
    |R_n(-x)| = e**-x x**(n+1)/n! * sum_k x**k/(k! (n+1+k)), all terms
    positive, so no precision boost is needed.
    """
    if n < 0:
        raise DomainError(f"r_neg requires n >= 0, got {n}")
    with ctx.work():
        xw = _check_nonneg_x(x, ctx)
        if xw == 0:
            return ctx.finalize(0)
        term = mpf(1) / (n + 1)
        total = term
        budget = _series_budget(float(xw), ctx.bits)
        for k in range(1, budget):
            term *= xw * (n + k) / (k * (n + 1 + k))
            total += term
            if term < ctx.target_rel_err * total and xw < k + 1:
                break
        else:
            raise NumericalError(f"negative-argument series did not converge for n={n}, x={xw}")
        result = mp.exp(-xw) * xw ** (n + 1) / mpf(math.factorial(n)) * total
    return ctx.finalize(result)


def r_obreshkov(n: int, m: int, x, ctx: PrecisionContext) -> Real:
    """Two-parameter remainder R_{n,m}(x), signed: its sign is (-1)**m.

    Summed through the termwise Beta-integral expansion of the kernel
    (x-t)**n t**m e**t (validated against quadrature in the test suite):
    (-1)**m n!/(n+m)! sum_k (m+k)!/(k! (n+m+k+1)!) x**(n+m+k+1).
    R_{n,0} coincides with the plain tail.
    """
    if n < 0 or m < 0:
        raise DomainError(f"r_obreshkov requires n, m >= 0, got n={n}, m={m}")
    with ctx.work():
        xw = _check_nonneg_x(x, ctx)
        if xw == 0:
            return ctx.finalize(0)
        term = xw ** (n + m + 1) * mpf(math.factorial(m)) / mpf(math.factorial(n + m + 1))
        total = term
        budget = _series_budget(float(xw), ctx.bits)
        for k in range(1, budget):
            term *= xw * (m + k) / (k * (n + m + k + 1))
            total += term
            if term < ctx.target_rel_err * total and xw < k + 1:
                break
        else:
            raise NumericalError(f"obreshkov series did not converge for n={n}, m={m}, x={xw}")
        sign = -1 if m % 2 else 1
        result = sign * mpf(math.factorial(n)) / mpf(math.factorial(n + m)) * total
    return ctx.finalize(result)


def q_value(n: int, x, ctx: PrecisionContext) -> Real:
    """Mean-value exponent Q_n(x) in R_n(x) = x**(n+1)/(n+1)! e**(x Q_n(x)).

    Strictly inside (0, 1) for x > 0; x = 0 is refused (the limit
    1/(n+2) exists but is excluded).
    """
    if n < 1:
        raise DomainError(f"q_value requires n >= 1, got {n}")
    with ctx.work():
        xw = as_real(x, ctx)
        if not xw > 0:
            raise DomainError(f"q_value requires x > 0, got {xw}")
        result = mp.log(kummer_1f1_one(n + 2, xw, ctx)) / xw
    return ctx.finalize(result)


def b_value(nu, x, ctx: PrecisionContext) -> Real:
    """Normalised remainder Gamma(nu+2) * R_nu(x); log-convex in nu."""
    from .numerics import gamma_fn

    with ctx.work():
        result = gamma_fn(mpf(nu) + 2, ctx) * r_frac(nu, x, ctx)
    return ctx.finalize(result)


def eps_value(nu, x, ctx: PrecisionContext) -> Real:
    """Ratio defect R_nu/R_{nu+1} - (nu+2)/x; lies in [0, 1] and increases
    from 0 (x -> 0) to 1 (x -> oo)."""
    with ctx.work():
        nuw = as_real(nu, ctx)
        xw = as_real(x, ctx)
        if not xw > 0:
            raise DomainError(f"eps_value requires x > 0, got {xw}")
        result = r_frac(nuw, xw, ctx) / r_frac(nuw + 1, xw, ctx) - (nuw + 2) / xw
    return ctx.finalize(result)


def g_ratio(n: int, x, ctx: PrecisionContext) -> Real:
    """Consecutive-order ratio R_{n-1}(x)/R_n(x); exceeds 1 for x > 0."""
    if n < 1:
        raise DomainError(f"g_ratio requires n >= 1, got {n}")
    with ctx.work():
        xw = as_real(x, ctx)
        if not xw > 0:
            raise DomainError(f"g_ratio requires x > 0, got {xw}")
        result = r_tail(n - 1, xw, ctx) / r_tail(n, xw, ctx)
    return ctx.finalize(result)


def finite_diff(values, k: int) -> DiffTable:
    """Forward differences of order k over the order index.

    Applied iteratively, so the identity (delta^k) = delta(delta^(k-1))
    holds by construction; the iterated result equals the Pascal-sign
    formula sum_j (-1)**(k-j) C(k,j) a_{i+j}.
    """
    if isinstance(values, DiffTable):
        vals = list(values.values)
    else:
        vals = list(values)
    if k < 1:
        raise UsageError(f"finite_diff requires k >= 1, got {k}")
    if len(vals) < k + 1:
        raise UsageError(f"finite_diff of order {k} needs at least {k + 1} values, got {len(vals)}")
    for _ in range(k):
        vals = [b - a for a, b in zip(vals, vals[1:])]
    return DiffTable(tuple(vals), k)


def _float_log2(x: float) -> float:
    return math.log2(x) if x > 0 else 0.0


def _subtraction_boost(n: int, x: float) -> int:
    """Extra bits needed so that e**x minus a partial sum (or an
    alternating sum peaking at e**x scale) retains full relative accuracy
    of the much smaller remainder x**(n+1)/(n+1)! it cancels down to."""
    if x <= 0:
        return 64
    log2_rem = (n + 1) * _float_log2(x) - math.lgamma(n + 2) / math.log(2)
    log2_big = max(0.0, x * 1.4427)
    return max(0, int(log2_big - log2_rem)) + 64


def cross_check(spec: RemainderSpec, x, ctx: PrecisionContext) -> Real:
    """Evaluate every applicable route for the given remainder and return
    the maximum pairwise relative deviation (0 is perfect agreement;
    anything below ~100 * target_rel_err counts as healthy)."""
    with ctx.work():
        xw = _check_nonneg_x(x, ctx)
        if xw == 0:
            return ctx.finalize(0)
        vals = []

        def run(name, fn):
            try:
                vals.append(fn())
            except NumericalError as exc:
                raise NumericalError(f"cross_check path '{name}' failed: {exc}",
                                     best_estimate=exc.best_estimate) from exc

        if spec.kind is RemainderKind.INTEGER_TAIL:
            n = spec.n
            fact = mpf(math.factorial(n))
            run("tail-series", lambda: r_tail(n, xw, ctx))
            run("kernel-quadrature", lambda: quad_integral(
                lambda t: (xw - t) ** n * mp.exp(t), 0, xw, n, ctx).value / fact)

            def rep_shifted():
                inner = quad_integral(lambda t: t ** (n + 1) * mp.exp(-xw * t), 0, 1, 0, ctx).value
                return xw ** (n + 1) / mpf(math.factorial(n + 1)) * (1 + xw * mp.exp(xw) * inner)

            run("shifted-kernel", rep_shifted)

            def subtraction():
                boost = _subtraction_boost(n, float(xw))
                with ctx.work(boost):
                    partial = sum(xw**k / mpf(math.factorial(k)) for k in range(n + 1))
                    return +(mp.exp(xw) - partial)

            run("subtraction", subtraction)

        elif spec.kind is RemainderKind.FRACTIONAL:
            a = as_real(spec.a, ctx)
            run("kummer-series", lambda: r_frac(a, xw, ctx))
            run("kernel-quadrature", lambda: quad_integral(
                lambda t: (xw - t) ** a * mp.exp(t), 0, xw, a, ctx).value / mp.gamma(a + 1))

        elif spec.kind is RemainderKind.NEGATIVE_ARGUMENT:
            n = spec.n
            fact = mpf(math.factorial(n))
            run("positive-series", lambda: r_neg(n, xw, ctx))
            run("kernel-quadrature", lambda: quad_integral(
                lambda t: (xw - t) ** n * mp.exp(-t), 0, xw, n, ctx).value / fact)

            def alternating():
                boost = _subtraction_boost(n, float(xw))
                with ctx.work(boost):
                    term = (-xw) ** (n + 1) / mpf(math.factorial(n + 1))
                    total = term
                    for k in range(n + 2, n + 2 + _series_budget(float(xw), ctx.bits)):
                        term *= -xw / k
                        total += term
                        if abs(term) < ctx.target_rel_err * abs(total) and xw < k + 1:
                            break
                    return +abs(total)

            run("alternating-tail", alternating)

        elif spec.kind is RemainderKind.OBRESHKOV:
            n, m = spec.n, spec.m
            sign = -1 if m % 2 else 1
            run("beta-series", lambda: r_obreshkov(n, m, xw, ctx))
            run("kernel-quadrature", lambda: sign * quad_integral(
                lambda t: (xw - t) ** n * t ** m * mp.exp(t), 0, xw, n, ctx).value
                / mpf(math.factorial(n + m)))

            def explicit():
                boost = _subtraction_boost(n + m, float(xw))
                with ctx.work(boost):
                    cnm = math.comb
                    front = sum((-1) ** j * mpf(cnm(m, j)) / cnm(n + m, j) * xw**j
                                / math.factorial(j) for j in range(m + 1))
                    back = sum(mpf(cnm(n, j)) / cnm(n + m, j) * xw**j / math.factorial(j)
                               for j in range(n + 1))
                    return +(front * mp.exp(xw) - back)

            run("explicit-form", explicit)

        scale = max(abs(v) for v in vals)
        if scale == 0:
            return ctx.finalize(0)
        deviation = (max(vals) - min(vals)) / scale
    return ctx.finalize(deviation)
