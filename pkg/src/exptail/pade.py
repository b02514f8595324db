"""Exact-rational Pade approximants of exp, Taylor partial sums, the
Aitken transformation, and Cesaro means.

Coefficients are kept as ``fractions.Fraction`` so the order condition
(num/den matches exp through degree n+m) can be checked symbolically and
the sharp direction switch of the first-row inequalities can be probed
arbitrarily close to the crossover without floating noise.  Conversion to
floating values happens only inside :func:`eval_approximant`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf

from .errors import DegeneratePointError, DomainError, PoleError
from .precision import PrecisionContext, Real, as_real


@dataclass(frozen=True)
class RationalApproximant:
    """num/den with exact rational coefficients in ascending powers;
    den normalised so den[0] == 1."""

    num: tuple[Fraction, ...]
    den: tuple[Fraction, ...]
    n: int
    m: int

    def __post_init__(self):
        if self.den[0] != 1:
            raise DomainError("denominator must be normalised to den[0] == 1")
        if len(self.num) != self.n + 1 or len(self.den) != self.m + 1:
            raise DomainError("coefficient lists must match the declared degrees")


def pade_exp(n: int, m: int) -> RationalApproximant:
    """[n/m] Pade approximant of exp with exact rational coefficients:
    p_j = n! (n+m-j)! / ((n+m)! j! (n-j)!),
    q_j = (-1)**j m! (n+m-j)! / ((n+m)! j! (m-j)!),  q_0 = 1.
    """
    if n < 0 or m < 0:
        raise DomainError(f"pade_exp requires n, m >= 0, got n={n}, m={m}")
    nf, mf, nmf = math.factorial(n), math.factorial(m), math.factorial(n + m)
    num = tuple(
        Fraction(nf * math.factorial(n + m - j), nmf * math.factorial(j) * math.factorial(n - j))
        for j in range(n + 1)
    )
    den = tuple(
        Fraction((-1) ** j * mf * math.factorial(n + m - j),
                 nmf * math.factorial(j) * math.factorial(m - j))
        for j in range(m + 1)
    )
    return RationalApproximant(num, den, n, m)


def order_condition_defect(appr: RationalApproximant) -> list[Fraction]:
    """Taylor coefficients of num(x) - den(x)*exp(x) up to degree n+m,
    computed exactly; all must vanish for a true Pade approximant."""
    defects = []
    for order in range(appr.n + appr.m + 1):
        c = appr.num[order] if order <= appr.n else Fraction(0)
        c -= sum(
            appr.den[j] * Fraction(1, math.factorial(order - j))
            for j in range(min(order, appr.m) + 1)
        )
        defects.append(c)
    return defects


def _poly_eval(coeffs, x):
    total = mpf(0)
    for c in reversed(coeffs):
        total = total * x + mpf(c.numerator) / c.denominator
    return total


def denominator_roots(appr: RationalApproximant, lo, hi, ctx: PrecisionContext) -> list[Real]:
    """Real roots of the denominator inside [lo, hi], located by sign-change
    scanning followed by bisection at context precision."""
    with ctx.work():
        a, b = as_real(lo, ctx), as_real(hi, ctx)
        if appr.m == 0 or a >= b:
            return []
        steps = 64 * (appr.m + 1)
        xs = [a + (b - a) * i / steps for i in range(steps + 1)]
        fs = [_poly_eval(appr.den, x) for x in xs]
        roots = []
        tol = mpf(2) ** (-(ctx.bits + 8))
        for i in range(steps):
            f0, f1 = fs[i], fs[i + 1]
            if f0 == 0:
                roots.append(xs[i])
                continue
            if f0 * f1 < 0:
                ra, rb = xs[i], xs[i + 1]
                fa = f0
                while rb - ra > tol * max(1, abs(ra)):
                    mid = (ra + rb) / 2
                    fm = _poly_eval(appr.den, mid)
                    if fm == 0:
                        ra = rb = mid
                        break
                    if fa * fm < 0:
                        rb = mid
                    else:
                        ra, fa = mid, fm
                roots.append((ra + rb) / 2)
        if fs[-1] == 0:
            roots.append(xs[-1])
        return [ctx.finalize(r) for r in roots]


def eval_approximant(appr: RationalApproximant, x, ctx: PrecisionContext) -> Real:
    """num(x)/den(x) at context precision, refusing points within
    10*target_rel_err relative distance of a real denominator root."""
    with ctx.work():
        xw = as_real(x, ctx)
        den = _poly_eval(appr.den, xw)
        scale = sum(abs(mpf(c.numerator) / c.denominator) * abs(xw) ** j
                    for j, c in enumerate(appr.den))
        if abs(den) <= 100 * ctx.target_rel_err * scale:
            window = max(abs(xw), mpf(1))
            roots = denominator_roots(appr, xw - window, xw + window, ctx)
            near = min(roots, key=lambda r: abs(r - xw)) if roots else xw
            raise PoleError(
                f"evaluation at x={mp.nstr(xw, 17)} is too close to the denominator root "
                f"near {mp.nstr(near, 17)}", root=near)
        result = _poly_eval(appr.num, xw) / den
    return ctx.finalize(result)


def taylor_partial(n: int, x, ctx: PrecisionContext) -> Real:
    """Degree-n partial sum of the exponential series."""
    if n < 0:
        raise DomainError(f"taylor_partial requires n >= 0, got {n}")
    with ctx.work():
        xw = as_real(x, ctx)
        term = mpf(1)
        total = term
        for k in range(1, n + 1):
            term *= xw / k
            total += term
    return ctx.finalize(total)


def _aitken_boost(n: int, x: float) -> int:
    """The Aitken numerator cancels t_n**2 ~ e**(2x) down to roughly
    x**(2n+1)/(n!(n+1)!); compensate with that many bits."""
    ax = abs(x)
    if ax == 0:
        return 64
    lost = 2 * ax * 1.4427 + (math.lgamma(n + 1) + math.lgamma(n + 2)) / math.log(2) \
        - (2 * n + 1) * math.log2(ax)
    return max(0, int(lost)) + 64


def aitken_row(n: int, x, ctx: PrecisionContext) -> Real:
    """Aitken transform (t_{n-1} t_{n+1} - t_n**2)/(t_{n+1} + t_{n-1} - 2 t_n)
    of the Taylor partial sums; coincides with the [n/1] Pade row away from
    the degenerate points x = 0 and x = n+1 where the denominator vanishes.
    """
    if n < 1:
        raise DomainError(f"aitken_row requires n >= 1, got {n}")
    with ctx.work():
        xw = as_real(x, ctx)
        guard = 10 * ctx.target_rel_err
        if abs(xw) <= guard or abs(xw - (n + 1)) <= guard * (n + 1):
            raise DegeneratePointError(
                f"Aitken denominator vanishes at x=0 and x={n + 1}; got x={mp.nstr(xw, 17)}")
    with ctx.work(_aitken_boost(n, float(xw))):
        xw = +xw
        t_prev = taylor_partial(n - 1, xw, ctx)
        t_mid = t_prev + xw**n / mpf(math.factorial(n))
        t_next = t_mid + xw ** (n + 1) / mpf(math.factorial(n + 1))
        den = t_next + t_prev - 2 * t_mid
        result = (t_prev * t_next - t_mid * t_mid) / den
    return ctx.finalize(result)


def delta_fn(n: int, x) -> Real:
    """Direction switch of the first-row inequalities for exp: x - (n+1).
    Negative means the approximant lies above exp, positive below."""
    if n < 0:
        raise DomainError(f"delta_fn requires n >= 0, got {n}")
    return mpf(x) - (n + 1)


def cesaro_mean(n: int, x, ctx: PrecisionContext) -> Real:
    """First-order Cesaro mean of the exponential partial sums:
    sum_{j=0}^n (1 - j/(n+1)) x**j/j!.

    This is the classical reading; see :func:`cesaro_identity_probe` for
    the numerical comparison against the alternative reading with the
    factor (1 - j*x/(n+1)).
    """
    if n < 0:
        raise DomainError(f"cesaro_mean requires n >= 0, got {n}")
    with ctx.work():
        xw = as_real(x, ctx)
        pow_term = mpf(1)
        total = mpf(0)
        for j in range(n + 1):
            total += (1 - mpf(j) / (n + 1)) * pow_term
            pow_term *= xw / (j + 1)
    return ctx.finalize(total)


def cesaro_identity_probe(n: int, x, ctx: PrecisionContext) -> dict:
    """Residuals of (1 - x/(n+1)) e**x - mean against R_{n,1}(x) for both
    textual readings of the mean; reports which one closes the identity."""
    from .remainders import r_obreshkov

    with ctx.work():
        xw = as_real(x, ctx)
        target = r_obreshkov(n, 1, xw, ctx)
        front = (1 - xw / (n + 1)) * mp.exp(xw)
        classical = front - cesaro_mean(n, xw, ctx)

        pow_term = mpf(1)
        alt_sum = mpf(0)
        for j in range(n + 1):
            alt_sum += (1 - mpf(j) * xw / (n + 1)) * pow_term
            pow_term *= xw / (j + 1)
        alternative = front - alt_sum

        scale = max(abs(target), abs(classical), abs(alternative), mpf(1))
        res_classical = abs(classical - target) / scale
        res_alternative = abs(alternative - target) / scale
    return {
        "classical_residual": ctx.finalize(res_classical),
        "alternative_residual": ctx.finalize(res_alternative),
        "closes_identity": "classical" if res_classical <= res_alternative else "alternative",
    }
