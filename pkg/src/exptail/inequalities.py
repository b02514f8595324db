"""Catalog of sharp-constant inequality checks over the remainder family.

Every check evaluates both sides at extended precision and reports a
signed margin with the convention (favored side) - (other side), so
"pass" always means margin > err_bound.  Margins within err_bound are
INDETERMINATE rather than pass or fail; err_bound is the first-order
rounding estimate 100 * target_rel_err * max(|lhs|, |rhs|).

Sharp constants are produced in exact rational arithmetic whenever the
parameters are integers (or rationals, for the interpolation constant
raised to the denominator power) and through the gamma function with its
exact factorial path otherwise.

The negative-argument analogues NEG_ALZER / NEG_GEN_K / NEG_SANDWICH act
on the magnitude |R_n(-x)|.  For that family the product inequality with
the (n+1)/(n+2) constant is numerically false (the ratio decreases from
(n+1)/(n+2) toward n/(n+1) instead of increasing toward 1), so the
catalog carries the constants the Cauchy-Schwarz route actually proves
for the positive kernel (x-t)**n e**-t:

    |R_{n-k}| |R_{n+k}|  >  (n!)**2 / ((n-k)! (n+k)!) * |R_n|**2,

sharp as x -> oo, together with the two-sided enclosure
n/(n+1) < |R_{n-1}||R_{n+1}|/|R_n|**2 < (n+1)/(n+2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence

from mpmath import mp, mpf

from .errors import NumericalError, PoleError, UsageError
from .numerics import gamma_fn, kummer_1f1_one, lower_incomplete_gamma, quad_integral
from .pade import eval_approximant, pade_exp
from .precision import PrecisionContext, Real, as_real
from .remainders import finite_diff, q_value, r_frac, r_neg, r_tail

# ---------------------------------------------------------------------------
# exact sharp constants


def alzer_constant(n: int) -> Fraction:
    """(n+1)/(n+2): the sharp constant of the basic product inequality."""
    if n < 1:
        raise UsageError(f"alzer_constant requires n >= 1, got {n}")
    return Fraction(n + 1, n + 2)


def gen_k_constant(n: int, k: int) -> Fraction:
    """((n+1)!)**2 / ((n+k+1)! (n-k+1)!), sharp for the order-k spread."""
    if k < 0 or n - k < 0:
        raise UsageError(f"gen_k_constant requires 0 <= k <= n, got n={n}, k={k}")
    return Fraction(
        math.factorial(n + 1) ** 2, math.factorial(n + k + 1) * math.factorial(n - k + 1)
    )


def incgamma_constant(n: int, k: int) -> Fraction:
    """1 - (k/(n+1))**2, the incomplete-gamma reformulation constant."""
    if k < 0 or n - k < 0:
        raise UsageError(f"incgamma_constant requires 0 <= k <= n, got n={n}, k={k}")
    return Fraction((n + 1 + k) * (n + 1 - k), (n + 1) ** 2)


def chebyshev_constant_exact(p: int, a: int, b: int) -> Fraction:
    """Gamma(p+a+2)Gamma(p+b+2) / (Gamma(p+2)Gamma(p+a+b+2)) at integers."""
    if p < 0 or a < 0 or b < 0:
        raise UsageError("exact Chebyshev constant needs integer p, a, beta >= 0")
    return Fraction(
        math.factorial(p + a + 1) * math.factorial(p + b + 1),
        math.factorial(p + 1) * math.factorial(p + a + b + 1),
    )


def chebyshev_constant(p, a, b, ctx: PrecisionContext) -> Real:
    with ctx.work():
        p, a, b = as_real(p, ctx), as_real(a, ctx), as_real(b, ctx)
        c = (
            gamma_fn(p + a + 2, ctx)
            * gamma_fn(p + b + 2, ctx)
            / (gamma_fn(p + 2, ctx) * gamma_fn(p + a + b + 2, ctx))
        )
    return ctx.finalize(c)


def interp_constant(nu, a, theta, ctx: PrecisionContext) -> Real:
    """Interpolation constant Gamma(nu+2)**(1-t) Gamma(nu+a+2)**t / Gamma(nu+at+2)."""
    with ctx.work():
        nu, a, theta = as_real(nu, ctx), as_real(a, ctx), as_real(theta, ctx)
        c = (
            gamma_fn(nu + 2, ctx) ** (1 - theta)
            * gamma_fn(nu + a + 2, ctx) ** theta
            / gamma_fn(nu + a * theta + 2, ctx)
        )
    return ctx.finalize(c)


def interp_constant_power(nu: int, a: int, theta: Fraction) -> Fraction:
    """C(nu, a, theta) ** theta.denominator as an exact rational, defined
    whenever nu, a are integers and a*theta is an integer."""
    theta = Fraction(theta)
    if not 0 <= theta <= 1:
        raise UsageError(f"theta must lie in [0, 1], got {theta}")
    r, s = theta.numerator, theta.denominator
    if (a * r) % s:
        raise UsageError(f"a*theta must be an integer for the exact path, got a={a}, theta={theta}")
    shift = a * r // s
    return Fraction(
        math.factorial(nu + 1) ** (s - r) * math.factorial(nu + a + 1) ** r,
        math.factorial(nu + shift + 1) ** s,
    )


def cor25_constant(nu, a, p, ctx: PrecisionContext) -> Real:
    with ctx.work():
        nu, a, p = as_real(nu, ctx), as_real(a, ctx), as_real(p, ctx)
        c = (
            gamma_fn(nu + 2, ctx) ** (p - 1)
            * gamma_fn(nu + a + 2, ctx)
            / gamma_fn(nu + a / p + 2, ctx) ** p
        )
    return ctx.finalize(c)


def cor26_constant(n: int, k: int) -> Fraction:
    """(n+k+1)! / ((n+2)**(k-1) (n+2)!)."""
    if n < 0 or k < 0:
        raise UsageError(f"cor26_constant requires n, k >= 0, got n={n}, k={k}")
    return Fraction(math.factorial(n + k + 1), math.factorial(n + 2)) / Fraction(n + 2) ** (k - 1)


def cor27_constant(n, a, b, ctx: PrecisionContext) -> Real:
    with ctx.work():
        n, a, b = as_real(n, ctx), as_real(a, ctx), as_real(b, ctx)
        g_n = gamma_fn(n + 2, ctx)
        c = (g_n / gamma_fn(n + b + 2, ctx)) ** a * (gamma_fn(n + a + 2, ctx) / g_n) ** b
    return ctx.finalize(c)


def neg_gen_k_constant(n: int, k: int) -> Fraction:
    """(n!)**2 / ((n-k)! (n+k)!): the Cauchy-Schwarz constant for the
    magnitude of the negative-argument remainder, sharp as x -> oo."""
    if k < 0 or n - k < 0:
        raise UsageError(f"neg_gen_k_constant requires 0 <= k <= n, got n={n}, k={k}")
    return Fraction(math.factorial(n) ** 2, math.factorial(n - k) * math.factorial(n + k))


def constant_cross_identities(n_max: int = 12) -> list[str]:
    """Exact-rational consistency of the constant family; returns the list
    of violated identities (empty when everything agrees with zero error)."""
    bad = []
    for n in range(1, n_max + 1):
        if gen_k_constant(n, 1) != alzer_constant(n):
            bad.append(f"gen_k(n={n}, k=1) != alzer(n={n})")
        if chebyshev_constant_exact(n - 1, 1, 1) != alzer_constant(n):
            bad.append(f"chebyshev(p={n - 1}, 1, 1) != alzer(n={n})")
        for k in range(0, n + 1):
            c2 = interp_constant_power(n - k, 2 * k, Fraction(1, 2))
            if c2 * gen_k_constant(n, k) != 1:
                bad.append(f"interp(nu={n - k}, a={2 * k}, theta=1/2)**2 * C(n={n},k={k}) != 1")
            d = incgamma_constant(n, k)
            if d != 1 - Fraction(k, n + 1) ** 2:
                bad.append(f"incgamma constant mismatch at n={n}, k={k}")
    return bad


# ---------------------------------------------------------------------------
# domain types


@dataclass(frozen=True)
class CheckId:
    """A catalog entry plus its non-x parameters."""

    id: str
    params: Mapping = field(default_factory=dict)


@dataclass
class CheckResult:
    check: str
    params: dict
    x: Real | None
    lhs: Real
    rhs: Real
    margin: Real
    ratio: Real | None
    err_bound: Real
    status: str  # PASS | FAIL | INDET | ERROR

    @property
    def passed(self) -> bool:
        return self.status == "PASS"


@dataclass(frozen=True)
class GridAxis:
    name: str
    values: tuple

    def __post_init__(self):
        if not self.values:
            raise UsageError(f"grid axis '{self.name}' is empty")


@dataclass(frozen=True)
class ParamGrid:
    axes: tuple[GridAxis, ...]

    def __post_init__(self):
        if not self.axes:
            raise UsageError("parameter grid is empty")
        names = [ax.name for ax in self.axes]
        if len(set(names)) != len(names):
            raise UsageError(f"duplicate grid axis in {names}")

    @property
    def names(self) -> set[str]:
        return {ax.name for ax in self.axes}

    def points(self) -> Iterable[dict]:
        def rec(i, acc):
            if i == len(self.axes):
                yield dict(acc)
                return
            ax = self.axes[i]
            for v in ax.values:
                acc[ax.name] = v
                yield from rec(i + 1, acc)

        yield from rec(0, {})


def log_grid(lo, hi, count: int, ctx: PrecisionContext) -> tuple:
    """Logarithmically spaced values, deterministic at context precision."""
    if count < 1:
        raise UsageError(f"grid count must be >= 1, got {count}")
    with ctx.work():
        lo, hi = as_real(lo, ctx), as_real(hi, ctx)
        if not (lo > 0 and hi > 0):
            raise UsageError("log spacing needs positive endpoints")
        if count == 1:
            return (ctx.finalize(lo),)
        step = (mp.log(hi) - mp.log(lo)) / (count - 1)
        return tuple(ctx.finalize(mp.exp(mp.log(lo) + i * step)) for i in range(count))


def lin_grid(lo, hi, count: int, ctx: PrecisionContext) -> tuple:
    if count < 1:
        raise UsageError(f"grid count must be >= 1, got {count}")
    with ctx.work():
        lo, hi = as_real(lo, ctx), as_real(hi, ctx)
        if count == 1:
            return (ctx.finalize(lo),)
        step = (hi - lo) / (count - 1)
        return tuple(ctx.finalize(lo + i * step) for i in range(count))


def parse_grid(spec: str, ctx: PrecisionContext) -> ParamGrid:
    """Grid syntax: semicolon-separated axes, each one of
    ``name=lo..hi`` (integer range), ``name=lin(lo,hi,count)`` or
    ``name=log(lo,hi,count)``; the sweep takes the cross product."""
    axes = []
    for part in spec.split(";"):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise UsageError(f"malformed grid axis '{part}' (expected name=range)")
        name, rng = (s.strip() for s in part.split("=", 1))
        try:
            if ".." in rng:
                lo, hi = rng.split("..")
                lo, hi = int(lo), int(hi)
                if hi < lo:
                    raise UsageError(f"empty integer range '{rng}'")
                axes.append(GridAxis(name, tuple(range(lo, hi + 1))))
            elif rng.startswith("lin(") and rng.endswith(")"):
                lo, hi, count = rng[4:-1].split(",")
                axes.append(GridAxis(name, lin_grid(lo, hi, int(count), ctx)))
            elif rng.startswith("log(") and rng.endswith(")"):
                lo, hi, count = rng[4:-1].split(",")
                axes.append(GridAxis(name, log_grid(lo, hi, int(count), ctx)))
            else:
                raise UsageError(f"unrecognised grid range '{rng}'")
        except (ValueError, TypeError) as exc:
            raise UsageError(f"cannot parse grid axis '{part}': {exc}") from exc
    return ParamGrid(tuple(axes))


# ---------------------------------------------------------------------------
# cached remainder access (sweeps revisit the same orders and abscissae)


@lru_cache(maxsize=None)
def _rt(n: int, x, ctx) -> Real:
    return r_tail(n, x, ctx)


@lru_cache(maxsize=None)
def _rf(a, x, ctx) -> Real:
    return r_frac(a, x, ctx)


@lru_cache(maxsize=None)
def _rn(n: int, x, ctx) -> Real:
    return r_neg(n, x, ctx)


@lru_cache(maxsize=None)
def _gi(v, x, ctx) -> Real:
    return lower_incomplete_gamma(v, x, ctx)


@lru_cache(maxsize=None)
def _kum(b, x, ctx) -> Real:
    return kummer_1f1_one(b, x, ctx)


@lru_cache(maxsize=None)
def _fracint(fname: str, order, x, ctx) -> Real:
    """Fractional integral I^order of a bundled test function at x."""
    if fname == "exp":
        return _rf(order - 1, x, ctx)
    fn = {"arctan": mp.atan, "clamp": lambda t: min(t, mpf(1))}[fname]
    with ctx.work():
        pieces = [(mpf(0), x)]
        if fname == "clamp" and x > 1:
            pieces = [(mpf(0), mpf(1)), (mpf(1), x)]
        total = mpf(0)
        for lo, hi in pieces:
            expo = order - 1 if hi == x else 0
            total += quad_integral(lambda t: (x - t) ** (order - 1) * fn(t), lo, hi, expo, ctx).value
        result = total / gamma_fn(order, ctx)
    return ctx.finalize(result)


def _c(value, ctx) -> Real:
    """Exact rational constant to working-precision float."""
    return as_real(value, ctx)


# ---------------------------------------------------------------------------
# the catalog


@dataclass(frozen=True)
class CheckDef:
    name: str
    param_names: tuple[str, ...]
    evaluate: Callable  # (params, ctx) -> (lhs, rhs)
    validate: Callable  # (params) -> None, raises UsageError
    default_points: Callable  # (ctx) -> list[dict] including x (and y)
    uses_y: bool = False
    sharp_ratio: Callable | None = None  # (params, ctx) -> Real
    sharp_limits: Mapping[str, Callable] = field(default_factory=dict)  # dir -> params -> value


def _need_int(params, name, minimum=None):
    v = params.get(name)
    if v is None or not float(v) == int(v):
        raise UsageError(f"parameter '{name}' must be an integer, got {v!r}")
    v = int(v)
    if minimum is not None and v < minimum:
        raise UsageError(f"parameter '{name}' must be >= {minimum}, got {v}")
    return v


def _need_real(params, name, strict_gt=None, ge=None, le=None):
    v = params.get(name)
    if v is None:
        raise UsageError(f"missing parameter '{name}'")
    v = mpf(v)
    if strict_gt is not None and not v > strict_gt:
        raise UsageError(f"parameter '{name}' must exceed {strict_gt}, got {v}")
    if ge is not None and not v >= ge:
        raise UsageError(f"parameter '{name}' must be >= {ge}, got {v}")
    if le is not None and not v <= le:
        raise UsageError(f"parameter '{name}' must be <= {le}, got {v}")
    return v


DEFAULT_X_SPEC = ("1e-3", "30", 25)
FRACTIONAL_ORDERS = ("-0.5", "0.5", "1.5", "3.7")
DEFAULT_THETAS = ("0.25", "0.5", "0.75")
KIM_XY_VALUES = ("0.5", "1", "2")


def default_x_grid(ctx: PrecisionContext) -> tuple:
    lo, hi, count = DEFAULT_X_SPEC
    return log_grid(lo, hi, count, ctx)


def _cross(base: Sequence[dict], ctx, x_values=None) -> list[dict]:
    xs = default_x_grid(ctx) if x_values is None else x_values
    return [dict(b, x=x) for b in base for x in xs]


def _xy_cross(base: Sequence[dict], ctx, exclude_diagonal=False) -> list[dict]:
    out = []
    vals = [as_real(v, ctx) for v in KIM_XY_VALUES]
    for b in base:
        for x in vals:
            for y in vals:
                if exclude_diagonal and x == y:
                    continue
                out.append(dict(b, x=x, y=y))
    return out


def _fracs(ctx, only_positive=False, strict_gt=None):
    vals = [as_real(v, ctx) for v in FRACTIONAL_ORDERS]
    if only_positive:
        vals = [v for v in vals if v > 0]
    if strict_gt is not None:
        vals = [v for v in vals if v > strict_gt]
    return vals


CATALOG: dict[str, CheckDef] = {}


def _register(cdef: CheckDef):
    CATALOG[cdef.name] = cdef


# -- product / ratio family on the integer tail ----------------------------


def _ev_alzer(p, ctx):
    n, x = p["n"], p["x"]
    return _rt(n - 1, x, ctx) * _rt(n + 1, x, ctx), _c(alzer_constant(n), ctx) * _rt(n, x, ctx) ** 2


def _ratio_alzer(p, ctx):
    n, x = p["n"], p["x"]
    return _rt(n - 1, x, ctx) * _rt(n + 1, x, ctx) / _rt(n, x, ctx) ** 2


_register(CheckDef(
    "ALZER", ("n",), _ev_alzer,
    lambda p: _need_int(p, "n", 1),
    lambda ctx: _cross([{"n": n} for n in range(1, 9)], ctx),
    sharp_ratio=_ratio_alzer,
    sharp_limits={"zero": lambda p, ctx: alzer_constant(p["n"]), "inf": lambda p, ctx: Fraction(1)},
))


def _ev_gautschi(p, ctx):
    n, k, x = p["n"], p["k"], p["x"]
    qs = [q_value(n + j, x, ctx) for j in range(k + 1)]
    value = qs[0] if k == 0 else finite_diff(qs, k).values[0] * (-1) ** k
    return value, mpf(0)


_register(CheckDef(
    "GAUTSCHI_K", ("n", "k"), _ev_gautschi,
    lambda p: (_need_int(p, "n", 1), _need_int(p, "k", 0)),
    lambda ctx: _cross([{"n": n, "k": k} for n in range(1, 9) for k in (0, 1, 2)], ctx),
))


def _ev_gen_k(p, ctx):
    n, k, x = p["n"], p["k"], p["x"]
    return (
        _rt(n - k, x, ctx) * _rt(n + k, x, ctx),
        _c(gen_k_constant(n, k), ctx) * _rt(n, x, ctx) ** 2,
    )


def _val_nk(p):
    n = _need_int(p, "n", 0)
    k = _need_int(p, "k", 0)
    if n - k < 0:
        raise UsageError(f"requires k <= n, got n={n}, k={k}")


_register(CheckDef(
    "GEN_K", ("n", "k"), _ev_gen_k, _val_nk,
    lambda ctx: _cross([{"n": n, "k": k} for n in range(1, 9) for k in range(1, n + 1)], ctx),
    sharp_ratio=lambda p, ctx: _rt(p["n"] - p["k"], p["x"], ctx) * _rt(p["n"] + p["k"], p["x"], ctx)
    / _rt(p["n"], p["x"], ctx) ** 2,
    sharp_limits={"zero": lambda p, ctx: gen_k_constant(p["n"], p["k"]), "inf": lambda p, ctx: Fraction(1)},
))


def _ev_kummer_form(p, ctx):
    n, k, x = p["n"], p["k"], p["x"]
    return (
        _kum(mpf(n + 2 - k), x, ctx) * _kum(mpf(n + 2 + k), x, ctx),
        _kum(mpf(n + 2), x, ctx) ** 2,
    )


_register(CheckDef(
    "KUMMER_FORM", ("n", "k"), _ev_kummer_form, _val_nk,
    lambda ctx: _cross([{"n": n, "k": k} for n in range(1, 9) for k in range(1, n + 1)], ctx),
    sharp_ratio=lambda p, ctx: _ev_kummer_form(p, ctx)[0] / _ev_kummer_form(p, ctx)[1],
    sharp_limits={"zero": lambda p, ctx: Fraction(1)},
))


def _ev_incgamma(p, ctx):
    n, k, x = p["n"], p["k"], p["x"]
    lhs = _c(incgamma_constant(n, k), ctx) * _gi(mpf(n + k + 1), x, ctx) * _gi(mpf(n + 1 - k), x, ctx)
    return lhs, _gi(mpf(n + 1), x, ctx) ** 2


_register(CheckDef(
    "INCGAMMA_FORM", ("n", "k"), _ev_incgamma, _val_nk,
    lambda ctx: _cross([{"n": n, "k": k} for n in range(1, 9) for k in range(1, n + 1)], ctx),
    sharp_ratio=lambda p, ctx: _gi(mpf(p["n"] + 1), p["x"], ctx) ** 2
    / (_gi(mpf(p["n"] + p["k"] + 1), p["x"], ctx) * _gi(mpf(p["n"] + 1 - p["k"]), p["x"], ctx)),
    sharp_limits={"zero": lambda p, ctx: incgamma_constant(p["n"], p["k"])},
))


def _ev_fracint_form(p, ctx):
    n, k, x = p["n"], p["k"], p["x"]
    lhs = _rf(mpf(n + k), x, ctx) * _rf(mpf(n - k), x, ctx) / _c(gen_k_constant(n, k), ctx)
    return lhs, _rf(mpf(n), x, ctx) ** 2


_register(CheckDef(
    "FRACINT_FORM", ("n", "k"), _ev_fracint_form, _val_nk,
    lambda ctx: _cross([{"n": n, "k": k} for n in range(1, 9) for k in range(1, n + 1)], ctx),
))


# -- Chebyshev / interpolation family ---------------------------------------


def _cheb_constant(p, a, b, ctx):
    if all(float(v) == int(v) for v in (p, a, b)) and p >= 0:
        return _c(chebyshev_constant_exact(int(p), int(a), int(b)), ctx)
    return chebyshev_constant(p, a, b, ctx)


def _ev_chebyshev(p, ctx):
    pp, a, b, x = p["p"], p["a"], p["beta"], p["x"]
    lhs = _rf(pp, x, ctx) * _rf(pp + a + b, x, ctx)
    rhs = _cheb_constant(pp, a, b, ctx) * _rf(pp + a, x, ctx) * _rf(pp + b, x, ctx)
    return lhs, rhs


def _ratio_chebyshev(p, ctx):
    pp, a, b, x = p["p"], p["a"], p["beta"], p["x"]
    return _rf(pp, x, ctx) * _rf(pp + a + b, x, ctx) / (_rf(pp + a, x, ctx) * _rf(pp + b, x, ctx))


_register(CheckDef(
    "CHEBYSHEV_GEN", ("p", "a", "beta"), _ev_chebyshev,
    lambda p: (_need_real(p, "p", strict_gt=-1), _need_real(p, "a", ge=0),
               _need_real(p, "beta", ge=0)),
    lambda ctx: _cross(
        [{"p": pp, "a": as_real(a, ctx), "beta": as_real(b, ctx)}
         for pp in _fracs(ctx) for (a, b) in (("1", "2"), ("0.5", "1.5"))], ctx),
    sharp_ratio=_ratio_chebyshev,
    sharp_limits={"zero": lambda p, ctx: _cheb_constant(p["p"], p["a"], p["beta"], ctx)},
))


def _ev_interp(p, ctx):
    nu, a, th, x = p["nu"], p["a"], p["theta"], p["x"]
    c = interp_constant(nu, a, th, ctx)
    lhs = c * _rf(nu, x, ctx) ** (1 - th) * _rf(nu + a, x, ctx) ** th
    return lhs, _rf(nu + a * th, x, ctx)


_register(CheckDef(
    "INTERP", ("nu", "a", "theta"), _ev_interp,
    lambda p: (_need_real(p, "nu", strict_gt=-1), _need_real(p, "a", ge=0),
               _need_real(p, "theta", ge=0, le=1)),
    lambda ctx: _cross(
        [{"nu": nu, "a": as_real(a, ctx), "theta": as_real(t, ctx)}
         for nu in _fracs(ctx) for a in ("1", "2.5") for t in DEFAULT_THETAS], ctx),
    sharp_ratio=lambda p, ctx: _rf(p["nu"] + p["a"] * p["theta"], p["x"], ctx)
    / (_rf(p["nu"], p["x"], ctx) ** (1 - p["theta"]) * _rf(p["nu"] + p["a"], p["x"], ctx) ** p["theta"]),
    sharp_limits={"zero": lambda p, ctx: interp_constant(p["nu"], p["a"], p["theta"], ctx)},
))


def _ev_cor25(p, ctx):
    nu, a, pw, x = p["nu"], p["a"], p["p"], p["x"]
    lhs = cor25_constant(nu, a, pw, ctx) * _rf(nu + a, x, ctx) * _rf(nu, x, ctx) ** (pw - 1)
    return lhs, _rf(nu + a / pw, x, ctx) ** pw


_register(CheckDef(
    "COR_25", ("nu", "a", "p"), _ev_cor25,
    lambda p: (_need_real(p, "nu", strict_gt=-1), _need_real(p, "a", strict_gt=0),
               _need_real(p, "p", ge=1)),
    lambda ctx: _cross(
        [{"nu": nu, "a": as_real(a, ctx), "p": as_real(pw, ctx)}
         for nu in _fracs(ctx) for a in ("1", "2.5") for pw in ("1.5", "2", "3")], ctx),
))


def _ev_cor26(p, ctx):
    n, k, x = p["n"], p["k"], p["x"]
    lhs = _c(cor26_constant(n, k), ctx) * _rt(n + k, x, ctx) * _rt(n, x, ctx) ** (k - 1)
    return lhs, _rt(n + 1, x, ctx) ** k


_register(CheckDef(
    "COR_26", ("n", "k"), _ev_cor26,
    lambda p: (_need_int(p, "n", 0), _need_int(p, "k", 0)),
    lambda ctx: _cross([{"n": n, "k": k} for n in range(1, 9) for k in (2, 3, 4)], ctx),
    sharp_ratio=lambda p, ctx: _rt(p["n"] + 1, p["x"], ctx) ** p["k"]
    / (_rt(p["n"] + p["k"], p["x"], ctx) * _rt(p["n"], p["x"], ctx) ** (p["k"] - 1)),
    sharp_limits={"zero": lambda p, ctx: cor26_constant(p["n"], p["k"])},
))


def _ev_cor27(p, ctx):
    n, a, b, x = p["n"], p["a"], p["beta"], p["x"]
    lhs = cor27_constant(n, a, b, ctx) * _rf(mpf(n), x, ctx) ** (a - b) * _rf(n + a, x, ctx) ** b
    return lhs, _rf(n + b, x, ctx) ** a


def _val_cor27(p):
    _need_int(p, "n", 0)
    a = _need_real(p, "a", ge=0)
    b = _need_real(p, "beta", ge=0)
    if not a >= b:
        raise UsageError(f"requires a >= beta, got a={a}, beta={b}")


_register(CheckDef(
    "COR_27", ("n", "a", "beta"), _ev_cor27, _val_cor27,
    lambda ctx: _cross(
        [{"n": n, "a": as_real(a, ctx), "beta": as_real(b, ctx)}
         for n in range(1, 9) for (a, b) in (("2", "1"), ("3.7", "1.5"), ("1.5", "0.5"))], ctx),
))


def _ev_prod28(p, ctx):
    nu, a, x = p["nu"], p["a"], p["x"]
    thetas = [as_real(t, ctx) for t in DEFAULT_THETAS]
    beta = sum(thetas)
    c = mpf(1)
    rhs = mpf(1)
    for t in thetas:
        c *= interp_constant(nu, a, t, ctx)
        rhs *= _rf(nu + a * t, x, ctx)
    lhs = c * _rf(nu, x, ctx) ** (len(thetas) - beta) * _rf(nu + a, x, ctx) ** beta
    return lhs, rhs


_register(CheckDef(
    "PROD_28", ("nu", "a"), _ev_prod28,
    lambda p: (_need_real(p, "nu", strict_gt=-1), _need_real(p, "a", ge=0)),
    lambda ctx: _cross(
        [{"nu": nu, "a": as_real(a, ctx)} for nu in _fracs(ctx) for a in ("1", "2")], ctx),
))


# -- complete-monotonicity consequences -------------------------------------


def _ev_refined31(p, ctx):
    a, x = p["a"], p["x"]
    ra, ra1 = _rf(a, x, ctx), _rf(a + 1, x, ctx)
    lhs = ra1 * _rf(a - 1, x, ctx) - (a + 1) / (a + 2) * ra**2
    rhs = ra**2 / (a + 2) - (a + 2) / x**2 * ra1**2
    return lhs, rhs


_register(CheckDef(
    "REFINED_31", ("a",), _ev_refined31,
    lambda p: _need_real(p, "a", strict_gt=0),
    lambda ctx: _cross([{"a": a} for a in _fracs(ctx, strict_gt=0)], ctx),
))


def _ev_ratio32(p, ctx):
    a, x = p["a"], p["x"]
    return _rf(a, x, ctx), (a + 2) / x * _rf(a + 1, x, ctx)


_register(CheckDef(
    "RATIO_32", ("a",), _ev_ratio32,
    lambda p: _need_real(p, "a", strict_gt=-1),
    lambda ctx: _cross([{"a": a} for a in _fracs(ctx)], ctx),
))


def _ev_fracmono(p, ctx):
    a, f, x = p["a"], p["f"], p["x"]
    return _fracint(f, a, x, ctx), (a + 1) / x * _fracint(f, a + 1, x, ctx)


def _val_fracmono(p):
    _need_real(p, "a", strict_gt=0)
    if p.get("f") not in ("exp", "arctan", "clamp"):
        raise UsageError(f"unknown test function {p.get('f')!r}; pick exp, arctan or clamp")


def _fracmono_defaults(ctx):
    base = [{"a": a, "f": "exp"} for a in _fracs(ctx, only_positive=True)]
    base += [{"a": a, "f": f} for a in _fracs(ctx, only_positive=True)[:2]
             for f in ("arctan", "clamp")]
    return _cross(base, ctx)


_register(CheckDef(
    "FRACMONO_34", ("a", "f"), _ev_fracmono, _val_fracmono, _fracmono_defaults,
))


def _ev_two_sided35(p, ctx):
    nu, x = p["nu"], p["x"]
    low = (_rf(nu - 1, x, ctx), (nu + 1) / x * _rf(nu, x, ctx))
    high = ((1 + (nu + 1) / x) * _rf(nu, x, ctx), _rf(nu - 1, x, ctx))
    return low if low[0] - low[1] <= high[0] - high[1] else high


_register(CheckDef(
    "TWO_SIDED_35", ("nu",), _ev_two_sided35,
    lambda p: _need_real(p, "nu", strict_gt=0),
    lambda ctx: _cross(
        [{"nu": as_real(v, ctx)} for v in ("0.5", "1.5", "3.7", "1", "2", "4", "8")], ctx),
))


def _ev_strength36(p, ctx):
    nu, x = p["nu"], p["x"]
    lhs = _rf(nu - 2, x, ctx) - nu / x * _rf(nu - 1, x, ctx)
    rhs = (nu + 2) / x * (_rf(nu - 1, x, ctx) - (nu + 1) / x * _rf(nu, x, ctx))
    return lhs, rhs


_register(CheckDef(
    "STRENGTH_36", ("nu",), _ev_strength36,
    lambda p: _need_real(p, "nu", strict_gt=1),
    lambda ctx: _cross([{"nu": as_real(v, ctx)} for v in ("1.5", "3.7", "2", "3", "5")], ctx),
))


def _ev_kim37(p, ctx):
    nu, x, y = p["nu"], p["x"], p["y"]
    lhs = _rf(nu, x + y, ctx)
    rhs = gamma_fn(nu + 2, ctx) * (1 / x + 1 / y) ** (nu + 1) * _rf(nu, x, ctx) * _rf(nu, y, ctx)
    return lhs, rhs


_register(CheckDef(
    "KIM_37", ("nu",), _ev_kim37,
    lambda p: (_need_real(p, "nu", strict_gt=-1), _need_real(p, "x", strict_gt=0),
               _need_real(p, "y", strict_gt=0)),
    lambda ctx: _xy_cross([{"nu": nu} for nu in _fracs(ctx)], ctx),
    uses_y=True,
))


def _ev_kim38(p, ctx):
    nu, pw, x, y = p["nu"], p["p"], p["x"], p["y"]
    qw = pw / (pw - 1)
    bracket = (x + y) / ((x + pw * y) ** (1 / pw) * x ** (1 / qw))
    lhs = bracket ** (nu + 1) * _rf(nu, x + pw * y, ctx) ** (1 / pw) * _rf(nu, x, ctx) ** (1 / qw)
    return lhs, _rf(nu, x + y, ctx)


_register(CheckDef(
    "KIM_38", ("nu", "p"), _ev_kim38,
    lambda p: (_need_real(p, "nu", strict_gt=-1), _need_real(p, "p", strict_gt=1),
               _need_real(p, "x", strict_gt=0), _need_real(p, "y", strict_gt=0)),
    lambda ctx: _xy_cross(
        [{"nu": nu, "p": as_real(pw, ctx)} for nu in _fracs(ctx) for pw in ("2", "3")], ctx),
    uses_y=True,
))


def _ev_kim39(p, ctx):
    nu, x = p["nu"], p["x"]
    lhs = _rf(nu, 2 * x, ctx)
    rhs = gamma_fn(nu + 2, ctx) * mpf(2) ** (nu + 1) / x ** (nu + 1) * _rf(nu, x, ctx) ** 2
    return lhs, rhs


_register(CheckDef(
    "KIM_39", ("nu",), _ev_kim39,
    lambda p: _need_real(p, "nu", strict_gt=-1),
    lambda ctx: _cross([{"nu": nu} for nu in _fracs(ctx)], ctx),
    sharp_ratio=lambda p, ctx: _ev_kim39(p, ctx)[0] / _ev_kim39(p, ctx)[1],
    sharp_limits={"zero": lambda p, ctx: Fraction(1)},
))


def _ev_kim40(p, ctx):
    # Scaling-consistent version of the doubling bound: the square of the
    # sum-point value against the bracket to the power nu+1.
    nu, x, y = p["nu"], p["x"], p["y"]
    lhs = ((x + y) ** 2 / (4 * x * y)) ** (nu + 1) * _rf(nu, 2 * x, ctx) * _rf(nu, 2 * y, ctx)
    return lhs, _rf(nu, x + y, ctx) ** 2


_register(CheckDef(
    "KIM_40", ("nu",), _ev_kim40,
    lambda p: (_need_real(p, "nu", strict_gt=-1), _need_real(p, "x", strict_gt=0),
               _need_real(p, "y", strict_gt=0)),
    lambda ctx: _xy_cross([{"nu": nu} for nu in _fracs(ctx)], ctx, exclude_diagonal=True),
    uses_y=True,
))


# -- negative-argument magnitude family --------------------------------------


def _ev_neg_alzer(p, ctx):
    n, x = p["n"], p["x"]
    return (
        _rn(n - 1, x, ctx) * _rn(n + 1, x, ctx),
        _c(neg_gen_k_constant(n, 1), ctx) * _rn(n, x, ctx) ** 2,
    )


def _ratio_neg_alzer(p, ctx):
    n, x = p["n"], p["x"]
    return _rn(n - 1, x, ctx) * _rn(n + 1, x, ctx) / _rn(n, x, ctx) ** 2


_register(CheckDef(
    "NEG_ALZER", ("n",), _ev_neg_alzer,
    lambda p: _need_int(p, "n", 1),
    lambda ctx: _cross([{"n": n} for n in range(1, 9)], ctx),
    sharp_ratio=_ratio_neg_alzer,
    sharp_limits={"inf": lambda p, ctx: neg_gen_k_constant(p["n"], 1),
                  "zero": lambda p, ctx: alzer_constant(p["n"])},
))


def _ev_neg_gen_k(p, ctx):
    n, k, x = p["n"], p["k"], p["x"]
    return (
        _rn(n - k, x, ctx) * _rn(n + k, x, ctx),
        _c(neg_gen_k_constant(n, k), ctx) * _rn(n, x, ctx) ** 2,
    )


_register(CheckDef(
    "NEG_GEN_K", ("n", "k"), _ev_neg_gen_k, _val_nk,
    lambda ctx: _cross([{"n": n, "k": k} for n in range(1, 9) for k in range(1, n + 1)], ctx),
    sharp_ratio=lambda p, ctx: _rn(p["n"] - p["k"], p["x"], ctx) * _rn(p["n"] + p["k"], p["x"], ctx)
    / _rn(p["n"], p["x"], ctx) ** 2,
    sharp_limits={"inf": lambda p, ctx: neg_gen_k_constant(p["n"], p["k"])},
))


def _ev_neg_sandwich(p, ctx):
    n, x = p["n"], p["x"]
    prod = _rn(n - 1, x, ctx) * _rn(n + 1, x, ctx)
    sq = _rn(n, x, ctx) ** 2
    low = (prod, _c(neg_gen_k_constant(n, 1), ctx) * sq)
    high = (_c(alzer_constant(n), ctx) * sq, prod)
    return low if low[0] - low[1] <= high[0] - high[1] else high


_register(CheckDef(
    "NEG_SANDWICH", ("n",), _ev_neg_sandwich,
    lambda p: _need_int(p, "n", 1),
    lambda ctx: _cross([{"n": n} for n in range(1, 9)], ctx),
))


# -- appendix family ----------------------------------------------------------


def _ev_reverse43(p, ctx):
    n, x = p["n"], p["x"]
    return _rt(n, x, ctx) ** 2, _rt(n - 1, x, ctx) * _rt(n + 1, x, ctx)


_register(CheckDef(
    "REVERSE_43", ("n",), _ev_reverse43,
    lambda p: _need_int(p, "n", 1),
    lambda ctx: _cross([{"n": n} for n in range(1, 9)], ctx),
    sharp_ratio=lambda p, ctx: _rt(p["n"], p["x"], ctx) ** 2
    / (_rt(p["n"] - 1, p["x"], ctx) * _rt(p["n"] + 1, p["x"], ctx)),
    sharp_limits={"inf": lambda p, ctx: Fraction(1)},
))


def _ev_linear44(p, ctx):
    n, x = p["n"], p["x"]
    with ctx.work():
        lhs = x ** (n + 1) / mpf(math.factorial(n))
    return lhs, (n + 1 - x) * _rt(n, x, ctx)


_register(CheckDef(
    "LINEAR_44", ("n",), _ev_linear44,
    lambda p: _need_int(p, "n", 0),
    lambda ctx: _cross([{"n": n} for n in range(1, 9)], ctx),
))


@lru_cache(maxsize=None)
def _pade_row(n: int):
    return pade_exp(n, 1)


def _ev_pade_row45(p, ctx):
    n, x = p["n"], p["x"]
    val = eval_approximant(_pade_row(n), x, ctx)
    with ctx.work():
        ex = mp.exp(x)
    if x < n + 1:
        return val, ex
    return ex, val


_register(CheckDef(
    "PADE_ROW_45", ("n",), _ev_pade_row45,
    lambda p: _need_int(p, "n", 0),
    lambda ctx: _cross([{"n": n} for n in range(1, 9)], ctx),
))


def _ev_sandwich49(p, ctx):
    n, x = p["n"], p["x"]
    prod = _rt(n - 1, x, ctx) * _rt(n + 1, x, ctx)
    sq = _rt(n, x, ctx) ** 2
    low = (prod, _c(alzer_constant(n), ctx) * sq)
    high = (sq, prod)
    return low if low[0] - low[1] <= high[0] - high[1] else high


_register(CheckDef(
    "SANDWICH_49", ("n",), _ev_sandwich49,
    lambda p: _need_int(p, "n", 1),
    lambda ctx: _cross([{"n": n} for n in range(1, 9)], ctx),
    sharp_ratio=_ratio_alzer,
    sharp_limits={"zero": lambda p, ctx: alzer_constant(p["n"]), "inf": lambda p, ctx: Fraction(1)},
))


def _ev_prob15(p, ctx):
    n, x = p["n"], p["x"]
    f = (
        _rt(n - 2, x, ctx) * _rt(n, x, ctx) / _rt(n - 1, x, ctx) ** 2
        + _rt(n, x, ctx) ** 2 / (_rt(n - 1, x, ctx) * _rt(n + 1, x, ctx))
    )
    lo = _c(Fraction(2 * n + 1, n + 1), ctx)
    hi = _c(Fraction(2 * n + 3, n + 1), ctx)
    low = (f, lo)
    high = (hi, f)
    return low if low[0] - low[1] <= high[0] - high[1] else high


_register(CheckDef(
    "PROB15_BOUNDS", ("n",), _ev_prob15,
    lambda p: _need_int(p, "n", 2),
    lambda ctx: _cross([{"n": n} for n in range(2, 9)], ctx),
))


CHECK_IDS = tuple(CATALOG)


# ---------------------------------------------------------------------------
# evaluation, sweeping, sharpness


def _canonical_params(cdef: CheckDef, params: Mapping, ctx) -> dict:
    out = {}
    for name in cdef.param_names + ("x",) + (("y",) if cdef.uses_y else ()):
        if name not in params:
            raise UsageError(f"check {cdef.name} needs parameter '{name}'")
        v = params[name]
        if name == "f":
            out[name] = str(v)
        elif name in ("n", "k"):
            out[name] = int(mpf(v)) if isinstance(v, str) else int(v)
        else:
            out[name] = as_real(v, ctx)
    return out


def evaluate_check(check: CheckId | str, ctx: PrecisionContext, params: Mapping | None = None) -> CheckResult:
    """Evaluate one catalog inequality at one parameter point."""
    if isinstance(check, CheckId):
        name, params = check.id, dict(check.params)
    else:
        name, params = check, dict(params or {})
    cdef = CATALOG.get(name)
    if cdef is None:
        raise UsageError(f"unknown check id '{name}' (known: {', '.join(CHECK_IDS)})")
    p = _canonical_params(cdef, params, ctx)
    cdef.validate(p)
    if not p["x"] > 0:
        raise UsageError(f"check {name} requires x > 0, got {p['x']}")
    with ctx.work():
        lhs, rhs = cdef.evaluate(p, ctx)
        margin = lhs - rhs
        err_bound = 100 * ctx.target_rel_err * max(abs(lhs), abs(rhs))
        ratio = lhs / rhs if rhs != 0 else None
    if margin > err_bound:
        status = "PASS"
    elif margin < -err_bound:
        status = "FAIL"
    else:
        status = "INDET"
    shown = {k: v for k, v in p.items() if k != "x"}
    return CheckResult(
        check=name,
        params=shown,
        x=ctx.finalize(p["x"]),
        lhs=ctx.finalize(lhs),
        rhs=ctx.finalize(rhs),
        margin=ctx.finalize(margin),
        ratio=None if ratio is None else ctx.finalize(ratio),
        err_bound=ctx.finalize(err_bound),
        status=status,
    )


def _evaluate_point(cdef: CheckDef, point: dict, ctx) -> CheckResult | None:
    try:
        cdef.validate(point)
    except UsageError:
        return None  # combination outside the check's admissible region
    try:
        return evaluate_check(cdef.name, ctx, point)
    except PoleError:
        return None
    except NumericalError:
        nan = mpf("nan")
        return CheckResult(
            check=cdef.name,
            params={k: v for k, v in point.items() if k != "x"},
            x=point.get("x"),
            lhs=nan, rhs=nan, margin=nan, ratio=None, err_bound=nan,
            status="ERROR",
        )


def sweep(ids: Sequence[str], grid: ParamGrid, ctx: PrecisionContext) -> list[CheckResult]:
    """Evaluate the given checks over an explicit parameter grid.

    Grid axes override the matching axes of each check's default points;
    parameters the grid does not name keep their default values, so one
    shared grid can drive the whole catalog.  An axis no selected check
    uses is a usage error.  Results come out in deterministic (id order,
    default-point order, grid order); points outside a check's admissible
    parameter combinations are skipped, and per-point numerical failures
    are recorded as ERROR rows without aborting the sweep.
    """
    if not isinstance(grid, ParamGrid):
        raise UsageError("sweep needs a ParamGrid")
    axes = {ax.name: ax.values for ax in grid.axes}
    used_axes = set()
    results = []
    for name in ids:
        cdef = CATALOG.get(name)
        if cdef is None:
            raise UsageError(f"unknown check id '{name}'")
        names = cdef.param_names + ("x",) + (("y",) if cdef.uses_y else ())
        override = [n for n in names if n in axes]
        used_axes.update(override)

        bases = []
        seen = set()
        for pt in cdef.default_points(ctx):
            base = {k: v for k, v in pt.items() if k not in override}
            key = tuple(sorted((k, str(v)) for k, v in base.items()))
            if key not in seen:
                seen.add(key)
                bases.append(base)

        def expand(i, acc):
            if i == len(override):
                yield dict(acc)
                return
            for v in axes[override[i]]:
                acc[override[i]] = v
                yield from expand(i + 1, acc)

        for base in bases:
            for combo in expand(0, {}):
                res = _evaluate_point(cdef, dict(base, **combo), ctx)
                if res is not None:
                    results.append(res)
    unused = set(axes) - used_axes
    if unused:
        raise UsageError(f"grid axes {sorted(unused)} match no parameter of {list(ids)}")
    return results


def default_sweep(ids: Sequence[str] | None, ctx: PrecisionContext) -> list[CheckResult]:
    """Evaluate checks over their built-in default parameter points
    (the standing verification grid)."""
    results = []
    for name in ids or CHECK_IDS:
        cdef = CATALOG.get(name)
        if cdef is None:
            raise UsageError(f"unknown check id '{name}'")
        for point in cdef.default_points(ctx):
            res = _evaluate_point(cdef, point, ctx)
            if res is not None:
                results.append(res)
    return results


def summarize(results: Sequence[CheckResult]) -> dict:
    counts = {"PASS": 0, "FAIL": 0, "INDET": 0, "ERROR": 0}
    for r in results:
        counts[r.status] = counts.get(r.status, 0) + 1
    counts["total"] = len(results)
    return counts


@dataclass
class SharpnessResult:
    check: str
    params: dict
    direction: str
    samples: list  # (x, ratio)
    extrapolants: list
    limit: Real
    converged: bool
    documented_limit: Real | None


def _richardson(values: list, q: mpf) -> list:
    """Repeated Richardson extrapolation for samples on a geometric grid
    h, h*q, h*q^2, ...; returns the successive best extrapolants."""
    out = [values[-1]]
    col = list(values)
    j = 1
    while len(col) > 1:
        factor = q**j
        col = [(col[i + 1] - factor * col[i]) / (1 - factor) for i in range(len(col) - 1)]
        out.append(col[-1])
        j += 1
    return out


def sharpness_probe(check: CheckId | str, direction: str, ctx: PrecisionContext,
                    params: Mapping | None = None) -> SharpnessResult:
    """Estimate the limiting value of a check's structural ratio as
    x -> 0 or x -> oo by sampling a geometric x-sequence and applying
    repeated Richardson extrapolation."""
    if isinstance(check, CheckId):
        name, params = check.id, dict(check.params)
    else:
        name, params = check, dict(params or {})
    cdef = CATALOG.get(name)
    if cdef is None:
        raise UsageError(f"unknown check id '{name}'")
    if cdef.sharp_ratio is None or direction not in cdef.sharp_limits:
        raise UsageError(f"check {name} has no documented sharpness limit toward '{direction}'")
    fixed = dict(params)
    fixed.pop("x", None)
    with ctx.work():
        if direction == "zero":
            xs = [mpf(10) ** (-e) for e in range(2, 9)]
        elif direction == "inf":
            xs = [mpf(10) ** e for e in range(1, 5)]
        else:
            raise UsageError(f"direction must be 'zero' or 'inf', got {direction!r}")
        samples = []
        for x in xs:
            p = _canonical_params(cdef, dict(fixed, x=x, y=x), ctx) if cdef.uses_y \
                else _canonical_params(cdef, dict(fixed, x=x), ctx)
            cdef.validate(p)
            samples.append((x, cdef.sharp_ratio(p, ctx)))
        extrap = _richardson([s[1] for s in samples], mpf(1) / 10)
        limit = extrap[-1]
        tail = extrap[-3:]
        converged = len(tail) == 3 and all(
            abs(t - limit) <= mpf("1e-6") * max(1, abs(limit)) for t in tail
        )
        documented = cdef.sharp_limits[direction](p, ctx)
        documented = None if documented is None else as_real(documented, ctx)
    if not converged:
        raise NumericalError(
            f"sharpness probe for {name} toward {direction} did not converge; "
            f"samples: {[(mp.nstr(x, 8), mp.nstr(r, 12)) for x, r in samples]}",
            best_estimate=ctx.finalize(limit),
        )
    return SharpnessResult(
        check=name,
        params=fixed,
        direction=direction,
        samples=[(ctx.finalize(x), ctx.finalize(r)) for x, r in samples],
        extrapolants=[ctx.finalize(t) for t in extrap],
        limit=ctx.finalize(limit),
        converged=converged,
        documented_limit=None if documented is None else ctx.finalize(documented),
    )
