"""Working-precision context and decimal round-trip helpers.

Every public operation in this package takes a :class:`PrecisionContext`
and performs its arithmetic with ``mpmath`` at ``bits`` of mantissa plus a
fixed guard.  Values are plain ``mpmath.mpf`` scalars; the context decides
how they are produced and printed, so "a Real at context precision" means
"an mpf computed while the context's working precision was active".

Operands carrying more precision than the context are rounded down to it
(the coarser precision wins); the downgrade is reported through the
``exptail`` logger.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from mpmath import mp, mpf

from .errors import DomainError

log = logging.getLogger("exptail")

# Extra mantissa bits used while computing, absorbing accumulated rounding
# from long summations before the result is rounded back to ``bits``.
GUARD_BITS = 32

Real = mpf


def default_target_rel_err(bits: int) -> mpf:
    """Default acceptance threshold: 2**-(7*bits/8).

    Leaves bits/8 of headroom between the requested accuracy and the raw
    arithmetic, so error estimators never bottom out on rounding noise.
    """
    return mpf(2) ** -((7 * bits) // 8)


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision (mantissa bits) plus the truncation threshold
    used by every series / quadrature stopping rule.

    Invariants: ``bits >= 53`` and ``target_rel_err >= 2**(1 - bits)``.
    """

    bits: int = 256
    target_rel_err: mpf = None  # defaults to 2**-(7*bits/8)

    def __post_init__(self):
        if not isinstance(self.bits, int) or self.bits < 53:
            raise DomainError(f"precision must be an integer >= 53 bits, got {self.bits!r}")
        tre = self.target_rel_err
        if tre is None:
            tre = default_target_rel_err(self.bits)
        else:
            tre = mpf(tre)
        if not tre > 0 or tre < mpf(2) ** (1 - self.bits):
            raise DomainError(
                f"target_rel_err must satisfy 2**(1-bits) <= err, got {tre} at {self.bits} bits"
            )
        object.__setattr__(self, "target_rel_err", tre)

    def work(self, extra_bits: int = 0):
        """Context manager activating the working precision."""
        return mp.workprec(self.bits + GUARD_BITS + max(0, extra_bits))

    def finalize(self, x) -> Real:
        """Round a computed value back to exactly ``bits`` of mantissa."""
        with mp.workprec(self.bits):
            return +mpf(x)

    def with_bits(self, bits: int) -> "PrecisionContext":
        """Same target_rel_err policy, different mantissa size."""
        return PrecisionContext(bits=bits)

    @property
    def decimal_digits(self) -> int:
        """Digits needed for lossless decimal round-trip (>= 0.3*bits)."""
        return int(self.bits * 0.302) + 3


def as_real(x, ctx: PrecisionContext) -> Real:
    """Convert an input scalar to an mpf at the context's working precision.

    Mixed-precision operands are rounded to the coarser (context) precision;
    a downgrade of a wider mpf is logged.
    """
    if isinstance(x, mpf) and x._mpf_[3] > ctx.bits + GUARD_BITS:
        log.warning(
            "rounding %d-bit operand down to %d-bit context", x._mpf_[3], ctx.bits + GUARD_BITS
        )
    with ctx.work():
        if isinstance(x, str):
            return mpf(x)
        try:
            num, den = x.numerator, x.denominator  # Fraction / int
        except AttributeError:
            return +mpf(x)
        return mpf(num) / mpf(den) if den != 1 else mpf(num)


def format_real(x, ctx: PrecisionContext, digits: int | None = None) -> str:
    """Deterministic decimal rendering at round-trip precision; scientific
    notation outside the exponent window [-4, 18)."""
    if digits is None:
        digits = ctx.decimal_digits
    with mp.workprec(ctx.bits + GUARD_BITS):
        return mp.nstr(mpf(x), digits, min_fixed=-4, max_fixed=18)


def parse_real(s: str, ctx: PrecisionContext) -> Real:
    """Parse a decimal string at the context's working precision."""
    with ctx.work():
        return mpf(s)
