import pytest
from mpmath import mp, mpf

from exptail.precision import PrecisionContext

# Test-side arithmetic (references, closed forms, comparisons) runs far
# above the 256-bit contexts under test, so ambient rounding never
# contaminates an assertion.  Library calls set their own precision.
mp.prec = 640


@pytest.fixture(scope="session")
def ctx():
    return PrecisionContext(256)


@pytest.fixture(scope="session")
def ctx512():
    return PrecisionContext(512)


def _to_mpf(x) -> mpf:
    if hasattr(x, "numerator") and not isinstance(x, int):
        return mpf(x.numerator) / x.denominator
    return mpf(x)


def rel_err(value, reference) -> mpf:
    with mp.workprec(600):
        reference = _to_mpf(reference)
        if reference == 0:
            return abs(_to_mpf(value))
        return abs(_to_mpf(value) - reference) / abs(reference)
