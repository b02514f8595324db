"""Exception hierarchy shared across the package.

The CLI maps these onto its exit-code contract: usage/domain problems
exit 2, numerical failures exit 3.
"""

from __future__ import annotations


class ExptailError(Exception):
    """Base class for all package errors."""


class DomainError(ExptailError, ValueError):
    """An argument lies outside an operation's mathematical domain."""


class UsageError(ExptailError, ValueError):
    """Malformed request: unknown selector, bad grid, missing parameter."""


class DegeneratePointError(ExptailError, ValueError):
    """Evaluation requested at a point where the expression degenerates
    (vanishing Aitken denominator, excluded limit point)."""


class PoleError(ExptailError, ValueError):
    """Evaluation requested too close to a pole of a rational approximant."""

    def __init__(self, message: str, root=None):
        super().__init__(message)
        self.root = root


class NumericalError(ExptailError, ArithmeticError):
    """A numerical procedure failed to converge within its budget.

    ``best_estimate`` carries the most accurate value obtained before
    giving up, so callers can still inspect partial results.
    """

    def __init__(self, message: str, best_estimate=None, error_estimate=None):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.error_estimate = error_estimate
