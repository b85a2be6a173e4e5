__all__ = [
    "QLegendreError",
    "NonConvergence",
    "DomainError",
    "DegreeOutOfRange",
    "IllConditioned",
    "EigensolveFailure",
    "TruncationTooSmall",
    "DegenerateRatio",
]


class QLegendreError(Exception):
    """Base class for all errors raised by the library."""


class NonConvergence(QLegendreError, ArithmeticError):
    """An infinite sum or product did not meet its tail bound within max_terms."""


class DomainError(QLegendreError, ValueError):
    """An argument lies outside the domain where the evaluation is defined."""


class DegreeOutOfRange(DomainError):
    """A polynomial degree exceeds the size of a finite family."""


class IllConditioned(QLegendreError, ArithmeticError):
    """A polynomial fit does not reproduce the values it was built from."""


class EigensolveFailure(QLegendreError, ArithmeticError):
    """The dense or tridiagonal eigensolver did not converge."""


class TruncationTooSmall(QLegendreError, ValueError):
    """The truncation size leaves nothing to compare after removing the boundary band."""


class DegenerateRatio(QLegendreError, ZeroDivisionError):
    """The denominator of a polynomial ratio vanishes at the evaluation point."""
