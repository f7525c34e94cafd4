"""Exception types shared across the package."""


class SixLinesError(Exception):
    """Base class; ``code`` is the machine-readable tag used in CLI reports."""

    code = "error"


class DomainError(SixLinesError, ValueError):
    code = "domain"


class NonConvergenceError(SixLinesError, RuntimeError):
    code = "nonconvergence"


class InvariantViolation(SixLinesError, AssertionError):
    """An internal invariant failed; indicates a bug, not bad input."""

    code = "invariant"


class SingularDenominatorError(SixLinesError, ZeroDivisionError):
    code = "singular"


class InvalidPeriodError(SixLinesError, ValueError):
    """Period point is not on the theta divisor V(theta)."""

    code = "invalid_period"
