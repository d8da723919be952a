"""Exception hierarchy shared by every fpure module."""


class FpureError(Exception):
    """Base class for all library errors."""


class DimensionError(FpureError, ValueError):
    """Variable counts or primes of two operands disagree."""


class PreconditionError(FpureError, ValueError):
    """An input violates the documented precondition of an operation."""


class HomogeneityError(PreconditionError):
    """A polynomial is not homogeneous for the requested grading."""


class ParseError(FpureError, ValueError):
    """Polynomial or rational text could not be parsed."""


class InvariantViolation(FpureError, RuntimeError):
    """A mathematically impossible state was reached; indicates a bug."""
