"""Exception types shared across the package."""


class Gl1RepsError(Exception):
    """Base class for all errors raised by this package."""


class NegativeRadicand(Gl1RepsError, ValueError):
    """Square root of a negative rational was requested."""


class FactorizationBoundExceeded(Gl1RepsError, ValueError):
    """Squarefree decomposition needs trial divisors beyond the configured bound."""


class MalformedSignature(Gl1RepsError, ValueError):
    pass


class NotEssentiallyTypical(Gl1RepsError, ValueError):
    pass


class GuardExceeded(Gl1RepsError, RuntimeError):
    """Enumeration would produce more tables than the guard allows."""


class InvalidCoefficient(Gl1RepsError, ArithmeticError):
    """A term with a valid target table has an undefined or imaginary coefficient.

    This never happens for a correct transcription of the matrix elements, so it
    is raised loudly instead of being dropped.
    """


class IndexOutOfRange(Gl1RepsError, IndexError):
    pass


class LengthMismatch(Gl1RepsError, ValueError):
    pass


class NotSimpleRoot(Gl1RepsError, ValueError):
    pass


class InvalidTable(Gl1RepsError, ValueError):
    """Raised when a table fails validation where a valid one is required."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))
