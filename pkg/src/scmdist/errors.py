"""Exception hierarchy shared across the package."""


class ScmdistError(Exception):
    """Base class for all scmdist-specific errors."""


class ValidationError(ScmdistError, ValueError):
    """Invalid data, graph, or configuration input."""


class NumericalError(ScmdistError, ArithmeticError):
    """Numerical breakdown (failed factorization, negative squared distance)."""
