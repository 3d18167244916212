"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class OracleInconsistencyError(ArithmeticError):
    """Reduced matrix elements extracted from different slots disagree."""


class UndefinedExtractionError(ArithmeticError):
    """Every Clebsch-Gordan slot for a reduced element vanishes."""


class InconsistencyError(ArithmeticError):
    """A derived relation has no terms but a nonzero constant side."""
