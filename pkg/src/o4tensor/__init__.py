"""Exact Clebsch-Gordan, so(4) and Wigner-Eckart machinery for rank-1 recurrences."""
from .cg import CGArgs, cg, cg_closed_form_j2_1
from .conventions import Convention
from .errors import DomainError, InconsistencyError, OracleInconsistencyError, UndefinedExtractionError
from .exact import ExactComplex, ExactSum, RadicalTerm, sqrt_of_rational
from .halfint import HalfInt

__version__ = "0.1.0"

__all__ = [
    "CGArgs",
    "Convention",
    "DomainError",
    "ExactComplex",
    "ExactSum",
    "HalfInt",
    "InconsistencyError",
    "OracleInconsistencyError",
    "RadicalTerm",
    "UndefinedExtractionError",
    "cg",
    "cg_closed_form_j2_1",
    "sqrt_of_rational",
]
