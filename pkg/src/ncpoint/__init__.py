"""Exact verification toolkit for graded noncommutative algebras,
truncated point modules, and color Lie algebras."""

from .freealg import NCPoly, ParseError, Presentation, parse_algebra, parse_poly, poly_to_str
from .quotient import BudgetError, DegreeCapError, QuotientCache, hilbert, minimal_relation_degrees
from .scalars import RatFunc, T, parse_scalar, scalar_to_str

__all__ = [
    "NCPoly",
    "ParseError",
    "Presentation",
    "parse_algebra",
    "parse_poly",
    "poly_to_str",
    "BudgetError",
    "DegreeCapError",
    "QuotientCache",
    "hilbert",
    "minimal_relation_degrees",
    "RatFunc",
    "T",
    "parse_scalar",
    "scalar_to_str",
]

__version__ = "0.1.0"
