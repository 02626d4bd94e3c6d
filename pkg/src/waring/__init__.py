"""Waring rank and border rank of homogeneous polynomials: exact bounds,
explicit decompositions and limit certificates."""

from .bounds import RankReport, aggregate, count_S, monomial_border_bounds, product_bounds, universal_upper
from .errors import InexactField, LimitExceeded, ParseError, PreconditionError, WaringError
from .poly import LinearForm, Poly, format_poly, parse_poly
from .scalar import CC, QQ, QQI

__version__ = "0.1.0"

__all__ = [
    "CC",
    "QQ",
    "QQI",
    "InexactField",
    "LimitExceeded",
    "LinearForm",
    "ParseError",
    "Poly",
    "PreconditionError",
    "RankReport",
    "WaringError",
    "aggregate",
    "count_S",
    "format_poly",
    "monomial_border_bounds",
    "parse_poly",
    "product_bounds",
    "universal_upper",
]
