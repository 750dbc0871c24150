"""Exact split-octonion arithmetic and additive solutions of f(x) + x^2 g(x^-1) = 0."""

from .errors import (
    CapacityError,
    DomainError,
    InapplicableError,
    NotInvertibleError,
    ParseError,
    SplitOctError,
)
from .fields import FieldElem, FieldSpec, parse_field
from .octonion import Octonion
from .ratfunc2 import Poly2, RatFunc2, Z2T, rf_parse

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "DomainError",
    "FieldElem",
    "FieldSpec",
    "InapplicableError",
    "NotInvertibleError",
    "Octonion",
    "ParseError",
    "Poly2",
    "RatFunc2",
    "SplitOctError",
    "Z2T",
    "parse_field",
    "rf_parse",
]
