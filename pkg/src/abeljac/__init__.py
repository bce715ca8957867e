"""Exact workbench for the Abel-type equation behind a minimal Jacobian pair."""

from .params import DEFAULT, Context, ContextError, ParamPoly
from .laurent import IntegrationError, LaurentPoly, derive, exact_divide, integrate, specialize
from .textio import ParseError, format_poly, parse_poly

__version__ = "0.1.0"

__all__ = [
    "DEFAULT", "Context", "ContextError", "ParamPoly",
    "IntegrationError", "LaurentPoly", "derive", "exact_divide", "integrate", "specialize",
    "ParseError", "format_poly", "parse_poly",
]
