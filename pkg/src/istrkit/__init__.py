"""Exact representation of elements by positive definite quadratic forms over
totally real orders, and failures of the integral Springer property."""

from .numfield import NumberField, OrderElement, make_field, rational_field
from .qform import QuadraticForm, diag_form, evaluate, general_form
from .repsearch import represent

__version__ = "0.1.0"

__all__ = ["NumberField", "OrderElement", "make_field", "rational_field", "QuadraticForm", "diag_form", "general_form", "evaluate", "represent"]
