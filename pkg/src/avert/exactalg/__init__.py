"""Exact arithmetic foundation: big-integer helpers, integer matrix normal
forms, and polynomials over Q and over prime fields."""

from .integers import factorize, introot, is_probable_prime, isqrt
from .intmatrix import (
    det_int,
    hermite_normal_form,
    identity_matrix,
    mat_mul,
    smith_normal_form,
)
from .poly import FpPoly, QPoly, factor_mod_p

__all__ = [
    "isqrt",
    "introot",
    "is_probable_prime",
    "factorize",
    "hermite_normal_form",
    "smith_normal_form",
    "det_int",
    "mat_mul",
    "identity_matrix",
    "QPoly",
    "FpPoly",
    "factor_mod_p",
]
