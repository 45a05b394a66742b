"""Exact computation in the bicyclic monoid algebra k<x,y>/(yx - 1)."""

from .algebra import (
    ONE,
    X,
    Y,
    ZERO,
    AlgebraElement,
    LaurentPoly,
    TruncMatrix,
    center_slice,
    diffop_action,
    involution,
    laurent_image,
    matrix_unit,
    monomial,
    parse_element,
    scalar,
    to_matrix,
)

__all__ = [
    "AlgebraElement",
    "LaurentPoly",
    "TruncMatrix",
    "ONE",
    "X",
    "Y",
    "ZERO",
    "center_slice",
    "diffop_action",
    "involution",
    "laurent_image",
    "matrix_unit",
    "monomial",
    "parse_element",
    "scalar",
    "to_matrix",
]
