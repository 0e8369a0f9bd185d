"""Exact rational arithmetic, polynomials and linear algebra."""

from .rational import Fraction, as_rational, format_rational, parse_rational
from .poly import (
    Poly,
    X,
    binom_poly,
    is_squarefree,
    newton_coefficients,
    poly_affine,
    poly_gcd,
    poly_shift,
    rational_roots,
    squarefree_part,
)
from .multipoly import MultiPoly, schur_poly, schur_specialize_alt

__all__ = [
    "Fraction",
    "MultiPoly",
    "Poly",
    "X",
    "as_rational",
    "binom_poly",
    "format_rational",
    "is_squarefree",
    "newton_coefficients",
    "parse_rational",
    "poly_affine",
    "poly_gcd",
    "poly_shift",
    "rational_roots",
    "schur_poly",
    "schur_specialize_alt",
    "squarefree_part",
]
