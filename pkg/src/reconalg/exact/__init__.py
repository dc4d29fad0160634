"""Exact arithmetic: rationals, cyclotomic numbers, sparse polynomials, matrices."""

from __future__ import annotations

from fractions import Fraction as Rational

from .bivar import BivarPoly, format_bivar, parse_bivar
from .cyclotomic import Cyclotomic, cyclotomic_coeffs, cyclotomic_polynomial, totient
from .multipoly import MultiPoly
from .polymatrix import PolyMatrix, matrix_mul

__all__ = [
    "BivarPoly",
    "Cyclotomic",
    "MultiPoly",
    "PolyMatrix",
    "Rational",
    "cyclotomic_coeffs",
    "cyclotomic_polynomial",
    "format_bivar",
    "matrix_mul",
    "parse_bivar",
    "totient",
]
