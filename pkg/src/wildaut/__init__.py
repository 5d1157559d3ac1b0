"""Exact analysis of Artin-Schreier covers W^p - W = f(X) and their wild inertia groups."""

from .field import Field, FieldElement, arith, embed, field_create, frobenius
from .poly import BiPoly, CoverError, UniPoly, cover_invariants, poly_gcd, reduce_artin_schreier

__all__ = [
    "BiPoly",
    "CoverError",
    "Field",
    "FieldElement",
    "UniPoly",
    "arith",
    "cover_invariants",
    "embed",
    "field_create",
    "frobenius",
    "poly_gcd",
    "reduce_artin_schreier",
]
