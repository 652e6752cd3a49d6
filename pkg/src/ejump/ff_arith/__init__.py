"""Exact arithmetic over F_p: polynomials, rational functions, Groebner bases."""

from .groebner import (
    GroebnerBasis,
    IdealPresentation,
    groebner_basis,
    ideal_contains,
    normal_form,
    quotient_dim,
    reduce_modulo,
    standard_monomials,
)
from .poly import (
    GREVLEX,
    LEX,
    MonomialOrder,
    MultiPoly,
    PrimeField,
    divexact,
    is_p_power_poly,
    is_prime,
    monic,
    order_by_name,
    p_root_poly,
    poly_arith,
    poly_gcd,
    poly_lcm,
)
from .ratfunc import FractionField, RatFunc, is_p_power_ratfunc, p_root_ratfunc
from .text import parse_expression, poly_from_text, ratfunc_from_text, render_poly, render_ratfunc, tokenize

__all__ = [
    "GREVLEX",
    "LEX",
    "FractionField",
    "GroebnerBasis",
    "IdealPresentation",
    "MonomialOrder",
    "MultiPoly",
    "PrimeField",
    "RatFunc",
    "divexact",
    "groebner_basis",
    "ideal_contains",
    "is_p_power_poly",
    "is_p_power_ratfunc",
    "is_prime",
    "monic",
    "normal_form",
    "order_by_name",
    "p_root_poly",
    "p_root_ratfunc",
    "parse_expression",
    "poly_from_text",
    "poly_arith",
    "poly_gcd",
    "poly_lcm",
    "quotient_dim",
    "ratfunc_from_text",
    "reduce_modulo",
    "render_poly",
    "render_ratfunc",
    "standard_monomials",
    "tokenize",
]
