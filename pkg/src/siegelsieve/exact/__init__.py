"""Exact arithmetic: integers, rational polynomials, prime fields, number fields."""

from .integers import (
    COMPOSITE,
    PRIME,
    PROBABLE_PRIME,
    Factorization,
    certify_prime,
    factor_int,
    is_prime,
    legendre,
    primes_up_to,
)
from .numberfield import (
    NONSQUARE,
    SQUARE,
    ZERO,
    FieldElement,
    NumberField,
    ResidueElement,
    ResiduePlace,
    certify_irreducible,
    factor_mod,
    index_prime_test,
    places_above,
    reduce_at_place,
    residue_square_test,
    splitting_type,
)
from .polynomials import QPoly, X, discriminant, lagrange_interpolate, poly_gcd, resultant, resultant_disc

__all__ = [
    "COMPOSITE",
    "PRIME",
    "PROBABLE_PRIME",
    "Factorization",
    "certify_prime",
    "factor_int",
    "is_prime",
    "legendre",
    "primes_up_to",
    "NONSQUARE",
    "SQUARE",
    "ZERO",
    "FieldElement",
    "NumberField",
    "ResidueElement",
    "ResiduePlace",
    "certify_irreducible",
    "factor_mod",
    "index_prime_test",
    "places_above",
    "reduce_at_place",
    "residue_square_test",
    "splitting_type",
    "QPoly",
    "X",
    "discriminant",
    "lagrange_interpolate",
    "poly_gcd",
    "resultant",
    "resultant_disc",
]
