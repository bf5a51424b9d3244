import random
from fractions import Fraction

import pytest

from siegelsieve.errors import BadDenominatorError, ZeroPolynomialError
from siegelsieve.exact import QPoly, factor_mod
from siegelsieve.exact import modpoly

from conftest import CUBIC_COEFFS


def brute_factor(f, ell):
    """Root-scan factorization oracle for degree <= 3 over F_ell."""
    f = modpoly.monic(f, ell)
    out = []
    changed = True
    while changed and modpoly.degree(f) > 0:
        changed = False
        for a in range(ell):
            if modpoly.eval_at(f, a, ell) == 0:
                out.append(((-a) % ell, 1))
                f = modpoly.divmod_(f, ((-a) % ell, 1), ell)[0]
                changed = True
                break
    if modpoly.degree(f) > 0:
        assert modpoly.degree(f) <= 3, "oracle only good through cubics"
        out.append(f)  # no roots left: irreducible for degree 2 or 3
    return sorted(out, key=lambda g: (len(g), g))


def test_factor_x2_plus_1():
    fs = factor_mod(QPoly((1, 0, 1)), 5)
    assert fs == [((2, 1), 1), ((3, 1), 1)]  # (x + 2)(x + 3)
    fs = factor_mod(QPoly((1, 0, 1)), 7)
    assert fs == [((1, 0, 1), 1)]  # irreducible


def test_cubic_inert_at_59():
    fs = factor_mod(QPoly(CUBIC_COEFFS), 59)
    assert len(fs) == 1 and fs[0][1] == 1
    assert modpoly.degree(fs[0][0]) == 3


def test_cubic_against_brute_oracle():
    f = QPoly(CUBIC_COEFFS)
    for ell in (5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73):
        fbar = modpoly.from_qpoly(f, ell)
        expected = brute_factor(fbar, ell)
        got = sorted(
            [g for g, e in factor_mod(f, ell) for _ in range(e)],
            key=lambda g: (len(g), g),
        )
        assert got == expected, f"mismatch at ell={ell}"


def test_factor_reassembly_random():
    rng = random.Random(505)
    for _ in range(200):
        ell = rng.choice((2, 3, 5, 7, 11, 13))
        degree = rng.randint(1, 8)
        coeffs = [rng.randrange(ell) for _ in range(degree)] + [1]
        f = modpoly.trim(coeffs)
        if modpoly.degree(f) < 1:
            continue
        factors = modpoly.factor_monic(f, ell, rng)
        product = (1,)
        total_degree = 0
        for g, e in factors:
            assert modpoly.is_irreducible(g, ell)
            assert g[-1] == 1
            total_degree += modpoly.degree(g) * e
            for _ in range(e):
                product = modpoly.mul(product, g, ell)
        assert product == f
        assert total_degree == modpoly.degree(f)


def test_factor_with_repeated_and_pth_power_parts():
    ell = 3
    rng = random.Random(1)
    # (x+1)^3 (x+2)^2 x: exercises the char-p branch of the squarefree split
    f = (1,)
    for g, e in (((1, 1), 3), ((2, 1), 2), ((0, 1), 1)):
        for _ in range(e):
            f = modpoly.mul(f, g, ell)
    factors = modpoly.factor_monic(f, ell, rng)
    assert sorted(factors) == sorted([((1, 1), 3), ((2, 1), 2), ((0, 1), 1)])


def test_factor_mod_char_2():
    rng = random.Random(2)
    # x^2 + x + 1 is the unique irreducible quadratic mod 2
    assert modpoly.factor_monic((1, 1, 1), 2, rng) == [((1, 1, 1), 1)]
    f = modpoly.mul((1, 1, 1), (0, 1), 2)
    f = modpoly.mul(f, (1, 1), 2)
    assert sorted(modpoly.factor_monic(f, 2, rng)) == sorted(
        [((1, 1, 1), 1), ((0, 1), 1), ((1, 1), 1)]
    )


def test_factor_mod_errors():
    with pytest.raises(BadDenominatorError):
        factor_mod(QPoly((1, 0, 1)) * Fraction(1, 5), 5)
    with pytest.raises(ZeroPolynomialError):
        factor_mod(QPoly((5, 10)), 5)


def test_is_irreducible_against_factorization():
    rng = random.Random(42)
    for _ in range(100):
        ell = rng.choice((2, 3, 5, 7))
        coeffs = [rng.randrange(ell) for _ in range(rng.randint(1, 6))] + [1]
        f = modpoly.trim(coeffs)
        if modpoly.degree(f) < 1:
            continue
        factors = modpoly.factor_monic(f, ell, rng)
        expected = len(factors) == 1 and factors[0][1] == 1 and factors[0][0] == f
        assert modpoly.is_irreducible(f, ell) == expected
