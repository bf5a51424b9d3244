import random
from fractions import Fraction

import pytest

from siegelsieve.exact import NumberField, QPoly
from siegelsieve.spinor import EigenformData

# the worked cubic: x^3 - x^2 - 294086 x - 59412960
CUBIC_COEFFS = (-59412960, -294086, -1, 1)


@pytest.fixture(scope="session")
def rational_field():
    return NumberField(QPoly((0, 1)))


@pytest.fixture(scope="session")
def cubic_field():
    return NumberField(QPoly(CUBIC_COEFFS))


@pytest.fixture(scope="session")
def quartic_field():
    return NumberField(QPoly((-1, -1, 0, 0, 1)))  # x^4 - x - 1


def make_rational_form(field, label, weight, rows):
    eigen = tuple(
        (p, field.from_rational(a), field.from_rational(a2)) for p, a, a2 in rows
    )
    return EigenformData(label=label, weight=weight, field=field, eigen=eigen)


def random_element(field, rng, span=20):
    return field.element(
        tuple(
            Fraction(rng.randint(-span, span), rng.choice((1, 1, 1, 2, 3)))
            for _ in range(field.degree)
        )
    )


def random_form(field, rng, label="random", weight=None, primes=(2, 3, 5)):
    weight = weight if weight is not None else rng.choice(range(4, 30, 2))
    eigen = tuple(
        (p, random_element(field, rng), random_element(field, rng)) for p in primes
    )
    return EigenformData(label=label, weight=weight, field=field, eigen=eigen)


@pytest.fixture
def rng():
    return random.Random(20260810)
