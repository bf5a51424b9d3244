"""Number fields presented by a monic irreducible integer polynomial.

Elements are coordinate vectors on the power basis 1, alpha, ..., alpha^(n-1)
with reduced rational coordinates.  Residue places over a prime ell not
dividing the polynomial discriminant are the irreducible factors of the
defining polynomial mod ell; for such ell these biject with the primes of the
field above ell, which is why construction refuses near-discriminant primes.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from ..errors import (
    BadDenominatorError,
    CertificationError,
    IrreducibilityError,
    NearDiscriminantPrimeError,
    ZeroPolynomialError,
)
from . import modpoly
from .integers import factor_int, is_prime, legendre, primes_up_to
from .polynomials import QPoly, discriminant, poly_gcd

SQUARE = "square"
NONSQUARE = "nonsquare"
ZERO = "zero"


def factor_mod(f: QPoly, ell: int, rng: random.Random | None = None):
    """Factor a rational polynomial mod ell into monic irreducibles.

    Coefficient denominators must be prime to ell and f must not vanish mod
    ell.  Returns a sorted list of (coefficient tuple, exponent).
    """
    fbar = modpoly.from_qpoly(f, ell)  # raises BadDenominatorError
    if not fbar:
        raise ZeroPolynomialError(f"polynomial vanishes identically mod {ell}")
    rng = rng if rng is not None else random.Random(f"factor_mod|{ell}|{fbar}")
    return modpoly.factor_monic(fbar, ell, rng)


# -- irreducibility certification over Q ------------------------------------


def _subset_sums(degrees: list[int]) -> set[int]:
    sums = {0}
    for d in degrees:
        sums |= {s + d for s in sums}
    return sums


def _divisors_from_factorization(fact) -> list[int] | None:
    if not fact.is_complete():
        return None
    divs = [1]
    for p, e in fact.factors:
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def _integer_roots(f: QPoly) -> list[int]:
    """Integer roots of a monic integer polynomial, via divisors of the constant term."""
    c0 = int(f.coeffs[0])
    if c0 == 0:
        return [0] + _integer_roots(QPoly(f.coeffs[1:]))
    divs = _divisors_from_factorization(factor_int(c0, trial_bound=10**6))
    if divs is None:
        raise CertificationError(
            "constant term resists factoring; cannot enumerate candidate roots"
        )
    roots = []
    for d in divs:
        for r in (d, -d):
            if f(Fraction(r)) == 0:
                roots.append(r)
    return roots


def _quadratic_factor(f: QPoly) -> QPoly | None:
    """A monic integer quadratic factor of a monic integer quartic, or None."""
    c3, c2, c1, c0 = (int(f[3]), int(f[2]), int(f[1]), int(f[0]))
    if c0 == 0:
        return None  # caller has already searched roots
    divs = _divisors_from_factorization(factor_int(c0, trial_bound=10**6))
    if divs is None:
        raise CertificationError(
            "constant term resists factoring; cannot enumerate quadratic factors"
        )
    for b in sorted({d for d in divs} | {-d for d in divs}):
        if c0 % b:
            continue
        d = c0 // b
        # solve a + c = c3, a*d + b*c = c1, check b + d + a*c = c2
        if b != d:
            num = c1 - c3 * b
            if num % (d - b):
                continue
            a = num // (d - b)
            c = c3 - a
            if b + d + a * c == c2:
                return QPoly((b, a, 1))
        else:
            if b * c3 != c1:
                continue
            # a + c = c3, a*c = c2 - 2b: integer roots of t^2 - c3 t + (c2 - 2b)
            disc = c3 * c3 - 4 * (c2 - 2 * b)
            if disc < 0:
                continue
            s = math.isqrt(disc)
            if s * s == disc and (c3 - s) % 2 == 0:
                return QPoly((b, (c3 - s) // 2, 1))
    return None


def certify_irreducible(f: QPoly, seed=0, prime_budget: int = 25) -> None:
    """Raise unless monic integer f is irreducible over Q.

    Strategy: factor mod several good primes; one irreducible reduction
    certifies, and so does an empty intersection of achievable proper factor
    degrees across at least five primes.  For degree <= 4 fall back to a
    bounded rational-root and quadratic-factor search.
    """
    n = f.degree
    if n == 1:
        return
    disc = discriminant(f)
    patterns = []
    checked = 0
    for ell in primes_up_to(500):
        if checked >= prime_budget:
            break
        if disc.numerator % ell == 0:
            continue
        checked += 1
        rng = random.Random(f"certify|{seed}|{ell}")
        factors = factor_mod(f, ell, rng)
        degrees = sorted(modpoly.degree(g) for g, e in factors for _ in range(e))
        if degrees == [n]:
            return
        patterns.append(degrees)
        if len(patterns) >= 5:
            proper = set(range(1, n))
            for degs in patterns:
                proper &= _subset_sums(degs)
            if not proper:
                return
    if n <= 4:
        roots = _integer_roots(f)
        if roots:
            raise IrreducibilityError(f"rational root {roots[0]} found")
        if n <= 3:
            return  # no root and degree <= 3 means irreducible
        quad = _quadratic_factor(f)
        if quad is not None:
            raise IrreducibilityError(f"quadratic factor {quad!r} found")
        return
    raise CertificationError(
        f"cannot certify irreducibility of degree-{n} polynomial within budget"
    )


# -- the field and its elements ----------------------------------------------


class NumberField:
    """Q[alpha] for alpha a root of a monic irreducible integer polynomial."""

    __slots__ = ("min_poly", "degree", "poly_disc", "_reduction_table")

    def __init__(self, min_poly, *, seed=0):
        if not isinstance(min_poly, QPoly):
            min_poly = QPoly(min_poly)
        if min_poly.is_zero() or min_poly.degree < 1:
            raise ZeroPolynomialError("defining polynomial must have degree >= 1")
        if not min_poly.is_monic():
            raise ValueError("defining polynomial must be monic")
        if not min_poly.has_integer_coeffs():
            raise ValueError("defining polynomial must have integer coefficients")
        certify_irreducible(min_poly, seed=seed)
        disc = discriminant(min_poly)
        assert disc.denominator == 1 and disc != 0
        self.min_poly = min_poly
        self.degree = min_poly.degree
        self.poly_disc = int(disc)
        # coordinates of alpha^n ... alpha^(2n-2) on the power basis
        n = self.degree
        table = []
        prev = [-c for c in min_poly.coeffs[:-1]]
        table.append(tuple(prev))
        for _ in range(n - 2):
            shifted = [Fraction(0)] + prev[:-1]
            top = prev[-1]
            prev = [s + top * t for s, t in zip(shifted, table[0])]
            table.append(tuple(prev))
        self._reduction_table = tuple(table)

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.min_poly == other.min_poly

    def __hash__(self):
        return hash(self.min_poly)

    def __repr__(self):
        return f"NumberField({self.min_poly!r})"

    def element(self, coords) -> "FieldElement":
        cs = tuple(Fraction(c) for c in coords)
        if len(cs) != self.degree:
            raise ValueError(f"expected {self.degree} coordinates, got {len(cs)}")
        return FieldElement(self, cs)

    def from_rational(self, q) -> "FieldElement":
        return self.element((q,) + (0,) * (self.degree - 1))

    def zero(self) -> "FieldElement":
        return self.from_rational(0)

    def one(self) -> "FieldElement":
        return self.from_rational(1)

    def generator(self) -> "FieldElement":
        if self.degree == 1:
            # alpha is the root of the linear polynomial, a rational number
            return self.from_rational(-self.min_poly.coeffs[0])
        return self.element((0, 1) + (0,) * (self.degree - 2))

    def _reduce_coords(self, raw: list[Fraction]) -> tuple[Fraction, ...]:
        n = self.degree
        out = list(raw[:n]) + [Fraction(0)] * max(0, n - len(raw))
        for i in range(n, len(raw)):
            c = raw[i]
            if c:
                for j, t in enumerate(self._reduction_table[i - n]):
                    out[j] += c * t
        return tuple(out)


class FieldElement:
    """An element of a NumberField in power-basis coordinates."""

    __slots__ = ("field", "coords", "_charpoly")

    def __init__(self, field: NumberField, coords: tuple[Fraction, ...]):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "_charpoly", None)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return FieldElement(
            self.field, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, tuple(a * other for a in self.coords))
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.field != self.field:
            raise ValueError("elements of different fields")
        raw = [Fraction(0)] * (2 * self.field.degree - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    raw[i + j] += a * b
        return FieldElement(self.field, self.field._reduce_coords(raw))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not supported")
        out = self.field.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.from_rational(other)
        return (
            isinstance(other, FieldElement)
            and self.field == other.field
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.field, self.coords))

    def __bool__(self):
        return any(self.coords)

    def __repr__(self):
        return f"FieldElement({list(self.coords)})"

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coords[0]

    # -- invariants via the multiplication matrix ----------------------------

    def charpoly(self) -> QPoly:
        """Characteristic polynomial of multiplication by this element."""
        if self._charpoly is not None:
            return self._charpoly
        n = self.field.degree
        # multiplication matrix: column j = coordinates of self * alpha^j
        gen = self.field.generator()
        cur = self
        cols = [self.coords]
        for _ in range(n - 1):
            cur = cur * gen
            cols.append(cur.coords)
        mat = [[cols[j][i] for j in range(n)] for i in range(n)]
        # Faddeev-LeVerrier: exact characteristic coefficients over Q
        coeffs = [Fraction(0)] * n + [Fraction(1)]
        aux = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
        work = mat
        for m in range(1, n + 1):
            if m > 1:
                work = [
                    [sum(mat[i][k] * aux[k][j] for k in range(n)) for j in range(n)]
                    for i in range(n)
                ]
            trace = sum(work[i][i] for i in range(n))
            c = -trace / m
            coeffs[n - m] = c
            aux = [
                [work[i][j] + (c if i == j else 0) for j in range(n)] for i in range(n)
            ]
        poly = QPoly(coeffs)
        object.__setattr__(self, "_charpoly", poly)
        return poly

    def norm(self) -> Fraction:
        n = self.field.degree
        c0 = self.charpoly()[0]
        return c0 if n % 2 == 0 else -c0

    def trace(self) -> Fraction:
        return -self.charpoly()[self.field.degree - 1]

    def elem_disc(self) -> Fraction:
        """Discriminant of the characteristic polynomial.

        Zero exactly when the element does not generate the field (for degree 1
        the linear characteristic polynomial gives 1).
        """
        return discriminant(self.charpoly())

    def is_generator(self) -> bool:
        """Whether Q(element) is the whole field: the charpoly is squarefree."""
        cp = self.charpoly()
        return poly_gcd(cp, cp.derivative()).degree == 0

    def denominator_lcm(self) -> int:
        out = 1
        for c in self.coords:
            out = out * c.denominator // math.gcd(out, c.denominator)
        return out


# -- residue places -----------------------------------------------------------


@dataclass(frozen=True)
class ResiduePlace:
    """A prime of the field over ell, as an irreducible factor of min_poly mod ell."""

    field: NumberField
    ell: int
    local_factor: tuple[int, ...]

    @property
    def residue_degree(self) -> int:
        return len(self.local_factor) - 1

    @property
    def order(self) -> int:
        return self.ell ** self.residue_degree

    def __repr__(self):
        return f"ResiduePlace(ell={self.ell}, f={list(self.local_factor)})"

    def label(self) -> str:
        return f"ell={self.ell},f={list(self.local_factor)}"

    def element(self, coeffs) -> "ResidueElement":
        cs = modpoly.trim(tuple(c % self.ell for c in coeffs))
        return ResidueElement(self, modpoly.mod(cs, self.local_factor, self.ell))

    def reduce(self, elem: FieldElement) -> "ResidueElement":
        return reduce_at_place(elem, self)


@dataclass(frozen=True)
class ResidueElement:
    """An element of the residue field F_(ell^r) of a place."""

    place: ResiduePlace
    coeffs: tuple[int, ...]

    def __mul__(self, other: "ResidueElement") -> "ResidueElement":
        ell = self.place.ell
        prod = modpoly.mul(self.coeffs, other.coeffs, ell)
        return ResidueElement(self.place, modpoly.mod(prod, self.place.local_factor, ell))

    def __add__(self, other: "ResidueElement") -> "ResidueElement":
        return ResidueElement(
            self.place, modpoly.add(self.coeffs, other.coeffs, self.place.ell)
        )

    def __pow__(self, e: int) -> "ResidueElement":
        return ResidueElement(
            self.place,
            modpoly.pow_mod(self.coeffs, e, self.place.local_factor, self.place.ell),
        )

    def is_zero(self) -> bool:
        return not self.coeffs

    def norm_to_prime_field(self) -> int:
        """Norm down to F_ell, the product of the Frobenius conjugates."""
        if self.is_zero():
            return 0
        q, ell = self.place.order, self.place.ell
        out = self ** ((q - 1) // (ell - 1))
        assert len(out.coeffs) <= 1
        return out.coeffs[0] if out.coeffs else 0


def places_above(field: NumberField, ell: int, rng: random.Random | None = None):
    """The places of the field over ell, one per irreducible factor mod ell.

    Refuses primes dividing the polynomial discriminant: for those the factor
    pattern no longer matches the splitting of ell.
    """
    if not is_prime(ell):
        raise ValueError(f"{ell} is not prime")
    if field.poly_disc % ell == 0:
        raise NearDiscriminantPrimeError(ell)
    factors = factor_mod(field.min_poly, ell, rng)
    assert all(e == 1 for _, e in factors)
    places = [ResiduePlace(field, ell, f) for f, _ in factors]
    places.sort(key=lambda pl: (pl.residue_degree, pl.local_factor))
    assert sum(pl.residue_degree for pl in places) == field.degree
    return places


def splitting_type(field: NumberField, ell: int, rng=None) -> tuple[int, ...]:
    """Residue degrees over ell, sorted ascending."""
    return tuple(pl.residue_degree for pl in places_above(field, ell, rng))


def reduce_at_place(elem: FieldElement, place: ResiduePlace) -> ResidueElement:
    """Coordinate-wise reduction mod ell followed by evaluation mod the local factor."""
    ell = place.ell
    coords = []
    for c in elem.coords:
        if c.denominator % ell == 0:
            raise BadDenominatorError(ell, "field element coordinate")
        coords.append(c.numerator * pow(c.denominator, -1, ell) % ell)
    reduced = modpoly.mod(modpoly.trim(coords), place.local_factor, ell)
    return ResidueElement(place, reduced)


def residue_square_test(x, modulus=None) -> str:
    """Classify x as "square", "nonsquare" or "zero".

    Either x is a ResidueElement (modulus omitted), or x is an integer and
    modulus an odd prime; the integer form is the Legendre symbol by the Euler
    criterion.
    """
    if isinstance(x, ResidueElement):
        if x.is_zero():
            return ZERO
        q = x.place.order
        if q % 2 == 0:
            raise ValueError("square test needs an odd residue field")
        power = x ** ((q - 1) // 2)
        return SQUARE if power.coeffs == (1,) else NONSQUARE
    if modulus is None:
        raise TypeError("integer square test needs a modulus")
    if modulus % 2 == 0 or not is_prime(modulus):
        raise ValueError(f"modulus {modulus} is not an odd prime")
    symbol = legendre(int(x), modulus)
    return ZERO if symbol == 0 else (SQUARE if symbol == 1 else NONSQUARE)


# -- index primes (Dedekind's criterion) --------------------------------------


def index_prime_test(min_poly: QPoly, ell: int, rng: random.Random | None = None) -> bool:
    """True when ell divides the index of Z[alpha] in the maximal order.

    Dedekind's criterion: with fbar = prod(g_i^e_i), g = prod(g_i) lifted
    monic, h a monic lift of fbar/gbar and T = (g*h - f)/ell, the order is
    ell-maximal iff gcd(Tbar, gbar, hbar) = 1.
    """
    fbar = modpoly.from_qpoly(min_poly, ell)
    rng = rng if rng is not None else random.Random(f"dedekind|{ell}|{fbar}")
    factors = modpoly.factor_monic(fbar, ell, rng)
    gbar = (1,)
    for g, _ in factors:
        gbar = modpoly.mul(gbar, g, ell)
    hbar = modpoly.divmod_(fbar, gbar, ell)[0]
    g_lift = QPoly(gbar)
    h_lift = QPoly(hbar)
    t_int = (g_lift * h_lift - min_poly) * Fraction(1, ell)
    assert t_int.has_integer_coeffs()
    tbar = modpoly.from_qpoly(t_int, ell)
    common = modpoly.gcd(modpoly.gcd(tbar, gbar, ell), hbar, ell)
    return modpoly.degree(common) > 0
