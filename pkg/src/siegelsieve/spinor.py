"""Degree-4 Hecke characteristic polynomials and their derived coefficients.

For an eigenform of even weight k with eigenvalues a_p, a_{p^2} the local
quartic at p is

    x^4 - a_p x^3 + b x^2 - a_p P x + P^2,       P = p^(2k-3),

where b = a_p^2 - a_{p^2} - p^(2k-4) is the quadratic coefficient.  The roots
pair as (root, P/root), which forces the reciprocity identity
x^4 * Pol(P/x) = P^2 * Pol(x).

The splitting discriminant d is the coefficient square whose root separates
the quartic into two quadratics with constant term P:

    Pol = (x^2 - (a_p/2 + s) x + P) (x^2 - (a_p/2 - s) x + P),   s^2 = d.

Expanding forces d = a_p^2/4 - b + 2P ("factorization" normalization).  A
historical variant that is short one P ("printed": a_p^2/4 - b + P) is kept
behind a switch so reports can record which one reproduces reference data.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy

from .config import DP_FACTORIZATION, DP_PRINTED
from .exact import FieldElement, NumberField, is_prime


@dataclass(frozen=True)
class EigenformData:
    """A finite eigenvalue table for one eigenform.

    The flags are asserted metadata about the underlying automorphic object
    (they are not decidable from a finite table) and are echoed into reports.
    """

    label: str
    weight: int
    field: NumberField
    eigen: tuple[tuple[int, FieldElement, FieldElement], ...]
    multiplicity_one: bool = True
    interesting: bool = True

    def __post_init__(self):
        if self.weight % 2 != 0 or self.weight < 4:
            raise ValueError(f"weight must be an even integer >= 4, got {self.weight}")
        if not self.eigen:
            raise ValueError("eigenvalue table is empty")
        seen = set()
        for p, a, a2 in self.eigen:
            if not is_prime(p):
                raise ValueError(f"table key {p} is not prime")
            if p in seen:
                raise ValueError(f"duplicate table key {p}")
            seen.add(p)
            if a.field != self.field or a2.field != self.field:
                raise ValueError(f"eigenvalues at p={p} do not live in the form's field")

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _, _ in self.eigen)

    def has_prime(self, p: int) -> bool:
        return any(q == p for q, _, _ in self.eigen)

    def a(self, p: int) -> FieldElement:
        for q, a, _ in self.eigen:
            if q == p:
                return a
        raise KeyError(f"prime {p} is not in the eigenvalue table")

    def a2(self, p: int) -> FieldElement:
        for q, _, a2 in self.eigen:
            if q == p:
                return a2
        raise KeyError(f"prime {p} is not in the eigenvalue table")


@dataclass(frozen=True)
class HeckePolynomial:
    """The local quartic at p, with its reciprocity invariant checked."""

    prime_p: int
    weight: int
    coeffs: tuple[FieldElement, ...]  # low degree first, length 5, monic

    def __post_init__(self):
        if len(self.coeffs) != 5 or self.coeffs[4] != 1:
            raise ValueError("a Hecke polynomial is monic of degree 4")
        P = Fraction(self.prime_p) ** (2 * self.weight - 3)
        c0, c1, _, c3, _ = self.coeffs
        if c0 != c3.field.from_rational(P * P) or c1 != c3 * P:
            raise ValueError("reciprocity invariant violated")

    def __call__(self, x):
        field = self.coeffs[0].field
        if isinstance(x, (int, Fraction)):
            x = field.from_rational(x)
        acc = field.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    @property
    def middle_root_scale(self) -> Fraction:
        """p^(2k-3), the product of each reciprocal root pair."""
        return Fraction(self.prime_p) ** (2 * self.weight - 3)


def derived_coeffs(
    form: EigenformData, p: int, variant: str = DP_FACTORIZATION
) -> tuple[FieldElement, FieldElement]:
    """(b, d): the quadratic coefficient and the splitting discriminant at p.

    The default d is the factorization-consistent a_p^2/4 - b + 2 p^(2k-3);
    variant "printed" drops one p^(2k-3).
    """
    k = form.weight
    a = form.a(p)
    a2 = form.a2(p)
    b = a * a - a2 - Fraction(p) ** (2 * k - 4)
    d = a * a * Fraction(1, 4) - b + 2 * Fraction(p) ** (2 * k - 3)
    if variant == DP_PRINTED:
        d = d - Fraction(p) ** (2 * k - 3)
    elif variant != DP_FACTORIZATION:
        raise ValueError(f"unknown d variant {variant!r}")
    return b, d


def hecke_charpoly(form: EigenformData, p: int) -> HeckePolynomial:
    """The quartic x^4 - a x^3 + b x^2 - a P x + P^2 at p."""
    k = form.weight
    a = form.a(p)
    b, _ = derived_coeffs(form, p)
    P = Fraction(p) ** (2 * k - 3)
    one = form.field.one()
    return HeckePolynomial(
        prime_p=p,
        weight=k,
        coeffs=(form.field.from_rational(P * P), -(a * P), b, -a, one),
    )


def euler_factor(form: EigenformData, p: int) -> tuple[FieldElement, ...]:
    """Coefficients (low degree first) of the local factor 1 - a x + b x^2 - a P x^3 + P^2 x^4.

    This is x^4 * Pol(1/x): the coefficient sequence of the quartic reversed.
    """
    return tuple(reversed(hecke_charpoly(form, p).coeffs))


@dataclass(frozen=True)
class FactorizationCheck:
    passed: bool
    # coefficientwise difference (constant part, s part) per degree, on failure
    witness: tuple[tuple[FieldElement, FieldElement], ...] | None


def standard_factorization_check(
    form: EigenformData, p: int, variant: str = DP_FACTORIZATION
) -> FactorizationCheck:
    """Expand (x^2 - (a/2 + s)x + P)(x^2 - (a/2 - s)x + P) in E[s]/(s^2 - d).

    With the factorization-consistent d this must reproduce the quartic
    exactly; the witness records the coefficientwise difference otherwise.
    """
    k = form.weight
    a = form.a(p)
    b, d = derived_coeffs(form, p, variant)
    P = form.field.from_rational(Fraction(p) ** (2 * k - 3))
    zero = form.field.zero()
    one = form.field.one()
    half_a = a * Fraction(1, 2)

    # elements of E[s]/(s^2 - d) as (u, v) = u + v s
    def emul(x, y):
        return (x[0] * y[0] + x[1] * y[1] * d, x[0] * y[1] + x[1] * y[0])

    f1 = ((P, zero), (-half_a, -one), (one, zero))
    f2 = ((P, zero), (-half_a, one), (one, zero))
    prod = [(zero, zero)] * 5
    for i, ci in enumerate(f1):
        for j, cj in enumerate(f2):
            m = emul(ci, cj)
            prod[i + j] = (prod[i + j][0] + m[0], prod[i + j][1] + m[1])
    expected = hecke_charpoly(form, p).coeffs
    diff = tuple((u - e, v) for (u, v), e in zip(prod, expected))
    passed = all(du == zero and dv == zero for du, dv in diff)
    return FactorizationCheck(passed=passed, witness=None if passed else diff)


def _embeddings(field: NumberField) -> list[complex]:
    coeffs = [float(c) for c in field.min_poly.coeffs]
    return list(numpy.roots(list(reversed(coeffs)))) if field.degree >= 1 else []


def _embed_abs(elem: FieldElement, roots: list[complex]) -> list[float]:
    out = []
    for r in roots:
        val = 0j
        for c in reversed(elem.coords):
            val = val * r + complex(float(c))
        out.append(abs(val))
    return out


def ramanujan_sanity(form: EigenformData, p: int, slack: float = 0.01) -> list[str]:
    """Floating-point tripwire on eigenvalue sizes; warnings only, never blocks.

    All four roots of the quartic have absolute value p^((2k-3)/2), so every
    archimedean embedding must satisfy |a_p| <= 4 p^((2k-3)/2) and
    |b| <= 6 p^(2k-3).
    """
    k = form.weight
    roots = _embeddings(form.field)
    bound_a = 4.0 * float(p) ** ((2 * k - 3) / 2.0) * (1 + slack)
    bound_b = 6.0 * float(p) ** (2 * k - 3) * (1 + slack)
    warnings = []
    b, _ = derived_coeffs(form, p)
    for absval in _embed_abs(form.a(p), roots):
        if absval > bound_a:
            warnings.append(
                f"{form.label}: |a_{p}| ~ {absval:.6g} exceeds the root bound {bound_a:.6g}"
            )
            break
    for absval in _embed_abs(b, roots):
        if absval > bound_b:
            warnings.append(
                f"{form.label}: |b at {p}| ~ {absval:.6g} exceeds the root bound {bound_b:.6g}"
            )
            break
    return warnings
