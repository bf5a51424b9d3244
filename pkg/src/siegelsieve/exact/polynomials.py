"""Dense univariate polynomials over the rationals, exact throughout.

Coefficients are `fractions.Fraction` stored low degree first with no trailing
zeros; the zero polynomial has an empty coefficient tuple.  Everything the
rest of the package needs lives here: ring arithmetic, division, monic gcd,
resultants and discriminants, composition and evaluation.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from ..errors import ZeroPolynomialError


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"rational coefficient expected, got {type(c).__name__}")


class QPoly:
    """A polynomial with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("QPoly is immutable")

    # -- basic queries ------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ZeroPolynomialError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def has_integer_coeffs(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __eq__(self, other) -> bool:
        return isinstance(other, QPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "QPoly") -> "QPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return QPoly(out)

    def __neg__(self) -> "QPoly":
        return QPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "QPoly") -> "QPoly":
        return self + (-other)

    def __mul__(self, other) -> "QPoly":
        if isinstance(other, (int, Fraction)):
            return QPoly(tuple(c * other for c in self.coeffs))
        if not isinstance(other, QPoly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return QPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return QPoly(out)

    __rmul__ = __mul__

    def __divmod__(self, other: "QPoly"):
        if other.is_zero():
            raise ZeroPolynomialError("division by the zero polynomial")
        rem = list(self.coeffs)
        dv = other.coeffs
        dq = len(dv) - 1
        lead = dv[-1]
        if len(rem) < len(dv):
            return QPoly(), QPoly(rem)
        quot = [Fraction(0)] * (len(rem) - dq)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i]
            if c:
                q = c / lead
                quot[i - dq] = q
                for j in range(dq + 1):
                    rem[i - dq + j] -= q * dv[j]
        return QPoly(quot), QPoly(rem)

    def __floordiv__(self, other: "QPoly") -> "QPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "QPoly") -> "QPoly":
        return divmod(self, other)[1]

    def __pow__(self, e: int) -> "QPoly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        out = QPoly((1,))
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __call__(self, x):
        """Evaluate by Horner; works for Fraction/int and anything with * and +."""
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        return acc if acc is not None else Fraction(0)

    # -- calculus and normal forms ------------------------------------------

    def derivative(self) -> "QPoly":
        return QPoly(tuple(i * c for i, c in enumerate(self.coeffs) if i > 0))

    def monic(self) -> "QPoly":
        lead = self.leading
        if lead == 1:
            return self
        return QPoly(tuple(c / lead for c in self.coeffs))

    def compose(self, inner: "QPoly") -> "QPoly":
        """self(inner(x)), exact."""
        acc = QPoly()
        for c in reversed(self.coeffs):
            acc = acc * inner + QPoly((c,))
        return acc

    def __repr__(self):
        if self.is_zero():
            return "QPoly(0)"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                sign = "-" if c < 0 else ""
                var = "x" if i == 1 else f"x^{i}"
                terms.append(f"{sign}{mag}{var}" if not terms else f"{sign or '+'}{mag}{var}")
        text = terms[0]
        for t in terms[1:]:
            text += f" - {t[1:]}" if t.startswith("-") else f" + {t.lstrip('+')}"
        return f"QPoly({text})"


X = QPoly((0, 1))


def poly_gcd(f: QPoly, g: QPoly) -> QPoly:
    """Monic gcd over the rationals (1 for coprime, 0 only if both are 0)."""
    while not g.is_zero():
        f, g = g, f % g
    return f.monic() if not f.is_zero() else f


def resultant(f: QPoly, g: QPoly) -> Fraction:
    """Res(f, g), exact, via the Euclidean recurrence.

    Both inputs must be nonzero.  Zero output means a common root.
    """
    if f.is_zero() or g.is_zero():
        raise ZeroPolynomialError("resultant of the zero polynomial")
    res = Fraction(1)
    if f.degree < g.degree:
        if (f.degree * g.degree) % 2 == 1:
            res = -res
        f, g = g, f
    while g.degree > 0:
        r = f % g
        if r.is_zero():
            return Fraction(0)
        res *= g.leading ** (f.degree - r.degree)
        if (f.degree * g.degree) % 2 == 1:
            res = -res
        f, g = g, r
    return res * g.coeffs[0] ** f.degree


def discriminant(f: QPoly) -> Fraction:
    """disc(f) = (-1)^(n(n-1)/2) Res(f, f') / lc(f); zero iff f has a repeated root."""
    if f.is_zero():
        raise ZeroPolynomialError("discriminant of the zero polynomial")
    n = f.degree
    if n == 0:
        raise ZeroPolynomialError("discriminant of a constant polynomial")
    if n == 1:
        return Fraction(1)
    res = resultant(f, f.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * res / f.leading


def resultant_disc(f: QPoly, g: QPoly) -> tuple[Fraction, Fraction]:
    """(Res(f, g), disc(f)) in one call."""
    return resultant(f, g), discriminant(f)


def lagrange_interpolate(points: Sequence[tuple[Fraction, Fraction]]) -> QPoly:
    """The unique polynomial of degree < len(points) through the given points."""
    out = QPoly()
    for i, (xi, yi) in enumerate(points):
        term = QPoly((yi,))
        for j, (xj, _) in enumerate(points):
            if i == j:
                continue
            term = term * QPoly((-xj, 1)) * Fraction(1, xi - xj)
        out = out + term
    return out
