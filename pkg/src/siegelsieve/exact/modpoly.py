"""Polynomials over prime fields F_ell as plain coefficient tuples.

Coefficients are ints in [0, ell), stored low degree first, no trailing
zeros; () is the zero polynomial.  Factorization is squarefree splitting,
then distinct-degree splitting via gcd(x^(ell^i) - x, f), then seeded
equal-degree (Cantor-Zassenhaus) splitting; the char-2 case uses the trace
map instead of the power map.
"""

from __future__ import annotations

import random
from fractions import Fraction

from ..errors import BadDenominatorError, ZeroPolynomialError
from .polynomials import QPoly

Coeffs = tuple


def trim(f) -> tuple:
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return tuple(f)


def degree(f) -> int:
    return len(f) - 1


def is_zero(f) -> bool:
    return not f


def from_qpoly(f: QPoly, ell: int) -> tuple:
    """Reduce a rational polynomial mod ell; denominators must be units."""
    out = []
    for c in f.coeffs:
        c = Fraction(c)
        if c.denominator % ell == 0:
            raise BadDenominatorError(ell, "polynomial coefficient")
        out.append(c.numerator * pow(c.denominator, -1, ell) % ell)
    return trim(out)


def constant(c: int, ell: int) -> tuple:
    return trim((c % ell,))


def add(f, g, ell) -> tuple:
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = (out[i] + c) % ell
    return trim(out)


def sub(f, g, ell) -> tuple:
    out = list(f) + [0] * max(0, len(g) - len(f))
    for i, c in enumerate(g):
        out[i] = (out[i] - c) % ell
    return trim(out)


def scale(f, c, ell) -> tuple:
    c %= ell
    return trim(tuple(a * c % ell for a in f))


def mul(f, g, ell) -> tuple:
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % ell
    return trim(out)


def divmod_(f, g, ell) -> tuple[tuple, tuple]:
    if not g:
        raise ZeroPolynomialError("division by the zero polynomial mod ell")
    rem = list(f)
    dg = len(g) - 1
    inv_lead = pow(g[-1], -1, ell)
    if len(rem) < len(g):
        return (), trim(rem)
    quot = [0] * (len(rem) - dg)
    for i in range(len(rem) - 1, dg - 1, -1):
        c = rem[i] % ell
        if c:
            q = c * inv_lead % ell
            quot[i - dg] = q
            for j in range(dg + 1):
                rem[i - dg + j] = (rem[i - dg + j] - q * g[j]) % ell
    return trim(quot), trim(rem)


def mod(f, g, ell) -> tuple:
    return divmod_(f, g, ell)[1]


def monic(f, ell) -> tuple:
    if not f:
        return ()
    return scale(f, pow(f[-1], -1, ell), ell)


def gcd(f, g, ell) -> tuple:
    while g:
        f, g = g, mod(f, g, ell)
    return monic(f, ell)


def deriv(f, ell) -> tuple:
    return trim(tuple(i * c % ell for i, c in enumerate(f) if i > 0))


def eval_at(f, a, ell) -> int:
    acc = 0
    for c in reversed(f):
        acc = (acc * a + c) % ell
    return acc


def pow_mod(f, e: int, m, ell) -> tuple:
    """f**e reduced mod the polynomial m."""
    out = (1,)
    base = mod(f, m, ell)
    while e:
        if e & 1:
            out = mod(mul(out, base, ell), m, ell)
        base = mod(mul(base, base, ell), m, ell)
        e >>= 1
    return out


def is_squarefree(f, ell) -> bool:
    d = deriv(f, ell)
    if not d:
        return degree(f) <= 0
    return degree(gcd(f, d, ell)) == 0


def _pth_root(f, ell) -> tuple:
    """For f with f' = 0, the g with g**ell == f (coefficientwise Frobenius is identity)."""
    return trim(tuple(f[i] for i in range(0, len(f), ell)))


def squarefree_decomposition(f, ell) -> list[tuple[tuple, int]]:
    """Monic f as a list of (squarefree monic factor, multiplicity)."""
    out: list[tuple[tuple, int]] = []

    def recurse(f, outer_mult):
        if degree(f) <= 0:
            return
        d = deriv(f, ell)
        if not d:
            recurse(_pth_root(f, ell), outer_mult * ell)
            return
        c = gcd(f, d, ell)
        w = divmod_(f, c, ell)[0]  # product of squarefree parts
        i = 1
        while degree(w) > 0:
            y = gcd(w, c, ell)
            z = divmod_(w, y, ell)[0]
            if degree(z) > 0:
                out.append((z, i * outer_mult))
            w = y
            c = divmod_(c, y, ell)[0]
            i += 1
        if degree(c) > 0:
            recurse(c, outer_mult)

    recurse(monic(f, ell), 1)
    return out


def distinct_degree_split(f, ell) -> list[tuple[tuple, int]]:
    """Squarefree monic f as (product of all irreducible factors of degree d, d)."""
    out = []
    x = (0, 1)
    h = mod(x, f, ell)
    d = 0
    while degree(f) > 2 * d:
        d += 1
        h = pow_mod(h, ell, f, ell)  # x^(ell^d) mod f
        g = gcd(sub(h, x, ell), f, ell)
        if degree(g) > 0:
            out.append((g, d))
            f = divmod_(f, g, ell)[0]
            h = mod(h, f, ell)
    if degree(f) > 0:
        out.append((f, degree(f)))
    return out


def _split_equal_degree(f, d, ell, rng: random.Random) -> tuple:
    """A proper monic factor of squarefree monic f whose factors all have degree d."""
    n = degree(f)
    while True:
        a = trim(tuple(rng.randrange(ell) for _ in range(n)))
        if degree(a) < 1:
            continue
        g = gcd(a, f, ell)
        if 0 < degree(g) < n:
            return g
        if ell == 2:
            t = a
            acc = a
            for _ in range(d - 1):
                t = pow_mod(t, 2, f, ell)
                acc = add(acc, t, ell)
            g = gcd(acc, f, ell)
        else:
            b = pow_mod(a, (ell**d - 1) // 2, f, ell)
            g = gcd(sub(b, (1,), ell), f, ell)
        if 0 < degree(g) < n:
            return g


def equal_degree_factor(f, d, ell, rng: random.Random) -> list[tuple]:
    if degree(f) == d:
        return [monic(f, ell)]
    g = _split_equal_degree(f, d, ell, rng)
    h = divmod_(f, g, ell)[0]
    return equal_degree_factor(g, d, ell, rng) + equal_degree_factor(h, d, ell, rng)


def factor_monic(f, ell, rng: random.Random) -> list[tuple[tuple, int]]:
    """Full factorization of nonzero f into monic irreducibles with exponents.

    Returns a deterministically sorted list of (factor, exponent); the leading
    unit is dropped.
    """
    if not f:
        raise ZeroPolynomialError("cannot factor the zero polynomial mod ell")
    found: dict[tuple, int] = {}
    for sqfree, mult in squarefree_decomposition(f, ell):
        for block, d in distinct_degree_split(sqfree, ell):
            for factor in equal_degree_factor(block, d, ell, rng):
                found[factor] = found.get(factor, 0) + mult
    return sorted(found.items(), key=lambda fe: (len(fe[0]), fe[0]))


def is_irreducible(f, ell) -> bool:
    """Irreducibility of monic f via distinct-degree probing."""
    n = degree(f)
    if n <= 0:
        return False
    if n == 1:
        return True
    if not is_squarefree(f, ell):
        return False
    x = (0, 1)
    h = mod(x, f, ell)
    for d in range(1, n // 2 + 1):
        h = pow_mod(h, ell, f, ell)
        if degree(gcd(sub(h, x, ell), f, ell)) > 0:
            return False
    return True
