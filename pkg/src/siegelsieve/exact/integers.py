"""Exact integer arithmetic: primality certification, factoring, quadratic residues.

Primality below 2**64 is decided by a fixed Miller-Rabin witness set, which is
deterministic there; above 2**64 a fixed number of seeded strong probable-prime
rounds is used and the result is only probabilistic.  Factoring is trial
division up to a bound followed by Brent's cycle-finding variant of Pollard
rho; anything that resists the configured effort is carried as an explicit
composite-or-unknown cofactor, never dropped.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

# Deterministic below 3317044064679887385961981 > 2**64.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_DETERMINISTIC_LIMIT = 1 << 64
_PROBABLE_ROUNDS = 64

PRIME = "prime"
PROBABLE_PRIME = "probable-prime"
COMPOSITE = "composite"

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def _mr_round(n: int, a: int, d: int, s: int) -> bool:
    """One strong probable-prime round; True means `a` does not witness compositeness."""
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def certify_prime(n: int, rng: random.Random | None = None) -> str:
    """Classify n as "prime", "probable-prime" or "composite".

    "prime" is only issued below 2**64 where the witness set is deterministic.
    """
    if n < 2:
        return COMPOSITE
    for p in _SMALL_PRIMES:
        if n == p:
            return PRIME
        if n % p == 0:
            return COMPOSITE
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        if not _mr_round(n, a, d, s):
            return COMPOSITE
    if n < _DETERMINISTIC_LIMIT:
        return PRIME
    rng = rng if rng is not None else random.Random(n)
    for _ in range(_PROBABLE_ROUNDS):
        a = rng.randrange(2, n - 1)
        if not _mr_round(n, a, d, s):
            return COMPOSITE
    return PROBABLE_PRIME


def is_prime(n: int, rng: random.Random | None = None) -> bool:
    return certify_prime(n, rng) != COMPOSITE


def primes_up_to(bound: int) -> list[int]:
    """All primes <= bound by a byte sieve."""
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i in range(2, bound + 1) if sieve[i]]


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for odd p via the Euler criterion: 1, -1 or 0.

    The caller is responsible for p being an odd prime.
    """
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def _perfect_power(n: int) -> tuple[int, int] | None:
    """(root, exponent) with root**exponent == n and exponent >= 2, or None."""
    for e in range(2, n.bit_length() + 1):
        lo, hi = 2, 1 << (n.bit_length() // e + 1)
        while lo <= hi:
            mid = (lo + hi) // 2
            m = mid**e
            if m == n:
                return mid, e
            if m < n:
                lo = mid + 1
            else:
                hi = mid - 1
        if 2**e > n:
            break
    return None


def _brent_rho(n: int, rng: random.Random, iteration_cap: int) -> int | None:
    """A nontrivial factor of odd composite n, or None within the iteration cap."""
    if n % 2 == 0:
        return 2
    spent = 0
    while spent < iteration_cap:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1 and spent < iteration_cap:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                spent += min(m, r - k)
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
                spent += 1
        if 1 < g < n:
            return g
    return None


@dataclass(frozen=True)
class Factorization:
    """Factored form of a nonzero integer.

    abs(value) == product(p**e) * (cofactor or 1) always holds; `cofactor`
    collects whatever resisted the configured effort and is composite or of
    unknown status.  Primes in `probable` were certified only probabilistically
    (inputs above 2**64).
    """

    value: int
    factors: tuple[tuple[int, int], ...]
    cofactor: int | None = None
    probable: frozenset[int] = frozenset()

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def reassemble(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out * (self.cofactor or 1)

    def is_complete(self) -> bool:
        return self.cofactor is None


def factor_int(
    n: int,
    trial_bound: int = 10**6,
    *,
    rng: random.Random | None = None,
    rho_iteration_cap: int = 5_000_000,
) -> Factorization:
    """Factor a nonzero integer with bounded effort.

    Trial division removes every prime <= trial_bound, then Brent-rho attacks
    the remaining cofactor (with perfect-power peeling).  Resistant residues
    become the explicit cofactor.
    """
    if n == 0:
        raise ValueError("cannot factor 0")
    rng = rng if rng is not None else random.Random(f"factor|{n}")
    m = abs(n)
    found: dict[int, int] = {}
    for p in (2, 3, 5):
        while m % p == 0:
            found[p] = found.get(p, 0) + 1
            m //= p
    p = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)  # steps avoiding multiples of 2, 3, 5
    w = 0
    while p <= trial_bound and p * p <= m:
        while m % p == 0:
            found[p] = found.get(p, 0) + 1
            m //= p
        p += wheel[w]
        w = (w + 1) % 8
    cofactor = 1
    probable: set[int] = set()
    stack = [m] if m > 1 else []
    while stack:
        m = stack.pop()
        verdict = certify_prime(m, rng)
        if verdict != COMPOSITE:
            found[m] = found.get(m, 0) + 1
            if verdict == PROBABLE_PRIME:
                probable.add(m)
            continue
        power = _perfect_power(m)
        if power is not None:
            root, e = power
            stack.extend([root] * e)
            continue
        d = _brent_rho(m, rng, rho_iteration_cap)
        if d is None:
            cofactor *= m
            continue
        stack.append(d)
        stack.append(m // d)
    return Factorization(
        value=n,
        factors=tuple(sorted(found.items())),
        cofactor=cofactor if cofactor > 1 else None,
        probable=frozenset(probable),
    )
