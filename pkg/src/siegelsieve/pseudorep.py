"""Wiles-style pseudo-representations at finite-group scale.

A pseudo-representation of a group G with a distinguished involution c over a
ring where 2 is invertible is a quadruple tau = (a, d, t, x) with
a, d, t : G -> A and x : G x G -> A satisfying

    (i)   2 a(gg') = a(g) a(g') + x(g, g'),
          2 d(gg') = d(g) d(g') + x(g', g)
    (ii)  a(g) = t(g) + t(cg),  d(g) = t(g) - t(cg)
    (iii) t(1) = 2, t(c) = 0, x(g, c) = x(c, g) = 0
    (iv)  x(g, g') x(h, h') = x(g, h') x(h, g')
          4 x(gh, g'h') = a(g) a(h') x(h, g') + a(h') d(h) x(g, g')
                        + a(g) d(g') x(h, h') + d(h) d(g') x(g, h')

with trace(tau) = t and det(tau)(g) = a(g) d(g) - x(g, g).  An odd 2x2
representation rho = (alpha, beta; gamma, delta) with rho(c) = diag(1, -1)
yields one via a = 2 alpha, d = 2 delta, t = alpha + delta,
x(g, g') = 4 beta(g) gamma(g'); the quadruple is determined by its trace.
Everything here is checked exhaustively on small explicit group tables.
"""

from __future__ import annotations

from dataclasses import dataclass

Matrix = tuple[tuple[int, int], tuple[int, int]]


class FiniteGroupTable:
    """A small group as an explicit multiplication table with a chosen involution.

    Associativity, the identity laws and c^2 = 1 != c are checked exhaustively
    at construction (the size cap keeps the cubic loop cheap).
    """

    def __init__(self, mul, identity: int, c: int, labels=None, size_cap: int = 64):
        self.mul = tuple(tuple(row) for row in mul)
        self.identity = identity
        self.c = c
        n = len(self.mul)
        self.size = n
        self.labels = tuple(labels) if labels else tuple(str(i) for i in range(n))
        if n > size_cap:
            raise ValueError(f"group of size {n} exceeds the exhaustive-check cap {size_cap}")
        if any(len(row) != n for row in self.mul):
            raise ValueError("multiplication table is not square")
        for i in range(n):
            if self.mul[identity][i] != i or self.mul[i][identity] != i:
                raise ValueError("identity laws fail")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if self.mul[self.mul[i][j]][k] != self.mul[i][self.mul[j][k]]:
                        raise ValueError(f"associativity fails at ({i}, {j}, {k})")
        if c == identity:
            raise ValueError("the involution must differ from the identity")
        if self.mul[c][c] != identity:
            raise ValueError("the distinguished element does not square to the identity")

    def product(self, i: int, j: int) -> int:
        return self.mul[i][j]

    def elements(self) -> range:
        return range(self.size)


def cyclic_two() -> FiniteGroupTable:
    """C2 = {1, c}."""
    return FiniteGroupTable(((0, 1), (1, 0)), identity=0, c=1, labels=("1", "c"))


def symmetric_three() -> FiniteGroupTable:
    """S3 as permutations of 3 letters; c is the transposition (0 1)."""
    perms = [
        (0, 1, 2), (1, 0, 2), (0, 2, 1), (2, 1, 0), (1, 2, 0), (2, 0, 1),
    ]
    index = {p: i for i, p in enumerate(perms)}
    mul = [
        [index[tuple(p[q[i]] for i in range(3))] for q in perms] for p in perms
    ]
    labels = ("e", "(01)", "(12)", "(02)", "(012)", "(021)")
    return FiniteGroupTable(mul, identity=0, c=1, labels=labels)


def dihedral_four() -> FiniteGroupTable:
    """D4 of order 8: r of order 4 and a reflection s; c = s."""
    # elements r^i s^j, j in {0, 1}; (r^i s^j)(r^k s^l) = r^(i + k*(-1)^j) s^(j+l)
    def idx(i, j):
        return (i % 4) + 4 * (j % 2)

    mul = [[0] * 8 for _ in range(8)]
    for i in range(4):
        for j in range(2):
            for k in range(4):
                for l in range(2):
                    ii = i + (k if j == 0 else -k)
                    mul[idx(i, j)][idx(k, l)] = idx(ii, j + l)
    labels = tuple(f"r{i}" for i in range(4)) + tuple(f"r{i}s" for i in range(4))
    return FiniteGroupTable(mul, identity=0, c=4, labels=labels)


@dataclass(frozen=True)
class PseudoRep:
    """A pseudo-representation over Z/modulus with odd modulus."""

    modulus: int
    a: tuple[int, ...]
    d: tuple[int, ...]
    t: tuple[int, ...]
    x: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.modulus % 2 == 0:
            raise ValueError("2 must be invertible: modulus has to be odd")

    def trace(self) -> tuple[int, ...]:
        return self.t

    def det(self, g: int) -> int:
        return (self.a[g] * self.d[g] - self.x[g][g]) % self.modulus


@dataclass(frozen=True)
class Violation:
    axiom: str
    elements: tuple[int, ...]
    lhs: int
    rhs: int


def check_axioms(
    tau: PseudoRep, group: FiniteGroupTable, quartic_cap: int = 16
) -> list[Violation]:
    """Every violated axiom instance, exhaustively.

    The pair axioms run over G^2, the single ones over G; the quartic loop of
    axiom (iv) runs over G^4 only when the group is at most quartic_cap big.
    """
    n = group.size
    q = tau.modulus
    a, d, t, x = tau.a, tau.d, tau.t, tau.x
    mul = group.product
    c = group.c
    out: list[Violation] = []
    for g in range(n):
        for g2 in range(n):
            gg = mul(g, g2)
            lhs = 2 * a[gg] % q
            rhs = (a[g] * a[g2] + x[g][g2]) % q
            if lhs != rhs:
                out.append(Violation("i-a", (g, g2), lhs, rhs))
            lhs = 2 * d[gg] % q
            rhs = (d[g] * d[g2] + x[g2][g]) % q
            if lhs != rhs:
                out.append(Violation("i-d", (g, g2), lhs, rhs))
    for g in range(n):
        cg = mul(c, g)
        if a[g] % q != (t[g] + t[cg]) % q:
            out.append(Violation("ii-a", (g,), a[g] % q, (t[g] + t[cg]) % q))
        if d[g] % q != (t[g] - t[cg]) % q:
            out.append(Violation("ii-d", (g,), d[g] % q, (t[g] - t[cg]) % q))
    if t[group.identity] % q != 2 % q:
        out.append(Violation("iii-t1", (group.identity,), t[group.identity] % q, 2 % q))
    if t[c] % q != 0:
        out.append(Violation("iii-tc", (c,), t[c] % q, 0))
    for g in range(n):
        if x[g][c] % q != 0:
            out.append(Violation("iii-xc", (g, c), x[g][c] % q, 0))
        if x[c][g] % q != 0:
            out.append(Violation("iii-cx", (c, g), x[c][g] % q, 0))
    if n <= quartic_cap:
        for g in range(n):
            for g2 in range(n):
                for h in range(n):
                    for h2 in range(n):
                        lhs = x[g][g2] * x[h][h2] % q
                        rhs = x[g][h2] * x[h][g2] % q
                        if lhs != rhs:
                            out.append(Violation("iv-commute", (g, g2, h, h2), lhs, rhs))
                        gh = mul(g, h)
                        g2h2 = mul(g2, h2)
                        lhs = 4 * x[gh][g2h2] % q
                        rhs = (
                            a[g] * a[h2] * x[h][g2]
                            + a[h2] * d[h] * x[g][g2]
                            + a[g] * d[g2] * x[h][h2]
                            + d[h] * d[g2] * x[g][h2]
                        ) % q
                        if lhs != rhs:
                            out.append(Violation("iv-product", (g, g2, h, h2), lhs, rhs))
    return out


def from_odd_rep(group: FiniteGroupTable, rho, modulus: int) -> PseudoRep:
    """Pseudo-representation of a 2x2 representation with rho(c) = diag(1, -1).

    rho is a sequence of matrices indexed like the group table; it is verified
    to be a homomorphism before use.  det(tau) comes out as 4 det(rho), a
    normalization the tests pin down rather than rescale away.
    """
    q = modulus
    if q % 2 == 0:
        raise ValueError("modulus must be odd")
    mats = [tuple(tuple(v % q for v in row) for row in m) for m in rho]
    if len(mats) != group.size:
        raise ValueError("need one matrix per group element")

    def matmul(m1: Matrix, m2: Matrix) -> Matrix:
        return tuple(
            tuple(
                sum(m1[i][k] * m2[k][j] for k in range(2)) % q for j in range(2)
            )
            for i in range(2)
        )

    for i in range(group.size):
        for j in range(group.size):
            if matmul(mats[i], mats[j]) != mats[group.product(i, j)]:
                raise ValueError(f"not a homomorphism at ({i}, {j})")
    if mats[group.c] != ((1 % q, 0), (0, (-1) % q)):
        raise ValueError("rho(c) must be diag(1, -1); conjugate the representation first")
    a = tuple(2 * m[0][0] % q for m in mats)
    d = tuple(2 * m[1][1] % q for m in mats)
    t = tuple((m[0][0] + m[1][1]) % q for m in mats)
    x = tuple(
        tuple(4 * mg[0][1] * mh[1][0] % q for mh in mats) for mg in mats
    )
    return PseudoRep(modulus=q, a=a, d=d, t=t, x=x)


def _matmul2(m1: Matrix, m2: Matrix, q: int) -> Matrix:
    return tuple(
        tuple(sum(m1[i][k] * m2[k][j] for k in range(2)) % q for j in range(2))
        for i in range(2)
    )


def _det2(m: Matrix, q: int) -> int:
    return (m[0][0] * m[1][1] - m[0][1] * m[1][0]) % q


def _s3_matrices(modulus: int) -> list[Matrix]:
    """The 2-dim representation of S3 over Z/q with the transposition (01) diagonal.

    Start from the action on the sum-zero plane with basis e0-e1, e1-e2, then
    conjugate so that (01) becomes diag(1, -1).
    """
    q = modulus
    perms = [(0, 1, 2), (1, 0, 2), (0, 2, 1), (2, 1, 0), (1, 2, 0), (2, 0, 1)]
    # coordinates of e_a - e_b on the basis v1 = e0 - e1, v2 = e1 - e2
    diff = {
        (0, 1): (1, 0), (1, 0): (-1, 0),
        (1, 2): (0, 1), (2, 1): (0, -1),
        (0, 2): (1, 1), (2, 0): (-1, -1),
    }
    inv2 = pow(2, -1, q)
    u = ((1, 1), (2, 0))  # eigenvectors of the (01)-action, +1 then -1
    u_inv = ((0, inv2), (1, (-inv2) % q))
    out = []
    for p in perms:
        col1 = diff[(p[0], p[1])]
        col2 = diff[(p[1], p[2])]
        m = ((col1[0] % q, col2[0] % q), (col1[1] % q, col2[1] % q))
        out.append(_matmul2(_matmul2(u_inv, m, q), u, q))
    return out


def _d4_matrices(modulus: int) -> list[Matrix]:
    """D4 via a quarter turn and the diagonal reflection, any odd modulus.

    Table indexing is r^i s^j at index i + 4j.
    """
    q = modulus
    rot = ((0, (-1) % q), (1, 0))
    ref = ((1, 0), (0, (-1) % q))
    powers = []
    power = ((1, 0), (0, 1))
    for _ in range(4):
        powers.append(power)
        power = _matmul2(power, rot, q)
    mats = []
    for j in range(2):
        for i in range(4):
            mats.append(powers[i] if j == 0 else _matmul2(powers[i], ref, q))
    return mats


def standard_constructions(modulus: int):
    """(name, group, matrices) for the C2, S3 and D4 reference representations."""
    q = modulus
    c2 = cyclic_two()
    c2_mats = [((1, 0), (0, 1)), ((1, 0), (0, (-1) % q))]
    return (
        ("C2", c2, c2_mats),
        ("S3", symmetric_three(), _s3_matrices(q)),
        ("D4", dihedral_four(), _d4_matrices(q)),
    )


def selftest(moduli=(5, 7, 11)) -> list[dict]:
    """Construct, axiom-check and round-trip the reference representations.

    Returns one result dict per (group, modulus) pair; `ok` is the conjunction
    of: no axiom violations, exact trace round-trip, and det(tau) = 4 det(rho)
    everywhere.
    """
    results = []
    for q in moduli:
        for name, group, mats in standard_constructions(q):
            tau = from_odd_rep(group, mats, q)
            violations = check_axioms(tau, group)
            rebuilt = reconstruct_from_trace(tau.trace(), group, q)
            round_trip = rebuilt == tau
            det_ok = all(
                tau.det(g) == 4 * _det2(tuple(tuple(v % q for v in row) for row in mats[g]), q) % q
                for g in group.elements()
            )
            results.append(
                {
                    "group": name,
                    "modulus": q,
                    "violations": len(violations),
                    "round_trip": round_trip,
                    "det_relation": det_ok,
                    "ok": not violations and round_trip and det_ok,
                }
            )
    return results


def reconstruct_from_trace(
    t, group: FiniteGroupTable, modulus: int
) -> PseudoRep:
    """Rebuild the quadruple from its trace by inverting the defining identities.

    a(g) = t(g) + t(cg), d(g) = t(g) - t(cg), x(g, g') = 2 a(gg') - a(g) a(g');
    for an axiom-satisfying input the round trip is exact.  The output is not
    validated here; run check_axioms on it.
    """
    q = modulus
    if q % 2 == 0:
        raise ValueError("modulus must be odd")
    t = tuple(v % q for v in t)
    if len(t) != group.size:
        raise ValueError("need one trace value per group element")
    c = group.c
    a = tuple((t[g] + t[group.product(c, g)]) % q for g in group.elements())
    d = tuple((t[g] - t[group.product(c, g)]) % q for g in group.elements())
    x = tuple(
        tuple(
            (2 * a[group.product(g, g2)] - a[g] * a[g2]) % q for g2 in group.elements()
        )
        for g in group.elements()
    )
    return PseudoRep(modulus=q, a=a, d=d, t=t, x=x)
