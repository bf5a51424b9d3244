"""The exceptional-prime engine.

Four reducibility expressions vanish mod a prime of the coefficient field
whenever the residual representation degenerates in the corresponding way:

    r1 = b - a_p (P + 1) + P^2 + 1                      (value of Pol at 1)
    r2 = p^(2k-4)(1 + p^2) - a_p p^(k-2)(1 + p) + b     (Pol(p^(k-1)) / p^(2k-2))
    r3 = (b - p^(k-1) - p^(3k-5)) (p^(k-2) + 1)^2 - a_p^2 p^(k-2)
    r4 = (b - p^(k-2) - p^(3k-4)) (p^(k-1) + 1)^2 - a_p^2 p^(k-1)

with P = p^(2k-3) and b the quadratic coefficient.  Taking norms down to the
rationals, clearing denominators and intersecting across several p by gcd
yields a finite candidate set per cause; everything else (denominators,
ramified primes, the smaller-coefficient-field test) is bookkeeping around
that sieve.  No prime is ever dropped silently: anything found lands in a
candidate list, a below-threshold list, a denominator set, a ramified set or
an unresolved-cofactor note.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .config import Config, DEFAULT_CONFIG
from .exact import FieldElement, NumberField, factor_int, index_prime_test
from .spinor import EigenformData, derived_coeffs

CAUSE_ONE_DIM_TRIVIAL = "one_dim_trivial"
CAUSE_ONE_DIM_MIDDLE = "one_dim_middle"
CAUSE_RELATED_1 = "related_case1"
CAUSE_RELATED_2 = "related_case2"
CAUSE_SMALLER_FIELD = "smaller_field"
CONGRUENCE_CAUSES = (
    CAUSE_ONE_DIM_TRIVIAL,
    CAUSE_ONE_DIM_MIDDLE,
    CAUSE_RELATED_1,
    CAUSE_RELATED_2,
)


def adjudication_threshold(weight: int) -> int:
    """Primes at or below this are never adjudicated by the sieve.

    The inertia description needs ell - 1 > 2k - 3; for weight below 6 the
    exceptional-group exclusion additionally needs ell > 7.
    """
    t = 2 * weight - 2
    if weight < 6:
        t = max(t, 7)
    return t


@dataclass(frozen=True)
class ReducibilityValues:
    prime_p: int
    r1: FieldElement
    r2: FieldElement
    r3: FieldElement
    r4: FieldElement

    def by_cause(self, cause: str) -> FieldElement:
        return {
            CAUSE_ONE_DIM_TRIVIAL: self.r1,
            CAUSE_ONE_DIM_MIDDLE: self.r2,
            CAUSE_RELATED_1: self.r3,
            CAUSE_RELATED_2: self.r4,
        }[cause]


def reducibility_values(form: EigenformData, p: int) -> ReducibilityValues:
    """The four exact reducibility expression values at p."""
    k = form.weight
    a = form.a(p)
    b, _ = derived_coeffs(form, p)
    P = Fraction(p) ** (2 * k - 3)
    r1 = b - a * (P + 1) + (P * P + 1)
    r2 = b - a * (Fraction(p) ** (k - 2) * (1 + p)) + Fraction(p) ** (2 * k - 4) * (1 + p * p)
    r3 = (b - Fraction(p) ** (k - 1) - Fraction(p) ** (3 * k - 5)) * (
        (Fraction(p) ** (k - 2) + 1) ** 2
    ) - a * a * Fraction(p) ** (k - 2)
    r4 = (b - Fraction(p) ** (k - 2) - Fraction(p) ** (3 * k - 4)) * (
        (Fraction(p) ** (k - 1) + 1) ** 2
    ) - a * a * Fraction(p) ** (k - 1)
    return ReducibilityValues(prime_p=p, r1=r1, r2=r2, r3=r3, r4=r4)


@dataclass(frozen=True)
class CauseResult:
    """Outcome of the gcd sieve for one cause."""

    cause: str
    used_primes: tuple[int, ...]
    gcd_norm: int  # 0 means the expression vanished identically at every p
    all_primes: bool
    candidates: tuple[int, ...]  # threshold < ell <= ell_max
    below_threshold: tuple[int, ...]
    above_lmax: tuple[int, ...]
    rescued: tuple[int, ...]  # ell in P adjudicated from the gcd over P minus ell
    unresolved_cofactor: int | None
    probable: tuple[int, ...]
    vacuous: bool = False
    note: str = ""

    def full_prime_set(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.candidates) | set(self.below_threshold) | set(self.above_lmax)))


def _norm_numerator(value: FieldElement) -> int:
    """Numerator of the norm down to Q; denominator primes belong to the denominator set."""
    return value.norm().numerator


def _cause_numerators(form: EigenformData, cause: str, primes_p) -> dict[int, int]:
    out = {}
    for p in primes_p:
        out[p] = _norm_numerator(reducibility_values(form, p).by_cause(cause))
    return out


def _bucket_primes(fact, weight: int, ell_max: int):
    threshold = adjudication_threshold(weight)
    cands, below, above = [], [], []
    for ell in fact.primes():
        if ell <= threshold:
            below.append(ell)
        elif ell <= ell_max:
            cands.append(ell)
        else:
            above.append(ell)
    return tuple(cands), tuple(below), tuple(above)


def candidate_primes(
    form: EigenformData,
    cause: str,
    primes_p,
    ell_max: int,
    config: Config = DEFAULT_CONFIG,
) -> CauseResult:
    """Candidate exceptional primes for one cause via the gcd-of-norms sieve.

    The congruence behind each cause is only claimed at p different from the
    residue characteristic, so a candidate ell that is itself in P has its
    verdict recomputed with p = ell left out; drops are recorded, not silent.
    """
    primes_p = tuple(sorted(primes_p))
    if not primes_p:
        raise ValueError("need at least one sieve prime p")
    for p in primes_p:
        if not form.has_prime(p):
            raise KeyError(f"prime {p} is not in the eigenvalue table")
    numerators = _cause_numerators(form, cause, primes_p)
    g = 0
    for v in numerators.values():
        g = math.gcd(g, abs(v))
    if g == 0:
        return CauseResult(
            cause=cause,
            used_primes=primes_p,
            gcd_norm=0,
            all_primes=True,
            candidates=(),
            below_threshold=(),
            above_lmax=(),
            rescued=(),
            unresolved_cofactor=None,
            probable=(),
            note="expression vanishes identically at every supplied p; excludes nothing",
        )
    fact = factor_int(
        g,
        trial_bound=config.factor_trial_bound,
        rng=config.rng("cause", cause, g),
        rho_iteration_cap=config.rho_iteration_cap,
    )
    threshold = adjudication_threshold(form.weight)
    cands, below, above = _bucket_primes(fact, form.weight, ell_max)
    kept = list(cands)
    # ell | g already implies ell | gcd over P minus ell, so candidates in P
    # never need dropping; the other direction is real: an ell in P whose own
    # numerator spoiled the full gcd is still adjudicated from the others
    rescued = []
    for ell in sorted(set(primes_p)):
        if ell <= threshold or ell > ell_max or ell in kept or len(primes_p) < 2:
            continue
        g2 = 0
        for p, v in numerators.items():
            if p != ell:
                g2 = math.gcd(g2, abs(v))
        if g2 == 0 or g2 % ell == 0:
            rescued.append(ell)
            kept.append(ell)
    return CauseResult(
        cause=cause,
        used_primes=primes_p,
        gcd_norm=g,
        all_primes=False,
        candidates=tuple(sorted(kept)),
        below_threshold=below,
        above_lmax=above,
        rescued=tuple(rescued),
        unresolved_cofactor=fact.cofactor,
        probable=tuple(sorted(fact.probable)),
    )


@dataclass(frozen=True)
class DenominatorPrimes:
    primes: tuple[int, ...]
    unresolved_cofactors: tuple[int, ...]


def denominator_primes(
    form: EigenformData, primes_p=None, config: Config = DEFAULT_CONFIG
) -> DenominatorPrimes:
    """Primes dividing a denominator of Norm(a_p) or Norm(a_{p^2}), p in P."""
    primes_p = tuple(primes_p) if primes_p is not None else form.primes()
    found: set[int] = set()
    cofactors: list[int] = []
    for p in primes_p:
        for value in (form.a(p), form.a2(p)):
            den = value.norm().denominator
            if den == 1:
                continue
            fact = factor_int(
                den,
                trial_bound=config.factor_trial_bound,
                rng=config.rng("denominator", p, den),
                rho_iteration_cap=config.rho_iteration_cap,
            )
            found.update(fact.primes())
            if fact.cofactor is not None:
                cofactors.append(fact.cofactor)
    return DenominatorPrimes(
        primes=tuple(sorted(found)), unresolved_cofactors=tuple(cofactors)
    )


@dataclass(frozen=True)
class RamifiedResult:
    """Ramification classification of the primes dividing the polynomial discriminant.

    A prime with odd discriminant valuation is certainly ramified; one with
    even valuation and a maximal order at that prime is also certainly
    ramified.  A prime dividing the index with valuation exactly 2 is proven
    unramified (index_only).  Anything else stays in `undecided`, flagged
    ramified-or-index.
    """

    ramified: tuple[int, ...]
    undecided: tuple[int, ...]
    index_only: tuple[int, ...]
    unresolved_cofactor: int | None

    def flagged_set(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.ramified) | set(self.undecided)))


def ramified_primes(field: NumberField, config: Config = DEFAULT_CONFIG) -> RamifiedResult:
    """Classify primes dividing disc(min_poly) as ramified / index-only / undecided."""
    disc = field.poly_disc
    if abs(disc) == 1:
        return RamifiedResult((), (), (), None)
    fact = factor_int(
        disc,
        trial_bound=config.factor_trial_bound,
        rng=config.rng("disc", disc),
        rho_iteration_cap=config.rho_iteration_cap,
    )
    ramified, undecided, index_only = [], [], []
    for ell, v in fact.factors:
        # a prime divides the polynomial discriminant iff the reduction is not
        # squarefree, so every listed ell is at least a repeated-factor prime
        if v % 2 == 1:
            ramified.append(ell)
        elif not index_prime_test(field.min_poly, ell, config.rng("dedekind", ell)):
            ramified.append(ell)  # order maximal at ell, so disc valuation survives
        elif v == 2:
            index_only.append(ell)  # the single index factor absorbs the valuation
        else:
            undecided.append(ell)
    return RamifiedResult(
        ramified=tuple(ramified),
        undecided=tuple(undecided),
        index_only=tuple(index_only),
        unresolved_cofactor=fact.cofactor,
    )


@dataclass(frozen=True)
class UntwistedWitness:
    """First table prime with a_p nonzero and b generating the field (and the
    variant using a_p^2 as generator)."""

    witness_p: int | None
    star_witness_p: int | None


def untwisted_witness(form: EigenformData, primes_p=None) -> UntwistedWitness:
    primes_p = tuple(sorted(primes_p)) if primes_p is not None else form.primes()
    witness = star = None
    for p in primes_p:
        a = form.a(p)
        if not a:
            continue
        b, _ = derived_coeffs(form, p)
        if witness is None and (form.field.degree == 1 or b.is_generator()):
            witness = p
        asq = a * a
        if star is None and (form.field.degree == 1 or asq.is_generator()):
            star = p
        if witness is not None and star is not None:
            break
    return UntwistedWitness(witness_p=witness, star_witness_p=star)


def smaller_symplectic_excluded(
    form: EigenformData, p: int, ell: int
) -> tuple[bool, tuple[str, ...]]:
    """Whether ell is excluded from the proper-subfield symplectic cases at witness p.

    True iff ell divides neither numerator(Norm(a_p)) nor numerator(disc of
    the charpoly of b).  Over a prime field the subfield cases are vacuous and
    the disc clause is trivially 1.
    """
    if ell == p:
        raise ValueError("the test requires ell different from the witness prime p")
    reasons = []
    a = form.a(p)
    if a.norm().numerator % ell == 0:
        reasons.append("norm")
    if form.field.degree > 1:
        b, _ = derived_coeffs(form, p)
        if b.elem_disc().numerator % ell == 0:
            reasons.append("disc")
    return (not reasons), tuple(reasons)


def _smaller_field_cause(
    form: EigenformData,
    witness: UntwistedWitness,
    primes_p,
    ell_max: int,
    config: Config,
) -> CauseResult:
    """Gcd sieve for the proper-subfield cases over all untwisted witness primes."""
    vacuous = form.field.degree == 1
    witnesses = []
    for p in sorted(primes_p):
        a = form.a(p)
        if not a:
            continue
        b, _ = derived_coeffs(form, p)
        if form.field.degree == 1 or b.is_generator():
            witnesses.append(p)
    if not witnesses:
        return CauseResult(
            cause=CAUSE_SMALLER_FIELD,
            used_primes=(),
            gcd_norm=0,
            all_primes=True,
            candidates=(),
            below_threshold=(),
            above_lmax=(),
            rescued=(),
            unresolved_cofactor=None,
            probable=(),
            vacuous=vacuous,
            note="no untwisted witness among the supplied primes; cannot exclude",
        )
    g = 0
    for p in witnesses:
        a_num = abs(form.a(p).norm().numerator)
        if form.field.degree == 1:
            disc_num = 1
        else:
            b, _ = derived_coeffs(form, p)
            disc_num = abs(b.elem_disc().numerator)
        g = math.gcd(g, a_num * disc_num)
    fact = factor_int(
        g,
        trial_bound=config.factor_trial_bound,
        rng=config.rng("smaller_field", g),
        rho_iteration_cap=config.rho_iteration_cap,
    )
    cands, below, above = _bucket_primes(fact, form.weight, ell_max)
    note = "vacuous over a prime field (no proper subfield cases)" if vacuous else ""
    return CauseResult(
        cause=CAUSE_SMALLER_FIELD,
        used_primes=tuple(witnesses),
        gcd_norm=g,
        all_primes=False,
        candidates=cands,
        below_threshold=below,
        above_lmax=above,
        rescued=(),
        unresolved_cofactor=fact.cofactor,
        probable=tuple(sorted(fact.probable)),
        vacuous=vacuous,
        note=note,
    )


@dataclass(frozen=True)
class ExceptionalReport:
    """Everything the sieve can say about one form's exceptional primes."""

    label: str
    weight: int
    ell_min: int  # smallest adjudicable prime bound, 2k - 1
    threshold: int  # primes <= threshold are never adjudicated
    ell_max: int
    serre_mode: bool
    dp_variant: str
    causes: dict[str, CauseResult]
    denominators: DenominatorPrimes
    ramified: RamifiedResult
    witness: UntwistedWitness
    banners: tuple[str, ...]
    notes: tuple[str, ...]

    def unresolved_cofactors(self) -> tuple[int, ...]:
        out = [c.unresolved_cofactor for c in self.causes.values() if c.unresolved_cofactor]
        out.extend(self.denominators.unresolved_cofactors)
        if self.ramified.unresolved_cofactor:
            out.append(self.ramified.unresolved_cofactor)
        return tuple(out)

    def candidate_union(self) -> tuple[int, ...]:
        out: set[int] = set()
        for c in self.causes.values():
            out.update(c.candidates)
        return tuple(sorted(out))


def run_sieve(
    form: EigenformData,
    primes_p=None,
    ell_max: int = 200,
    serre_mode: bool = True,
    config: Config = DEFAULT_CONFIG,
) -> ExceptionalReport:
    """Aggregate all causes into one exceptional-prime report."""
    primes_p = tuple(sorted(primes_p)) if primes_p is not None else form.primes()
    if not primes_p:
        raise ValueError("empty sieve prime set")
    notes: list[str] = []
    banners: list[str] = []
    if len(primes_p) < 2:
        notes.append("single sieve prime: the gcd intersection is weak, candidate sets may be large")
    causes: dict[str, CauseResult] = {}
    for cause in CONGRUENCE_CAUSES:
        causes[cause] = candidate_primes(form, cause, primes_p, ell_max, config)
        if causes[cause].all_primes:
            banners.append(
                f"reducibility not excluded at any prime: cause {cause} vanishes identically"
            )
    witness = untwisted_witness(form, primes_p)
    causes[CAUSE_SMALLER_FIELD] = _smaller_field_cause(
        form, witness, primes_p, ell_max, config
    )
    if causes[CAUSE_SMALLER_FIELD].all_primes and not causes[CAUSE_SMALLER_FIELD].vacuous:
        banners.append(
            "form is not certified untwisted by the supplied primes: "
            "proper-subfield symplectic images are not excluded"
        )
    denominators = denominator_primes(form, primes_p, config)
    ramified = ramified_primes(form.field, config)
    if ramified.undecided:
        notes.append(
            "ramified-or-index primes could not be separated: "
            + ", ".join(str(p) for p in ramified.undecided)
        )
    if ramified.index_only:
        notes.append(
            "index-only primes (proven unramified, still excluded from adjudication): "
            + ", ".join(str(p) for p in ramified.index_only)
        )
    if not serre_mode:
        notes.append(
            "running without the modularity shortcut: the unrelated two-dimensional "
            "reducibility case is only excluded at places with a valid splitting-"
            "discriminant certificate"
        )
    return ExceptionalReport(
        label=form.label,
        weight=form.weight,
        ell_min=2 * form.weight - 1,
        threshold=adjudication_threshold(form.weight),
        ell_max=ell_max,
        serre_mode=serre_mode,
        dp_variant=config.dp_variant,
        causes=causes,
        denominators=denominators,
        ramified=ramified,
        witness=witness,
        banners=tuple(banners),
        notes=tuple(notes),
    )
