"""Certificates that avoid the modularity shortcut.

The split-pair reducibility case is killed at a place when the splitting
discriminant d stays a unit with squarefree characteristic polynomial there
and reduces to a nonsquare of the residue field: the two would-be quadratic
factors would then have their traces outside the residue field.  Globally,
"d generates the field and has no square root in it" is certified by a single
nonsquare reduction at any admissible place, because a square in the field
reduces to a square at every place where it is integral.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .config import Config, DEFAULT_CONFIG
from .errors import BadDenominatorError, NearDiscriminantPrimeError
from .exact import (
    NONSQUARE,
    legendre,
    places_above,
    primes_up_to,
    reduce_at_place,
    residue_square_test,
)
from .exact import ResiduePlace
from .rules import GroupLabel, exclusion_table, max_image_name
from .sieve import CAUSE_ONE_DIM_TRIVIAL, ExceptionalReport
from .spinor import EigenformData, derived_coeffs

CERTIFIED = "certified"
INCONCLUSIVE = "inconclusive"
SQUARE_DETECTED = "square"
NOT_GENERATOR = "not-generator"


@dataclass(frozen=True)
class WitnessCertificate:
    """Per-place nonsquare certificate for the splitting discriminant at p."""

    prime_p: int
    place: ResiduePlace
    disc_ok: bool
    nonsquare: bool
    shortcut_agrees: bool | None = None  # inert-prime Legendre shortcut cross-check

    @property
    def valid(self) -> bool:
        return self.disc_ok and self.nonsquare


def place_certificate(
    form: EigenformData, p: int, place: ResiduePlace, config: Config = DEFAULT_CONFIG
) -> WitnessCertificate:
    """Evaluate both certificate clauses for d at one place, exactly.

    When the place is the unique one over an inert prime, the cheaper
    criterion Legendre(Norm(d), ell) = -1 is also computed and its agreement
    with the direct residue-field square test asserted: the residue-field
    norm is the (q-1)/(ell-1) power map, so both say the same thing.
    """
    _, d = derived_coeffs(form, p, config.dp_variant)
    ell = place.ell
    disc_ok = d.elem_disc().numerator % ell != 0
    image = reduce_at_place(d, place)
    verdict = residue_square_test(image)
    nonsquare = verdict == NONSQUARE
    shortcut = None
    if place.residue_degree == form.field.degree:
        norm = d.norm()
        if norm.denominator % ell != 0:
            residue = norm.numerator * pow(norm.denominator, -1, ell) % ell
            shortcut = (legendre(residue, ell) == -1) == nonsquare
            # the residue-field norm is the (q-1)/(ell-1) power map, so the
            # two square tests can never disagree at an inert place
            assert shortcut
    return WitnessCertificate(
        prime_p=p,
        place=place,
        disc_ok=disc_ok,
        nonsquare=nonsquare,
        shortcut_agrees=shortcut,
    )


@dataclass(frozen=True)
class SplittingDiscWitness:
    """Outcome of the global check that d generates the field and is not a square."""

    prime_p: int
    generates: bool
    status: str  # certified / inconclusive / square / not-generator
    witness_place: ResiduePlace | None
    searched_bound: int


def splitting_disc_witness(
    form: EigenformData,
    p: int,
    search_bound: int | None = None,
    config: Config = DEFAULT_CONFIG,
) -> SplittingDiscWitness:
    """Search for a place where d reduces to a nonsquare.

    A hit certifies that d has no square root in the field.  Absence of a
    witness up to the bound is reported as inconclusive, never as "square" --
    except over the rationals, where an exact integer square test decides.
    """
    bound = search_bound if search_bound is not None else config.witness_bound
    _, d = derived_coeffs(form, p, config.dp_variant)
    if not d:
        raise ValueError(f"splitting discriminant vanishes at p={p}")
    generates = form.field.degree == 1 or d.is_generator()
    if not generates:
        return SplittingDiscWitness(p, False, NOT_GENERATOR, None, bound)
    if form.field.degree == 1:
        q = d.as_rational()
        num, den = q.numerator, q.denominator
        if num > 0 and math.isqrt(num) ** 2 == num and math.isqrt(den) ** 2 == den:
            return SplittingDiscWitness(p, True, SQUARE_DETECTED, None, bound)
    norm = d.norm()
    disc_num = d.elem_disc().numerator
    for ell in primes_up_to(bound):
        if ell == 2 or form.field.poly_disc % ell == 0:
            continue
        if norm.numerator % ell == 0 or norm.denominator % ell == 0:
            continue
        if disc_num % ell == 0:
            continue
        try:
            for place in places_above(form.field, ell, config.rng("places", ell)):
                cert = place_certificate(form, p, place, config)
                if cert.valid:
                    return SplittingDiscWitness(p, True, CERTIFIED, place, bound)
        except (BadDenominatorError, NearDiscriminantPrimeError):
            continue
    return SplittingDiscWitness(p, True, INCONCLUSIVE, None, bound)


@dataclass(frozen=True)
class DensityScan:
    fraction: Fraction
    hits: int
    total: int
    checkpoints: tuple[tuple[int, Fraction], ...]


def density_scan(d_values, bound: int, checkpoint_count: int = 24) -> DensityScan:
    """Fraction of odd primes <= bound with Legendre(d, ell) = -1 for some d.

    Primes dividing any d are excluded from numerator and denominator; the
    inputs must be nonzero non-squares.  For n multiplicatively independent
    values the fraction converges to 1 - 2^(-n).
    """
    ds = [int(d) for d in d_values]
    if not ds:
        raise ValueError("need at least one d value")
    for d in ds:
        if d == 0:
            raise ValueError("zero d value")
        if d > 0 and math.isqrt(d) ** 2 == d:
            raise ValueError(f"{d} is a perfect square; its symbol is constant")
    if bound < 100:
        raise ValueError("bound too small for a meaningful frequency")
    marks = {
        max(100, round(bound * (i + 1) / checkpoint_count)) for i in range(checkpoint_count)
    }
    hits = total = 0
    checkpoints = []
    primes = primes_up_to(bound)
    next_marks = sorted(marks)
    mark_i = 0
    for ell in primes:
        while mark_i < len(next_marks) and ell > next_marks[mark_i]:
            if total:
                checkpoints.append((next_marks[mark_i], Fraction(hits, total)))
            mark_i += 1
        if ell == 2 or any(d % ell == 0 for d in ds):
            continue
        total += 1
        if any(legendre(d, ell) == -1 for d in ds):
            hits += 1
    while mark_i < len(next_marks):
        if total:
            checkpoints.append((next_marks[mark_i], Fraction(hits, total)))
        mark_i += 1
    return DensityScan(
        fraction=Fraction(hits, total),
        hits=hits,
        total=total,
        checkpoints=tuple(checkpoints),
    )


def evaluate_places(
    form: EigenformData,
    ells,
    primes_p=None,
    config: Config = DEFAULT_CONFIG,
):
    """For each prime in ells, the first valid certificate per place (or the last failure).

    Returns {ell: list of (place, WitnessCertificate | None)}; a None
    certificate means no table prime was admissible at that place.
    """
    primes_p = tuple(primes_p) if primes_p is not None else form.primes()
    out = {}
    for ell in ells:
        if form.field.poly_disc % ell == 0:
            continue
        per_place = []
        for place in places_above(form.field, ell, config.rng("places", ell)):
            best = None
            for p in primes_p:
                if p == ell:
                    continue
                try:
                    cert = place_certificate(form, p, place, config)
                except BadDenominatorError:
                    continue
                best = cert
                if cert.valid:
                    break
            per_place.append((place, best))
        out[ell] = per_place
    return out


@dataclass(frozen=True)
class Realization:
    ell: int
    place: ResiduePlace
    residue_degree: int
    group: GroupLabel
    certificate: WitnessCertificate
    chain: tuple[str, ...]


def galois_realizations(
    form: EigenformData,
    ells,
    sieve_report: ExceptionalReport,
    place_certs=None,
    config: Config = DEFAULT_CONFIG,
) -> tuple[Realization, ...]:
    """Certified maximal-image places and the groups they realize as Galois groups.

    Emits only primes outside the denominator and ramified sets and above the
    adjudication threshold, at places carrying a valid certificate with every
    exclusion-table case closed.  Each chain is re-validated before emission.
    """
    if place_certs is None:
        used = sieve_report.causes[CAUSE_ONE_DIM_TRIVIAL].used_primes
        place_certs = evaluate_places(form, ells, used or form.primes(), config)
    excluded = set(sieve_report.denominators.primes) | set(sieve_report.ramified.flagged_set())
    excluded |= set(sieve_report.ramified.index_only)
    out = []
    for ell in sorted(place_certs):
        if ell in excluded or ell <= sieve_report.threshold:
            continue
        per_place = place_certs[ell]
        verdicts = {place: (cert is not None and cert.valid) for place, cert in per_place}
        table = exclusion_table(form, ell, False, sieve_report, verdicts)
        if not table.all_cases_excluded():
            continue
        for place, cert in per_place:
            if cert is None or not cert.valid:
                continue
            if place.label() not in table.maximal_place_labels:
                continue
            # audit the chain end to end before emitting it
            recheck = place_certificate(form, cert.prime_p, place, config)
            retable = exclusion_table(form, ell, False, sieve_report, verdicts)
            if not (recheck.valid and retable.all_cases_excluded()):
                continue
            r = place.residue_degree
            group = max_image_name(form.weight, r, ell)
            chain = (
                f"ell={ell} above threshold {sieve_report.threshold}",
                "not a denominator or ramified-or-index prime",
                "all ten maximal-subgroup cases excluded",
                f"splitting-discriminant certificate at p={cert.prime_p} "
                f"(disc unit: {cert.disc_ok}, nonsquare: {cert.nonsquare})",
                f"maximal image realizes {group.name}; the extension ramifies only at {ell}",
            )
            out.append(
                Realization(
                    ell=ell,
                    place=place,
                    residue_degree=r,
                    group=group,
                    certificate=cert,
                    chain=chain,
                )
            )
    return tuple(out)
