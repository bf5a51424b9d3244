"""Case ledger for the maximal-subgroup exclusion arguments.

Mitchell's 1914 classification lists ten conjugacy classes of maximal proper
subgroups of PSp(4) over an odd prime field; each needs its own exclusion
route.  This module encodes the bookkeeping only: which divisibility
conditions would have to hold for the image of inertia to fit a given case,
evaluated directly on (weight, ell), plus the per-prime table combining the
sieve output with those conditions into a maximality verdict.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact import ResiduePlace
from .sieve import (
    CAUSE_ONE_DIM_MIDDLE,
    CAUSE_ONE_DIM_TRIVIAL,
    CAUSE_RELATED_1,
    CAUSE_RELATED_2,
    CAUSE_SMALLER_FIELD,
    ExceptionalReport,
)
from .spinor import EigenformData

EXCLUDED = "excluded"
CONGRUENCE = "congruence-dependent"
OPEN = "open"
BELOW_THRESHOLD = "below-threshold"


@dataclass(frozen=True)
class MitchellCase:
    index: int
    description: str


MITCHELL_CASES: tuple[MitchellCase, ...] = (
    MitchellCase(1, "stabilizer of a point and a plane"),
    MitchellCase(2, "stabilizer of a parabolic congruence"),
    MitchellCase(3, "stabilizer of a hyperbolic congruence"),
    MitchellCase(4, "stabilizer of an elliptic congruence"),
    MitchellCase(5, "stabilizer of a quadric"),
    MitchellCase(6, "stabilizer of a twisted cubic"),
    MitchellCase(7, "normalizer of a 2-elementary group of order 16 (quotient A5 or S5)"),
    MitchellCase(8, "a group isomorphic to A6, S6 or A7"),
    MitchellCase(9, "symplectic group over a proper subfield of odd prime index"),
    MitchellCase(10, "similitude group over the index-2 subfield"),
)


@dataclass(frozen=True)
class InertiaWeights:
    """The exponent multiset of the tame inertia characters for weight k."""

    weights: tuple[int, int, int, int]

    @classmethod
    def for_weight(cls, k: int) -> "InertiaWeights":
        return cls(weights=(0, k - 2, k - 1, 2 * k - 3))

    def __post_init__(self):
        w = sorted(self.weights)
        # exponents pair up: smallest with largest, and the middle two
        if w[0] + w[3] != w[1] + w[2]:
            raise ValueError("inertia exponents do not pair up")


@dataclass(frozen=True)
class Status:
    kind: str
    detail: str = ""


def _require_even_k_odd_ell(k: int, ell: int):
    if k % 2 != 0:
        raise ValueError(f"weight must be even, got {k}")
    if ell == 2 or ell % 2 == 0:
        raise ValueError(f"ell must be an odd prime, got {ell}")


def twisted_cubic_conditions(k: int, ell: int) -> frozenset[str]:
    """Divisibility conditions under which inertia could fit the twisted-cubic case.

    Empty means the case is excluded outright at (k, ell).  The mixed
    condition on ell^2 - 1 is evaluated directly even though it can never
    hold for odd ell (the target is 1 mod ell - 1).
    """
    _require_even_k_odd_ell(k, ell)
    held = set()
    for target, name in (
        (k - 3, "(l-1) | k-3"),
        (k, "(l-1) | k"),
        (3 * k - 5, "(l-1) | 3k-5"),
        (3 * k - 4, "(l-1) | 3k-4"),
    ):
        if target % (ell - 1) == 0:
            held.add(name)
    for target, name in (
        (3 * k - 5, "(l+1) | 3k-5"),
        (3 * k - 4, "(l+1) | 3k-4"),
        (k, "(l+1) | k"),
        (k - 3, "(l+1) | k-3"),
        (2 * k - 3, "(l+1) | 2k-3"),
        (3, "(l+1) | 3"),
    ):
        if target % (ell + 1) == 0:
            held.add(name)
    if ((5 - 3 * k) + (3 * k - 4) * ell) % (ell * ell - 1) == 0:
        held.add("(l^2-1) | (5-3k)+(3k-4)l")
    return frozenset(held)


def conjugate_pair_conditions(k: int, ell: int) -> frozenset[str]:
    """Conditions for inertia to fit the conjugate-pair embedding of GL(2) over
    the quadratic extension of the residue field.

    The last condition has target congruent to -1 mod ell + 1 and never holds.
    """
    _require_even_k_odd_ell(k, ell)
    held = set()
    for target, name in (
        (k - 2, "(l-1) | k-2"),
        (k - 1, "(l-1) | k-1"),
    ):
        if target % (ell - 1) == 0:
            held.add(name)
    for target, name in (
        (k - 2, "(l+1) | k-2"),
        (k - 1, "(l+1) | k-1"),
        (2 * k - 3, "(l+1) | 2k-3"),
        ((k - 2) + (k - 1) * ell, "(l+1) | (k-2)+(k-1)l"),
    ):
        if target % (ell + 1) == 0:
            held.add(name)
    return frozenset(held)


@dataclass(frozen=True)
class GroupLabel:
    family: str  # "PSp" or "PGSp"
    residue_degree: int
    name: str
    similitude_exponent: int
    description: str


def max_image_name(k: int, r: int, ell: int | None = None) -> GroupLabel:
    """The group realized when the image is maximal at a place of residue degree r."""
    if r < 1:
        raise ValueError("residue degree must be >= 1")
    family = "PSp" if r % 2 == 0 else "PGSp"
    base = str(ell) if ell is not None else "l"
    size = base if r == 1 else f"{base}^{r}"
    exponent = 4 * k - 6
    return GroupLabel(
        family=family,
        residue_degree=r,
        name=f"{family}(4, {size})",
        similitude_exponent=exponent,
        description=(
            f"projective image of the symplectic similitude group over F_({size}) "
            f"whose similitude factors are {exponent}-th powers"
        ),
    )


@dataclass(frozen=True)
class ExclusionTable:
    """Per-prime status of the ten cases plus the residual reducibility case."""

    ell: int
    statuses: dict[int, Status]
    residual_by_place: tuple[tuple[str, Status], ...]  # keyed by place label
    maximal_place_labels: tuple[str, ...]

    def all_cases_excluded(self) -> bool:
        return all(s.kind == EXCLUDED for s in self.statuses.values())

    def open_cases(self) -> tuple[int, ...]:
        return tuple(i for i, s in sorted(self.statuses.items()) if s.kind != EXCLUDED)


def _congruence_status(report: ExceptionalReport, causes, ell: int) -> Status:
    hits = []
    for cause in causes:
        result = report.causes[cause]
        if result.all_primes:
            hits.append(f"{cause}: vanishes identically")
        elif ell in result.candidates or ell in result.below_threshold or ell in result.above_lmax:
            hits.append(f"{cause}: ell divides the norm gcd")
        elif result.unresolved_cofactor is not None:
            # unknown divisibility of the unfactored part: stay conservative
            if result.unresolved_cofactor % ell == 0:
                hits.append(f"{cause}: ell divides the unresolved cofactor")
    if hits:
        return Status(CONGRUENCE, "; ".join(hits))
    return Status(EXCLUDED, f"ell does not divide the norm gcd of {'/'.join(causes)}")


def exclusion_table(
    form: EigenformData,
    ell: int,
    serre_mode: bool,
    sieve_report: ExceptionalReport,
    place_certificates=None,
) -> ExclusionTable:
    """Combine sieve output and divisibility rules into a per-prime case table.

    place_certificates maps each place over ell to a bool (a valid
    splitting-discriminant certificate exists there) and is only consulted
    when serre_mode is off; pass None when no places were evaluated.
    """
    k = form.weight
    threshold = sieve_report.threshold
    if ell <= threshold:
        status = Status(BELOW_THRESHOLD, f"ell <= {threshold} is never adjudicated")
        return ExclusionTable(
            ell=ell,
            statuses={c.index: status for c in MITCHELL_CASES},
            residual_by_place=(("all", status),),
            maximal_place_labels=(),
        )
    statuses: dict[int, Status] = {}
    statuses[1] = _congruence_status(
        sieve_report, (CAUSE_ONE_DIM_TRIVIAL, CAUSE_ONE_DIM_MIDDLE), ell
    )
    statuses[2] = _congruence_status(sieve_report, (CAUSE_RELATED_1, CAUSE_RELATED_2), ell)
    quad_reason = "index-2 reducible subgroup forces an everywhere-unramified quadratic field"
    for i in (3, 4, 5):
        statuses[i] = Status(EXCLUDED, quad_reason)
    held = twisted_cubic_conditions(k, ell)
    if held:
        statuses[6] = Status(OPEN, "divisibility conditions hold: " + ", ".join(sorted(held)))
    else:
        statuses[6] = Status(EXCLUDED, "no twisted-cubic divisibility condition holds")
    exceptional_reason = "inertia image too large for the exceptional groups"
    statuses[7] = Status(EXCLUDED, exceptional_reason)
    statuses[8] = Status(EXCLUDED, exceptional_reason)
    smaller = sieve_report.causes[CAUSE_SMALLER_FIELD]
    if smaller.vacuous:
        sub_status = Status(EXCLUDED, "vacuous: the residue field is a prime field at degree 1")
    elif smaller.all_primes:
        sub_status = Status(OPEN, smaller.note or "no untwisted witness")
    elif ell in smaller.candidates or ell in smaller.below_threshold:
        sub_status = Status(CONGRUENCE, "ell divides Norm(a_p) * disc(b) at every witness p")
    elif smaller.unresolved_cofactor is not None and smaller.unresolved_cofactor % ell == 0:
        sub_status = Status(CONGRUENCE, "ell divides the unresolved cofactor of the witness gcd")
    else:
        sub_status = Status(EXCLUDED, "ell divides neither Norm(a_p) nor disc(b) at a witness p")
    statuses[9] = sub_status
    statuses[10] = sub_status
    # residual case: unrelated two-dimensional constituents of equal determinant
    residual: list[tuple[str, Status]] = []
    if serre_mode:
        status = Status(
            EXCLUDED,
            "level-1 weight-2 modular forms do not exist, so the unrelated "
            "pair case cannot occur above the threshold",
        )
        if place_certificates:
            for place in place_certificates:
                label = place.label() if isinstance(place, ResiduePlace) else str(place)
                residual.append((label, status))
        else:
            residual.append(("all", status))
    else:
        # without the modularity shortcut the split-pair half needs a
        # certificate per place, and the conjugate-pair half needs the
        # divisibility conditions to fail (verified directly, not assumed)
        pair_held = conjugate_pair_conditions(k, ell)
        if pair_held:
            residual.append(
                (
                    "all",
                    Status(OPEN, "conjugate-pair conditions hold: " + ", ".join(sorted(pair_held))),
                )
            )
        elif place_certificates:
            for place, ok in place_certificates.items():
                label = place.label() if isinstance(place, ResiduePlace) else str(place)
                if ok:
                    residual.append(
                        (label, Status(EXCLUDED, "valid splitting-discriminant certificate"))
                    )
                else:
                    residual.append(
                        (label, Status(OPEN, "no valid splitting-discriminant certificate"))
                    )
        else:
            residual.append(("all", Status(OPEN, "no certificates evaluated")))
    cases_ok = all(s.kind == EXCLUDED for s in statuses.values())
    maximal = tuple(label for label, s in residual if cases_ok and s.kind == EXCLUDED)
    return ExclusionTable(
        ell=ell,
        statuses=statuses,
        residual_by_place=tuple(residual),
        maximal_place_labels=maximal,
    )
