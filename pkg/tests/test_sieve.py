import math
from fractions import Fraction

import pytest

from siegelsieve.exact import NumberField, QPoly
from siegelsieve.exact import modpoly
from siegelsieve.sieve import (
    CAUSE_ONE_DIM_MIDDLE,
    CAUSE_ONE_DIM_TRIVIAL,
    CAUSE_RELATED_1,
    CAUSE_RELATED_2,
    CAUSE_SMALLER_FIELD,
    adjudication_threshold,
    candidate_primes,
    denominator_primes,
    ramified_primes,
    reducibility_values,
    run_sieve,
    smaller_symplectic_excluded,
    untwisted_witness,
)
from siegelsieve.spinor import EigenformData, derived_coeffs, hecke_charpoly

from conftest import make_rational_form, random_form


@pytest.fixture(scope="module")
def zero_form(rational_field):
    return make_rational_form(rational_field, "zero", 4, [(2, 0, 0), (3, 0, 0)])


@pytest.fixture(scope="module")
def lift_form(rational_field):
    return make_rational_form(rational_field, "lift", 4, [(2, 12, 64), (3, 36, 729)])


def test_thresholds():
    assert adjudication_threshold(4) == 7
    assert adjudication_threshold(6) == 10
    assert adjudication_threshold(20) == 38
    assert adjudication_threshold(28) == 54


def test_reducibility_values_zero_input(zero_form):
    rv = reducibility_values(zero_form, 2)
    assert rv.r1.as_rational() == 1009
    assert rv.r2.as_rational() == 64
    assert rv.r3.as_rational() == -3800
    assert rv.r4.as_rational() == -22356


def test_reducibility_values_lift(lift_form):
    rv = reducibility_values(lift_form, 2)
    assert not rv.r2  # p^(k-1) = 8 is a genuine root
    assert rv.r1.as_rational() == 693  # 1 - 12 + 64 - 384 + 1024


def test_evaluation_identities_random(rational_field, cubic_field, rng):
    # r1 = Pol(1), r2 = Pol(p^(k-1)) / p^(2k-2), exactly
    count = 0
    for field in (rational_field, NumberField(QPoly((-5, 0, 1))), cubic_field):
        for _ in range(70):
            form = random_form(field, rng, primes=(2, 3, 5))
            p = rng.choice((2, 3, 5))
            k = form.weight
            pol = hecke_charpoly(form, p)
            rv = reducibility_values(form, p)
            assert rv.r1 == pol(1)
            assert rv.r2 == pol(Fraction(p) ** (k - 1)) * Fraction(1, p ** (2 * k - 2))
            count += 1
    assert count >= 200


def test_candidate_primes_zero_form(zero_form):
    result = candidate_primes(zero_form, CAUSE_ONE_DIM_TRIVIAL, (2, 3), 2000)
    assert result.gcd_norm == math.gcd(1009, 58969) == 1
    assert result.candidates == ()
    assert result.full_prime_set() == ()


def test_candidate_primes_single_prime(zero_form):
    result = candidate_primes(zero_form, CAUSE_ONE_DIM_TRIVIAL, (2,), 2000)
    assert result.gcd_norm == 1009
    assert result.candidates == (1009,)


def test_candidate_primes_all_primes_flag(lift_form):
    result = candidate_primes(lift_form, CAUSE_ONE_DIM_MIDDLE, (2, 3), 200)
    assert result.all_primes
    assert result.gcd_norm == 0


def test_candidate_primes_buckets(rational_field):
    # engineer a gcd with primes on both sides of the threshold: k = 4 has
    # threshold 7, and a single p gives gcd = |value| itself;
    # b = -a2 - 16 so r1 = b + 1025 = 1009 - a2, and a2 = 866 gives r1 = 11*13
    form = make_rational_form(rational_field, "b", 4, [(2, 0, 866)])
    result = candidate_primes(form, CAUSE_ONE_DIM_TRIVIAL, (2,), 12)
    assert result.gcd_norm == 11 * 13
    assert result.candidates == (11,)
    assert result.above_lmax == (13,)


def test_candidate_primes_ell_in_p_verdict(rational_field):
    # r1 at weight 4 is 1009 - a2 for p = 2 and 58969 - a2 for p = 3
    f = make_rational_form(rational_field, "r", 4, [(2, 0, 1009 - 3), (3, 0, 58969 - 3)])
    res = candidate_primes(f, CAUSE_ONE_DIM_TRIVIAL, (2, 3), 200)
    # gcd of (3, 3) = 3; 3 stays in the report-only below-threshold bucket
    assert res.gcd_norm == 3
    assert 3 in res.below_threshold
    f2 = make_rational_form(rational_field, "r2", 4, [(2, 0, 1009 - 33), (3, 0, 58969 - 11)])
    res2 = candidate_primes(f2, CAUSE_ONE_DIM_TRIVIAL, (2, 3), 200)
    # gcd = 11; 11 > threshold 7 and 11 is not in P: kept
    assert res2.candidates == (11,)


def test_candidate_primes_rescues_ell_in_p(rational_field):
    # 11 divides r1(2) and r1(3) but not r1(11) (which is 1 mod 11); since the
    # congruence says nothing at p = ell, 11 must still be adjudicated from
    # the gcd over the other primes
    f = make_rational_form(
        rational_field, "rescue", 4, [(2, 0, 1009 - 11), (3, 0, 58969 - 22), (11, 0, 0)]
    )
    res = candidate_primes(f, CAUSE_ONE_DIM_TRIVIAL, (2, 3, 11), 200)
    assert math.gcd(11, 22) % 11 == 0
    assert res.gcd_norm % 11 != 0  # the full gcd lost the factor 11
    assert 11 in res.candidates
    assert 11 in res.rescued


def test_candidate_primes_no_self_support(rational_field):
    # 11 divides only its own numerator, so it must not become a candidate
    f = make_rational_form(
        rational_field, "self", 4, [(2, 0, 1009 - 13), (3, 0, 58969 - 13), (11, 0, 866)]
    )
    # r1(11) = 11^10 + 1 - 866 - 11^4 + ... whatever it is, force divisibility
    # by checking the other two first: gcd(r1(2), r1(3)) = 13
    res = candidate_primes(f, CAUSE_ONE_DIM_TRIVIAL, (2, 3, 11), 200)
    assert 11 not in res.candidates
    assert 13 in res.candidates


def test_monotonicity(rational_field, cubic_field, rng):
    # enlarging the sieve prime set only shrinks candidate sets: the gcd divides
    for field in (rational_field, cubic_field):
        for _ in range(25):
            form = random_form(field, rng, primes=(2, 3, 5))
            for cause in (CAUSE_ONE_DIM_TRIVIAL, CAUSE_RELATED_1):
                small = candidate_primes(form, cause, (2, 3), 5000)
                large = candidate_primes(form, cause, (2, 3, 5), 5000)
                if small.all_primes or large.all_primes:
                    continue
                assert large.gcd_norm and small.gcd_norm % large.gcd_norm == 0
                if small.unresolved_cofactor or large.unresolved_cofactor:
                    continue
                assert set(large.full_prime_set()) <= set(small.full_prime_set())
                assert set(large.candidates) <= set(small.candidates)


def test_case1_factorization_construction_oracle(rng):
    """Quartics built as (x^2 - Ax + p^(3k-5))(x^2 - (A/p^(k-2))x + p^(k-1))
    mod ell satisfy the first related-pair expression identically."""
    trials = 0
    while trials < 500:
        ell = rng.choice((7, 11, 13, 17, 19, 23, 29))
        k = rng.choice(range(4, 30, 2))
        p = rng.choice((2, 3, 5))
        if p == ell:
            continue
        A = rng.randrange(ell)
        inv = pow(p, -1, ell)
        q1 = (pow(p, 3 * k - 5, ell), (-A) % ell, 1)
        q2 = (pow(p, k - 1, ell), (-A * pow(inv, k - 2, ell)) % ell, 1)
        quartic = modpoly.mul(q1, q2, ell)
        # read off a and b from the product and evaluate the expression
        a = (-quartic[3]) % ell
        b = quartic[2] % ell
        expr = (
            (b - pow(p, k - 1, ell) - pow(p, 3 * k - 5, ell))
            * pow(pow(p, k - 2, ell) + 1, 2, ell)
            - a * a * pow(p, k - 2, ell)
        ) % ell
        assert expr == 0
        # reciprocity shape: constant and linear coefficients
        assert quartic[0] % ell == pow(p, 4 * k - 6, ell)
        assert quartic[1] % ell == (-a * pow(p, 2 * k - 3, ell)) % ell
        trials += 1


def test_case2_factorization_construction_oracle(rng):
    trials = 0
    while trials < 500:
        ell = rng.choice((7, 11, 13, 17, 19, 23, 29))
        k = rng.choice(range(4, 30, 2))
        p = rng.choice((2, 3, 5))
        if p == ell:
            continue
        A = rng.randrange(ell)
        inv = pow(p, -1, ell)
        q1 = (pow(p, 3 * k - 4, ell), (-A) % ell, 1)
        q2 = (pow(p, k - 2, ell), (-A * pow(inv, k - 1, ell)) % ell, 1)
        quartic = modpoly.mul(q1, q2, ell)
        a = (-quartic[3]) % ell
        b = quartic[2] % ell
        expr = (
            (b - pow(p, k - 2, ell) - pow(p, 3 * k - 4, ell))
            * pow(pow(p, k - 1, ell) + 1, 2, ell)
            - a * a * pow(p, k - 1, ell)
        ) % ell
        assert expr == 0
        trials += 1


def test_denominator_primes(rational_field, cubic_field):
    form = make_rational_form(rational_field, "int", 4, [(2, 1, 2), (3, 3, 4)])
    assert denominator_primes(form).primes == ()
    frac_form = make_rational_form(
        rational_field, "frac", 4, [(2, Fraction(1, 17), 2), (3, 1, Fraction(5, 6))]
    )
    assert denominator_primes(frac_form).primes == (2, 3, 17)
    # clearing happens on the norm: a coordinate denominator can cancel
    e = cubic_field.element((Fraction(1, 17), 0, 0))
    assert e.norm() == Fraction(1, 17**3)


def test_ramified_primes_worked_cubic(cubic_field):
    result = ramified_primes(cubic_field)
    assert result.ramified == (5, 13, 73693, 1418741)
    assert result.undecided == ()
    assert result.index_only == (2, 3)
    assert result.unresolved_cofactor is None


def test_ramified_primes_small_fields():
    gauss = ramified_primes(NumberField(QPoly((1, 0, 1))))
    assert gauss.ramified == (2,) and gauss.index_only == ()
    # x^2 - 5: disc 20 = 2^2 * 5; 2 is an index prime of Z[sqrt(5)], proven
    # unramified, and the caveat routes it to index_only rather than ramified
    root5 = ramified_primes(NumberField(QPoly((-5, 0, 1))))
    assert root5.ramified == (5,)
    assert root5.index_only == (2,)
    assert modpoly.from_qpoly(QPoly((-5, 0, 1)), 2) == (1, 0, 1)  # (x+1)^2 mod 2


def test_ramified_primes_trivial(rational_field):
    assert ramified_primes(rational_field).flagged_set() == ()


def test_untwisted_witness_rational(rational_field):
    form = make_rational_form(rational_field, "w", 4, [(2, 12, 64)])
    w = untwisted_witness(form)
    assert w.witness_p == 2 and w.star_witness_p == 2
    zeros = make_rational_form(rational_field, "z", 4, [(2, 0, 5), (3, 0, 7)])
    w0 = untwisted_witness(zeros)
    assert w0.witness_p is None and w0.star_witness_p is None


def test_untwisted_witness_cubic(cubic_field):
    alpha = cubic_field.generator()
    one = cubic_field.one()
    # at p=2 make b rational (not a generator); at p=3 make b equal alpha
    # via b = a^2 - a2 - p^(2k-4) with a = 1 and a2 solved for
    k = 4
    a2_p2 = one - cubic_field.from_rational(2 ** (2 * k - 4)) - cubic_field.from_rational(7)
    a2_p3 = one - cubic_field.from_rational(3 ** (2 * k - 4)) - alpha
    form = EigenformData(
        label="cubic-witness",
        weight=k,
        field=cubic_field,
        eigen=((2, one, a2_p2), (3, one, a2_p3)),
    )
    b2, _ = derived_coeffs(form, 2)
    b3, _ = derived_coeffs(form, 3)
    assert b2.is_rational() and not b2.is_generator()
    assert b3 == alpha and b3.is_generator()
    assert untwisted_witness(form).witness_p == 3


def test_smaller_symplectic_excluded(rational_field, cubic_field):
    form = make_rational_form(rational_field, "s", 4, [(2, 12, 64)])
    ok, reasons = smaller_symplectic_excluded(form, 2, 5)
    assert ok and reasons == ()
    ok, reasons = smaller_symplectic_excluded(form, 2, 3)
    assert not ok and reasons == ("norm",)
    with pytest.raises(ValueError):
        smaller_symplectic_excluded(form, 2, 2)
    # cubic case with a disc failure: force b = alpha at p = 2, so that
    # elem_disc(b) is the polynomial discriminant, divisible by 73693,
    # while Norm(a_2) = Norm(1) = 1
    alpha = cubic_field.generator()
    one = cubic_field.one()
    a2 = one - cubic_field.from_rational(2**4) - alpha
    form3 = EigenformData(label="c", weight=4, field=cubic_field, eigen=((2, one, a2),))
    ok, reasons = smaller_symplectic_excluded(form3, 2, 73693)
    assert not ok and reasons == ("disc",)
    ok, reasons = smaller_symplectic_excluded(form3, 2, 11)
    assert ok


def test_run_sieve_lift_banner(lift_form):
    report = run_sieve(lift_form, (2, 3), 200)
    assert any("reducibility not excluded" in b for b in report.banners)
    assert report.causes[CAUSE_ONE_DIM_MIDDLE].all_primes


def test_run_sieve_zero_form(zero_form):
    report = run_sieve(zero_form, (2, 3), 2000)
    for cause in (CAUSE_ONE_DIM_TRIVIAL, CAUSE_ONE_DIM_MIDDLE, CAUSE_RELATED_1, CAUSE_RELATED_2):
        assert report.causes[cause].candidates == ()
    assert report.ell_min == 7
    assert report.threshold == 7
    assert report.causes[CAUSE_SMALLER_FIELD].all_primes  # no witness: a_p = 0


def test_run_sieve_requires_primes(zero_form):
    with pytest.raises(ValueError):
        run_sieve(zero_form, (), 100)


def test_no_prime_silently_dropped(rational_field, rng):
    # every prime factor of the gcd appears in exactly one bucket
    for _ in range(20):
        form = random_form(rational_field, rng, primes=(2, 3))
        res = candidate_primes(form, CAUSE_ONE_DIM_TRIVIAL, (2, 3), 50)
        if res.all_primes:
            continue
        g = res.gcd_norm
        for bucket in (res.candidates, res.below_threshold, res.above_lmax):
            for ell in bucket:
                if ell not in res.rescued:
                    assert g % ell == 0
        for ell in set(res.candidates) | set(res.below_threshold) | set(res.above_lmax):
            if ell in res.rescued:
                continue
            while g % ell == 0:
                g //= ell
        if res.unresolved_cofactor:
            assert g % res.unresolved_cofactor == 0
            g //= res.unresolved_cofactor
        assert g == 1
