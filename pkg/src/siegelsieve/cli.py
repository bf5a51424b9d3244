"""Command-line interface.

Subcommands:
    sieve               candidate exceptional primes per cause
    splitting           splitting types of the coefficient field over a range
    unconditional       splitting-discriminant witnesses and certified realizations
    density             nonresidue density scan for a set of integers
    pseudorep-selftest  exercise the pseudo-representation module
    report              full pipeline report (text or machine JSON, optional figures)

Exit codes: 0 success, 2 validation failure, 3 partial result (unresolved
cofactors), 4 internal error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import DP_FACTORIZATION, DP_PRINTED, Config
from .dataset import load_dataset
from .errors import DatasetError, NearDiscriminantPrimeError, SiegelSieveError
from .exact import is_prime, primes_up_to, splitting_type
from .report import (
    EXIT_INTERNAL,
    EXIT_OK,
    EXIT_PARTIAL,
    EXIT_VALIDATION,
    render_machine,
    render_text,
    run_report,
    write_density_outputs,
    write_primes_csv,
    write_report_figures,
)
from .sieve import run_sieve
from .spinor import derived_coeffs
from .unconditional import (
    density_scan,
    evaluate_places,
    galois_realizations,
    splitting_disc_witness,
)


def _parse_primes(text: str) -> tuple[int, ...]:
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        value = int(part)
        if not is_prime(value):
            raise argparse.ArgumentTypeError(f"{value} is not prime")
        out.append(value)
    if not out:
        raise argparse.ArgumentTypeError("empty prime list")
    return tuple(out)


def _add_common(parser: argparse.ArgumentParser, dataset: bool = True):
    if dataset:
        parser.add_argument("dataset", help="path to a JSON eigenvalue dataset")
    parser.add_argument("--seed", type=int, default=0, help="seed for all randomized routines")
    parser.add_argument(
        "--factor-bound", type=int, default=10**6, help="trial division bound for factoring"
    )
    parser.add_argument(
        "--rho-cap", type=int, default=5_000_000, help="iteration cap per rho cofactor"
    )
    parser.add_argument(
        "--witness-bound", type=int, default=10_000, help="prime bound for witness searches"
    )
    parser.add_argument(
        "--dp-variant",
        choices=(DP_FACTORIZATION, DP_PRINTED),
        default=DP_FACTORIZATION,
        help="normalization of the splitting discriminant",
    )


def _config(args) -> Config:
    return Config(
        seed=args.seed,
        factor_trial_bound=args.factor_bound,
        rho_iteration_cap=args.rho_cap,
        witness_bound=args.witness_bound,
        dp_variant=args.dp_variant,
    )


def _primes_for(form, args):
    if args.primes is not None:
        missing = [p for p in args.primes if not form.has_prime(p)]
        if missing:
            raise DatasetError(
                f"form {form.label!r} has no eigenvalues at {missing}; "
                f"table covers {list(form.primes())}"
            )
        return args.primes
    return form.primes()


def _cmd_sieve(args) -> int:
    config = _config(args)
    dataset = load_dataset(args.dataset)
    code = EXIT_OK
    for form in dataset.forms:
        report = run_sieve(form, _primes_for(form, args), args.lmax, args.serre, config)
        print(f"form {form.label}: weight {form.weight}, threshold {report.threshold}")
        for banner in report.banners:
            print(f"  *** {banner} ***")
        for cause, result in sorted(report.causes.items()):
            if result.all_primes:
                print(f"  {cause}: excludes nothing ({result.note or 'vanishes identically'})")
                continue
            print(
                f"  {cause}: gcd {result.gcd_norm}; candidates {list(result.candidates)}"
                + (f"; below threshold {list(result.below_threshold)}" if result.below_threshold else "")
                + (f"; beyond lmax {list(result.above_lmax)}" if result.above_lmax else "")
            )
            if result.unresolved_cofactor:
                print(f"    unresolved cofactor {result.unresolved_cofactor}")
        print(f"  denominator primes: {list(report.denominators.primes)}")
        print(f"  ramified: {list(report.ramified.ramified)}"
              + (f"; undecided {list(report.ramified.undecided)}" if report.ramified.undecided else "")
              + (f"; index-only {list(report.ramified.index_only)}" if report.ramified.index_only else ""))
        if report.unresolved_cofactors():
            code = EXIT_PARTIAL
    return code


def _cmd_splitting(args) -> int:
    config = _config(args)
    dataset = load_dataset(args.dataset)
    for form in dataset.forms:
        print(f"form {form.label}: field degree {form.field.degree}")
        for ell in primes_up_to(args.lmax):
            if ell < args.lmin:
                continue
            try:
                degrees = splitting_type(form.field, ell, config.rng("places", ell))
            except NearDiscriminantPrimeError:
                print(f"  {ell}: divides the polynomial discriminant, skipped")
                continue
            kind = "inert" if degrees == (form.field.degree,) else (
                "split" if degrees == (1,) * form.field.degree else "mixed"
            )
            print(f"  {ell}: type {list(degrees)} ({kind})")
    return EXIT_OK


def _cmd_unconditional(args) -> int:
    config = _config(args)
    dataset = load_dataset(args.dataset)
    code = EXIT_OK
    for form in dataset.forms:
        primes_p = _primes_for(form, args)
        print(f"form {form.label}:")
        for p in primes_p:
            witness = splitting_disc_witness(form, p, args.witness_bound, config)
            place = witness.witness_place.label() if witness.witness_place else "-"
            print(
                f"  p={p}: generates={witness.generates} status={witness.status} witness={place}"
            )
        sieve_report = run_sieve(form, primes_p, args.lmax, serre_mode=False, config=config)
        excluded = set(sieve_report.denominators.primes) | set(
            sieve_report.ramified.flagged_set()
        ) | set(sieve_report.ramified.index_only)
        ells = [
            ell
            for ell in primes_up_to(args.lmax)
            if ell > sieve_report.threshold and ell not in excluded
        ]
        certs = evaluate_places(form, ells, primes_p, config)
        realizations = galois_realizations(form, ells, sieve_report, certs, config)
        if realizations:
            print("  certified realizations:")
            for r in realizations:
                print(f"    ell={r.ell}: {r.group.name} via p={r.certificate.prime_p}")
        else:
            print("  certified realizations: none in range")
        if sieve_report.unresolved_cofactors():
            code = EXIT_PARTIAL
    return code


def _cmd_density(args) -> int:
    config = _config(args)
    if args.values:
        ds = [int(v) for v in args.values.split(",") if v.strip()]
    else:
        if not args.dataset:
            raise DatasetError("density needs either --values or a dataset")
        dataset = load_dataset(args.dataset)
        ds = []
        for form in dataset.forms:
            if form.field.degree != 1:
                raise DatasetError(
                    "dataset-driven density scan needs a rational coefficient field; "
                    "pass --values for number-field data"
                )
            for p in _primes_for(form, args):
                _, d = derived_coeffs(form, p, config.dp_variant)
                value = d.as_rational()
                if value.denominator != 1:
                    raise DatasetError(f"splitting discriminant at p={p} is not an integer")
                ds.append(int(value))
    try:
        scan = density_scan(ds, args.bound)
    except ValueError as exc:
        raise DatasetError(str(exc)) from exc
    print(f"values: {ds}")
    print(f"primes counted: {scan.total}, with a nonresidue: {scan.hits}")
    print(f"fraction: {float(scan.fraction):.6f}")
    if args.figures:
        paths = write_density_outputs(scan, args.figures)
        for path in paths:
            print(f"wrote {path}")
    return EXIT_OK


def _cmd_pseudorep(args) -> int:
    from .pseudorep import selftest

    moduli = tuple(int(m) for m in args.moduli.split(",")) if args.moduli else (5, 7, 11)
    ok = True
    for result in selftest(moduli):
        status = "ok" if result["ok"] else "FAIL"
        print(
            f"{result['group']} over Z/{result['modulus']}: {status} "
            f"(violations={result['violations']}, round_trip={result['round_trip']}, "
            f"det_relation={result['det_relation']})"
        )
        ok = ok and result["ok"]
    return EXIT_OK if ok else EXIT_INTERNAL


def _cmd_report(args) -> int:
    config = _config(args)
    dataset = load_dataset(args.dataset)
    report = run_report(
        dataset,
        primes_p=args.primes,
        ell_max=args.lmax,
        serre_mode=args.serre,
        config=config,
        with_tables=not args.no_tables,
    )
    if args.format == "machine":
        sys.stdout.write(render_machine(report))
    else:
        sys.stdout.write(render_text(report))
    if args.figures:
        outdir = Path(args.figures)
        paths = write_report_figures(report, outdir)
        paths.append(write_primes_csv(report, outdir / "primes.csv"))
        for path in paths:
            print(f"wrote {path}", file=sys.stderr)
    return report.exit_code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="siegelsieve",
        description="exceptional-prime sieve and maximal-image certificates "
        "for genus-2 Siegel eigenform data",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sieve = sub.add_parser("sieve", help="candidate exceptional primes per cause")
    _add_common(p_sieve)
    p_sieve.add_argument("--primes", type=_parse_primes, default=None, help="sieve primes p")
    p_sieve.add_argument("--lmax", type=int, default=200, help="largest prime to adjudicate")
    p_sieve.add_argument("--serre", action=argparse.BooleanOptionalAction, default=True,
                         help="assume the modularity shortcut for the residual case")
    p_sieve.set_defaults(func=_cmd_sieve)

    p_split = sub.add_parser("splitting", help="splitting types over a prime range")
    _add_common(p_split)
    p_split.add_argument("--lmin", type=int, default=2)
    p_split.add_argument("--lmax", type=int, default=200)
    p_split.set_defaults(func=_cmd_splitting)

    p_unc = sub.add_parser(
        "unconditional", help="splitting-discriminant witnesses and realizations"
    )
    _add_common(p_unc)
    p_unc.add_argument("--primes", type=_parse_primes, default=None)
    p_unc.add_argument("--lmax", type=int, default=200)
    p_unc.set_defaults(func=_cmd_unconditional)

    p_density = sub.add_parser("density", help="nonresidue density scan")
    p_density.add_argument("dataset", nargs="?", default=None)
    p_density.add_argument("--values", default=None, help="comma-separated integers")
    p_density.add_argument("--primes", type=_parse_primes, default=None)
    p_density.add_argument("--bound", type=int, default=10**6)
    p_density.add_argument("--figures", default=None, help="directory for CSV and PNG output")
    p_density.add_argument("--seed", type=int, default=0)
    p_density.add_argument("--factor-bound", type=int, default=10**6)
    p_density.add_argument("--rho-cap", type=int, default=5_000_000)
    p_density.add_argument("--witness-bound", type=int, default=10_000)
    p_density.add_argument(
        "--dp-variant", choices=(DP_FACTORIZATION, DP_PRINTED), default=DP_FACTORIZATION
    )
    p_density.set_defaults(func=_cmd_density)

    p_pseudo = sub.add_parser("pseudorep-selftest", help="exercise the pseudo-representation module")
    p_pseudo.add_argument("--moduli", default=None, help="comma-separated odd moduli")
    p_pseudo.set_defaults(func=_cmd_pseudorep)

    p_report = sub.add_parser("report", help="full pipeline report")
    _add_common(p_report)
    p_report.add_argument("--primes", type=_parse_primes, default=None)
    p_report.add_argument("--lmax", type=int, default=200)
    p_report.add_argument("--serre", action=argparse.BooleanOptionalAction, default=True)
    p_report.add_argument("--format", choices=("text", "machine"), default="text")
    p_report.add_argument("--figures", default=None, help="directory for PNG and CSV output")
    p_report.add_argument("--no-tables", action="store_true",
                          help="skip the per-prime tables and realizations")
    p_report.set_defaults(func=_cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DatasetError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except SiegelSieveError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
