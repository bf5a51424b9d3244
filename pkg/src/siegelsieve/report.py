"""Report assembly and emission.

The machine-readable report is one JSON document; the text rendering walks
the same dictionary so both carry identical facts.  Every prime that appears
anywhere is attached to a cause, an exclusion reason or a bookkeeping set.
The optional figure path renders a per-cause candidate chart, a per-prime
verdict strip and (for density scans) a convergence plot, next to a delimited
summary of every prime mentioned.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

from .config import Config
from .dataset import Dataset
from .exact import is_prime
from .rules import exclusion_table
from .sieve import ExceptionalReport, run_sieve
from .spinor import EigenformData, derived_coeffs, ramanujan_sanity
from .unconditional import DensityScan, evaluate_places, galois_realizations

REPORT_SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_PARTIAL = 3
EXIT_INTERNAL = 4


@dataclass
class Report:
    document: dict

    @property
    def exit_code(self) -> int:
        return EXIT_PARTIAL if self.document.get("unresolved_cofactors") else EXIT_OK


def _cause_dict(result) -> dict:
    return {
        "used_primes": list(result.used_primes),
        "gcd_norm": str(result.gcd_norm),
        "all_primes": result.all_primes,
        "candidates": list(result.candidates),
        "below_threshold": list(result.below_threshold),
        "above_lmax": list(result.above_lmax),
        "rescued": list(result.rescued),
        "unresolved_cofactor": str(result.unresolved_cofactor)
        if result.unresolved_cofactor
        else None,
        "probable_primes": [str(p) for p in result.probable],
        "vacuous": result.vacuous,
        "note": result.note,
    }


def _sieve_dict(report: ExceptionalReport) -> dict:
    return {
        "ell_min": report.ell_min,
        "threshold": report.threshold,
        "ell_max": report.ell_max,
        "serre_mode": report.serre_mode,
        "dp_variant": report.dp_variant,
        "causes": {cause: _cause_dict(r) for cause, r in sorted(report.causes.items())},
        "denominator_primes": [str(p) for p in report.denominators.primes],
        "ramified": {
            "ramified": [str(p) for p in report.ramified.ramified],
            "undecided_ramified_or_index": [str(p) for p in report.ramified.undecided],
            "index_only": [str(p) for p in report.ramified.index_only],
            "unresolved_cofactor": str(report.ramified.unresolved_cofactor)
            if report.ramified.unresolved_cofactor
            else None,
        },
        "untwisted_witness": {
            "witness_p": report.witness.witness_p,
            "star_witness_p": report.witness.star_witness_p,
        },
        "banners": list(report.banners),
        "notes": list(report.notes),
    }


def _status_dict(status) -> dict:
    return {"kind": status.kind, "detail": status.detail}


def build_form_report(
    form: EigenformData,
    primes_p,
    ell_max: int,
    serre_mode: bool,
    config: Config,
    with_tables: bool = True,
) -> dict:
    sieve_report = run_sieve(form, primes_p, ell_max, serre_mode, config)
    warnings = []
    for p in primes_p:
        warnings.extend(ramanujan_sanity(form, p))
    entry = {
        "label": form.label,
        "weight": form.weight,
        "field_poly": [int(c) for c in form.field.min_poly.coeffs],
        "field_degree": form.field.degree,
        "flags": {
            "multiplicity_one": form.multiplicity_one,
            "interesting": form.interesting,
        },
        "warnings": warnings,
        "sieve": _sieve_dict(sieve_report),
    }
    dvals = {}
    for p in primes_p:
        _, d = derived_coeffs(form, p, config.dp_variant)
        dvals[str(p)] = [str(c) for c in d.coords]
    entry["splitting_discs"] = dvals
    if with_tables:
        excluded = set(sieve_report.denominators.primes)
        excluded |= set(sieve_report.ramified.flagged_set())
        excluded |= set(sieve_report.ramified.index_only)
        ells = [
            ell
            for ell in range(sieve_report.threshold + 1, ell_max + 1)
            if is_prime(ell)
        ]
        place_certs = evaluate_places(form, [e for e in ells if e not in excluded], primes_p, config)
        per_ell = []
        for ell in ells:
            if ell in excluded:
                reason = "denominator" if ell in sieve_report.denominators.primes else (
                    "index-only" if ell in sieve_report.ramified.index_only else "ramified-or-index"
                )
                per_ell.append({"ell": ell, "status": f"excluded-{reason}"})
                continue
            per_place = place_certs.get(ell, [])
            verdicts = {pl: (c is not None and c.valid) for pl, c in per_place}
            table = exclusion_table(form, ell, serre_mode, sieve_report, verdicts)
            places_out = []
            for place, cert in per_place:
                places_out.append(
                    {
                        "local_factor": list(place.local_factor),
                        "residue_degree": place.residue_degree,
                        "certificate": None
                        if cert is None
                        else {
                            "p": cert.prime_p,
                            "disc_ok": cert.disc_ok,
                            "nonsquare": cert.nonsquare,
                            "valid": cert.valid,
                        },
                        "maximal": place.label() in table.maximal_place_labels,
                    }
                )
            per_ell.append(
                {
                    "ell": ell,
                    "status": "open" if table.open_cases() else "cases-excluded",
                    "open_cases": list(table.open_cases()),
                    "cases": {str(i): _status_dict(s) for i, s in sorted(table.statuses.items())},
                    "residual": [
                        {"place": label, **_status_dict(s)} for label, s in table.residual_by_place
                    ],
                    "places": places_out,
                }
            )
        entry["per_ell"] = per_ell
        realizations = galois_realizations(form, [e for e in ells if e not in excluded],
                                           sieve_report, place_certs, config)
        entry["realizations"] = [
            {
                "ell": r.ell,
                "residue_degree": r.residue_degree,
                "local_factor": list(r.place.local_factor),
                "group": r.group.name,
                "group_family": r.group.family,
                "similitude_exponent": r.group.similitude_exponent,
                "witness_p": r.certificate.prime_p,
                "chain": list(r.chain),
            }
            for r in realizations
        ]
    entry["unresolved_cofactors"] = [str(c) for c in sieve_report.unresolved_cofactors()]
    return entry


def run_report(
    dataset: Dataset,
    primes_p=None,
    ell_max: int = 200,
    serre_mode: bool = True,
    config: Config = Config(),
    with_tables: bool = True,
) -> Report:
    forms = []
    cofactors = []
    for form in dataset.forms:
        use = tuple(p for p in (primes_p or form.primes()) if form.has_prime(p))
        if not use:
            use = form.primes()
        entry = build_form_report(form, use, ell_max, serre_mode, config, with_tables)
        cofactors.extend(entry["unresolved_cofactors"])
        forms.append(entry)
    doc = {
        "schema_version": REPORT_SCHEMA_VERSION,
        "config": {
            "seed": config.seed,
            "ell_max": ell_max,
            "primes": list(primes_p) if primes_p else None,
            "serre_mode": serre_mode,
            "dp_variant": config.dp_variant,
            "factor_trial_bound": config.factor_trial_bound,
            "rho_iteration_cap": config.rho_iteration_cap,
            "witness_bound": config.witness_bound,
        },
        "forms": forms,
        "unresolved_cofactors": cofactors,
    }
    return Report(document=doc)


def render_machine(report: Report) -> str:
    return json.dumps(report.document, indent=2, sort_keys=True) + "\n"


def _render_cause_text(lines, cause, data):
    lines.append(f"  cause {cause} (over p = {', '.join(map(str, data['used_primes'])) or '-'}):")
    if data["all_primes"]:
        lines.append("    excludes nothing: " + (data["note"] or "vanishes identically"))
        return
    lines.append(f"    gcd of norms = {data['gcd_norm']}")
    lines.append(f"    candidates above threshold: {data['candidates'] or '[]'}")
    if data["below_threshold"]:
        lines.append(f"    below threshold (never adjudicated): {data['below_threshold']}")
    if data["above_lmax"]:
        lines.append(f"    beyond ell_max (still candidates): {data['above_lmax']}")
    if data["rescued"]:
        lines.append(f"    adjudicated from the gcd over the other primes: {data['rescued']}")
    if data["unresolved_cofactor"]:
        lines.append(f"    UNRESOLVED cofactor: {data['unresolved_cofactor']}")
    if data["note"]:
        lines.append(f"    note: {data['note']}")


def render_text(report: Report) -> str:
    doc = report.document
    lines: list[str] = []
    cfg = doc["config"]
    lines.append("exceptional-prime report")
    lines.append(
        f"config: seed={cfg['seed']} ell_max={cfg['ell_max']} serre_mode={cfg['serre_mode']} "
        f"dp_variant={cfg['dp_variant']}"
    )
    for form in doc["forms"]:
        lines.append("")
        lines.append(f"form {form['label']}: weight {form['weight']}, field degree {form['field_degree']}")
        lines.append(f"  field polynomial coefficients (constant first): {form['field_poly']}")
        sieve = form["sieve"]
        lines.append(
            f"  adjudication threshold: {sieve['threshold']} "
            f"(primes are adjudicated from {sieve['ell_min']} up)"
        )
        for banner in sieve["banners"]:
            lines.append(f"  *** {banner} ***")
        for warning in form["warnings"]:
            lines.append(f"  warning: {warning}")
        for cause, data in sieve["causes"].items():
            _render_cause_text(lines, cause, data)
        lines.append(f"  denominator primes: {sieve['denominator_primes'] or '[]'}")
        ram = sieve["ramified"]
        lines.append(f"  ramified primes: {ram['ramified'] or '[]'}")
        if ram["undecided_ramified_or_index"]:
            lines.append(
                f"  CAVEAT ramified-or-index (unresolved): {ram['undecided_ramified_or_index']}"
            )
        if ram["index_only"]:
            lines.append(f"  index-only primes (proven unramified): {ram['index_only']}")
        witness = sieve["untwisted_witness"]
        lines.append(
            f"  untwisted witness p: {witness['witness_p']}, "
            f"square-generator variant: {witness['star_witness_p']}"
        )
        for note in sieve["notes"]:
            lines.append(f"  note: {note}")
        if "realizations" in form:
            if form["realizations"]:
                lines.append("  certified maximal-image realizations:")
                for r in form["realizations"]:
                    lines.append(
                        f"    ell={r['ell']} place {r['local_factor']} "
                        f"(residue degree {r['residue_degree']}): {r['group']} "
                        f"(witness p={r['witness_p']})"
                    )
            else:
                lines.append("  certified maximal-image realizations: none in range")
        if "per_ell" in form:
            open_ells = [e["ell"] for e in form["per_ell"] if e.get("status") == "open"]
            if open_ells:
                lines.append(f"  primes with open cases in range: {open_ells}")
        if form["unresolved_cofactors"]:
            lines.append(f"  UNRESOLVED cofactors: {form['unresolved_cofactors']}")
    lines.append("")
    return "\n".join(lines)


# -- delimited summary and figures --------------------------------------------


def write_primes_csv(report: Report, path) -> Path:
    """One row per (form, prime, provenance) mentioned anywhere in the report."""
    path = Path(path)
    rows = []
    for form in report.document["forms"]:
        label = form["label"]
        sieve = form["sieve"]
        for cause, data in sieve["causes"].items():
            for ell in data["candidates"]:
                rows.append((label, ell, f"candidate:{cause}", "above threshold"))
            for ell in data["below_threshold"]:
                rows.append((label, ell, f"below-threshold:{cause}", "never adjudicated"))
            for ell in data["above_lmax"]:
                rows.append((label, ell, f"beyond-lmax:{cause}", "candidate beyond scan range"))
            for ell in data["rescued"]:
                rows.append((label, ell, f"rescued:{cause}", "adjudicated from gcd over P minus ell"))
        for ell in sieve["denominator_primes"]:
            rows.append((label, ell, "denominator", "divides a norm denominator"))
        for ell in sieve["ramified"]["ramified"]:
            rows.append((label, ell, "ramified", "ramifies in the coefficient field"))
        for ell in sieve["ramified"]["undecided_ramified_or_index"]:
            rows.append((label, ell, "ramified-or-index", "could not be separated"))
        for ell in sieve["ramified"]["index_only"]:
            rows.append((label, ell, "index-only", "proven unramified index prime"))
        for r in form.get("realizations", ()):
            rows.append((label, r["ell"], "realization", r["group"]))
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["form", "prime", "category", "detail"])
        writer.writerows(rows)
    return path


def _matplotlib():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def write_report_figures(report: Report, outdir) -> list[Path]:
    """Candidate chart and verdict strip per form, as PNG files."""
    plt = _matplotlib()
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    for form in report.document["forms"]:
        label = form["label"]
        safe = "".join(ch if ch.isalnum() or ch in "-_" else "_" for ch in label)
        sieve = form["sieve"]
        causes = sorted(sieve["causes"])
        fig, ax = plt.subplots(figsize=(8, 0.6 * len(causes) + 1.6))
        for y, cause in enumerate(causes):
            data = sieve["causes"][cause]
            xs = list(data["candidates"]) + list(data["below_threshold"])
            ax.scatter(
                [x for x in xs if x > sieve["threshold"]],
                [y] * len([x for x in xs if x > sieve["threshold"]]),
                marker="o",
                color="firebrick",
                zorder=3,
            )
            ax.scatter(
                [x for x in xs if x <= sieve["threshold"]],
                [y] * len([x for x in xs if x <= sieve["threshold"]]),
                marker="x",
                color="grey",
                zorder=3,
            )
        ax.axvline(sieve["threshold"], color="black", linestyle="--", linewidth=1)
        ax.set_yticks(range(len(causes)))
        ax.set_yticklabels(causes)
        ax.set_xscale("log")
        ax.set_xlabel("prime")
        ax.set_title(f"{label}: candidate primes by cause (dashed: threshold)")
        fig.tight_layout()
        target = outdir / f"{safe}_candidates.png"
        fig.savefig(target, dpi=150)
        plt.close(fig)
        written.append(target)
        if "per_ell" in form:
            per_ell = form["per_ell"]
            if per_ell:
                color_of = {
                    "cases-excluded": "seagreen",
                    "open": "goldenrod",
                }
                fig, ax = plt.subplots(figsize=(9, 2.2))
                realized = {r["ell"] for r in form.get("realizations", ())}
                for entry in per_ell:
                    ell = entry["ell"]
                    status = entry["status"]
                    if ell in realized:
                        color = "seagreen"
                    elif status.startswith("excluded-"):
                        color = "slategrey"
                    else:
                        color = color_of.get(status, "goldenrod")
                    ax.bar(ell, 1.0, width=max(1.0, ell * 0.01), color=color)
                ax.set_yticks([])
                ax.set_xlabel("prime")
                ax.set_title(
                    f"{label}: per-prime verdicts (green: certified, grey: excluded sets, "
                    "gold: open)"
                )
                fig.tight_layout()
                target = outdir / f"{safe}_verdicts.png"
                fig.savefig(target, dpi=150)
                plt.close(fig)
                written.append(target)
    return written


def write_density_outputs(scan: DensityScan, outdir, stem: str = "density") -> list[Path]:
    """Convergence figure plus a CSV of checkpoints for a density scan."""
    plt = _matplotlib()
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    csv_path = outdir / f"{stem}.csv"
    with csv_path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["bound", "fraction"])
        for bound, frac in scan.checkpoints:
            writer.writerow([bound, f"{float(frac):.8f}"])
        writer.writerow([scan.checkpoints[-1][0] if scan.checkpoints else 0, f"{float(scan.fraction):.8f}"])
    fig, ax = plt.subplots(figsize=(7, 4))
    if scan.checkpoints:
        xs = [b for b, _ in scan.checkpoints]
        ys = [float(f) for _, f in scan.checkpoints]
        ax.plot(xs, ys, marker=".", color="navy")
    ax.axhline(float(scan.fraction), color="seagreen", linestyle=":", linewidth=1)
    ax.set_xlabel("prime bound")
    ax.set_ylabel("fraction with some nonresidue")
    ax.set_title("density scan convergence")
    fig.tight_layout()
    png_path = outdir / f"{stem}.png"
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return [csv_path, png_path]
