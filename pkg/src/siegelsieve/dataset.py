"""Dataset ingestion: exact eigenvalue tables from JSON files.

A dataset is a JSON document:

    {
      "schema_version": 1,
      "forms": [
        {
          "label": "...",
          "weight": 20,
          "field_poly": [c0, c1, ..., 1],          # constant first, monic
          "eigen": [
            {"p": 2, "a_p": ["12"], "a_p2": ["64"]},
            ...
          ],
          "multiplicity_one": true,
          "interesting": true
        }
      ]
    }

Field elements are arrays of n rationals written as text: an optionally
signed integer or "num/den" with positive denominator.  Exactness is the
point; floats are rejected.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import CertificationError, DatasetError, IrreducibilityError
from .exact import NumberField, QPoly
from .spinor import EigenformData

SCHEMA_VERSION = 1

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


@dataclass(frozen=True)
class Dataset:
    schema_version: int
    forms: tuple[EigenformData, ...]


def parse_rational(value, where: str) -> Fraction:
    """An exact rational from an int or a "num/den" string."""
    if isinstance(value, bool):
        raise DatasetError(f"{where}: boolean is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise DatasetError(f"{where}: floats are not accepted, write the value as text")
    if isinstance(value, str):
        text = value.strip()
        if not _RATIONAL_RE.match(text):
            raise DatasetError(f"{where}: malformed rational {value!r}")
        if "/" in text and int(text.split("/")[1]) == 0:
            raise DatasetError(f"{where}: zero denominator in {value!r}")
        return Fraction(text)
    raise DatasetError(f"{where}: cannot read a rational from {type(value).__name__}")


def _parse_element(field: NumberField, value, where: str):
    if not isinstance(value, list):
        raise DatasetError(f"{where}: expected an array of {field.degree} rationals")
    if len(value) != field.degree:
        raise DatasetError(
            f"{where}: expected {field.degree} coordinates, got {len(value)}"
        )
    return field.element(
        tuple(parse_rational(v, f"{where}[{i}]") for i, v in enumerate(value))
    )


def _parse_form(record, index: int) -> EigenformData:
    where = f"form #{index}"
    if not isinstance(record, dict):
        raise DatasetError(f"{where}: not an object")
    label = record.get("label")
    if not isinstance(label, str) or not label:
        raise DatasetError(f"{where}: missing or empty label")
    where = f"form {label!r}"
    weight = record.get("weight")
    if not isinstance(weight, int):
        raise DatasetError(f"{where}: weight must be an integer")
    if weight % 2 != 0:
        raise DatasetError(f"{where}: odd weight {weight} is not supported")
    if weight < 4:
        raise DatasetError(f"{where}: weight must be at least 4")
    raw_poly = record.get("field_poly")
    if not isinstance(raw_poly, list) or not raw_poly:
        raise DatasetError(f"{where}: field_poly must be a nonempty coefficient array")
    coeffs = [parse_rational(c, f"{where}.field_poly[{i}]") for i, c in enumerate(raw_poly)]
    if any(c.denominator != 1 for c in coeffs):
        raise DatasetError(f"{where}: field_poly must have integer coefficients")
    poly = QPoly(coeffs)
    if poly.degree < 1 or not poly.is_monic():
        raise DatasetError(f"{where}: field_poly must be monic of degree >= 1")
    try:
        field = NumberField(poly)
    except IrreducibilityError as exc:
        raise DatasetError(f"{where}: field_poly is reducible ({exc})") from exc
    except CertificationError as exc:
        raise DatasetError(f"{where}: field_poly irreducibility not certifiable ({exc})") from exc
    rows = record.get("eigen")
    if not isinstance(rows, list) or not rows:
        raise DatasetError(f"{where}: eigen must be a nonempty array")
    eigen = []
    seen = set()
    for row in rows:
        if not isinstance(row, dict) or "p" not in row:
            raise DatasetError(f"{where}: each eigen row needs a prime p")
        p = row["p"]
        if not isinstance(p, int):
            raise DatasetError(f"{where}: p must be an integer, got {p!r}")
        if p in seen:
            raise DatasetError(f"{where}: duplicate eigen row for p={p}")
        seen.add(p)
        if "a_p" not in row:
            raise DatasetError(f"{where}: missing a_p for p={p}")
        if "a_p2" not in row:
            raise DatasetError(f"{where}: missing a_p2 (the eigenvalue at p^2) for p={p}")
        a = _parse_element(field, row["a_p"], f"{where}.a_p(p={p})")
        a2 = _parse_element(field, row["a_p2"], f"{where}.a_p2(p={p})")
        eigen.append((p, a, a2))
    try:
        return EigenformData(
            label=label,
            weight=weight,
            field=field,
            eigen=tuple(eigen),
            multiplicity_one=bool(record.get("multiplicity_one", True)),
            interesting=bool(record.get("interesting", True)),
        )
    except ValueError as exc:
        raise DatasetError(f"{where}: {exc}") from exc


def parse_dataset(document) -> Dataset:
    if not isinstance(document, dict):
        raise DatasetError("dataset root must be an object")
    version = document.get("schema_version")
    if version != SCHEMA_VERSION:
        raise DatasetError(f"unsupported schema_version {version!r}")
    raw_forms = document.get("forms")
    if not isinstance(raw_forms, list) or not raw_forms:
        raise DatasetError("dataset needs a nonempty forms array")
    forms = tuple(_parse_form(rec, i) for i, rec in enumerate(raw_forms))
    return Dataset(schema_version=version, forms=forms)


def load_dataset(path) -> Dataset:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise DatasetError(f"dataset file not found: {path}")
    except UnicodeDecodeError as exc:
        raise DatasetError(f"dataset file is not UTF-8: {exc}")
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DatasetError(f"dataset is not valid JSON: {exc}")
    return parse_dataset(document)


def _render_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def render_dataset(dataset: Dataset) -> dict:
    """The JSON-ready document; parse_dataset(render_dataset(ds)) == ds."""
    forms = []
    for form in dataset.forms:
        forms.append(
            {
                "label": form.label,
                "weight": form.weight,
                "field_poly": [int(c) for c in form.field.min_poly.coeffs],
                "eigen": [
                    {
                        "p": p,
                        "a_p": [_render_rational(c) for c in a.coords],
                        "a_p2": [_render_rational(c) for c in a2.coords],
                    }
                    for p, a, a2 in form.eigen
                ],
                "multiplicity_one": form.multiplicity_one,
                "interesting": form.interesting,
            }
        )
    return {"schema_version": dataset.schema_version, "forms": forms}


def save_dataset(dataset: Dataset, path) -> None:
    Path(path).write_text(
        json.dumps(render_dataset(dataset), indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )
