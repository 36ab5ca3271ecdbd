"""Model persistence: a canonical structured-text (JSON) document.

The document carries g, the labelled bidegreed basis, the unit and origin
indices, the multiplication table as sparse triples (i, j, k, "num/den")
with i <= j, and the Fourier matrix as dense rows of "num/den" strings.
Export is canonical (fixed key order, sorted triples, lowest-terms
rationals with an explicit denominator), so export -> import -> export is
byte-identical and the SHA-256 of the exported bytes serves as the model
fingerprint.
"""

from __future__ import annotations

import hashlib
import json
import re
from fractions import Fraction
from pathlib import Path

from .errors import ModelParseError
from .model import ModelAlgebra, antisym_model, pathological_model, theta_model, violator_model

SCHEMA = "bigraded-model/1"

BUILDERS = {
    "theta": theta_model,
    "antisym": antisym_model,
    "pathological": pathological_model,
    "violator": violator_model,
}

_RATIONAL_RE = re.compile(r"^(-?\d+)/(\d+)$")


def build_model(name: str, g: int) -> ModelAlgebra:
    try:
        builder = BUILDERS[name]
    except KeyError:
        raise ModelParseError(
            f"unknown builder {name!r}; expected one of {sorted(BUILDERS)}",
            field="builder",
        ) from None
    return builder(g)


def _format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _parse_rational(text: str, field: str) -> Fraction:
    if not isinstance(text, str):
        raise ModelParseError(f"{field}: rational must be a 'num/den' string", field)
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ModelParseError(f"{field}: malformed rational {text!r}", field)
    num, den = int(m.group(1)), int(m.group(2))
    if den == 0:
        raise ModelParseError(f"{field}: zero denominator", field)
    value = Fraction(num, den)
    if (value.numerator, value.denominator) != (num, den):
        raise ModelParseError(f"{field}: rational {text!r} is not in lowest terms", field)
    return value


def export_model(model: ModelAlgebra) -> str:
    triples = []
    for (i, j), entries in model._mul.items():
        if i > j:
            continue
        for k, c in entries:
            triples.append([i, j, k, _format_rational(c)])
    triples.sort(key=lambda t: (t[0], t[1], t[2]))
    doc = {
        "schema": SCHEMA,
        "g": model.g,
        "basis": [
            {"label": label, "p": bd.p, "q": bd.q}
            for label, bd in zip(model.labels, model.bidegrees)
        ],
        "unit": model.unit_index,
        "star_unit": model.star_unit_index,
        "mul": triples,
        "fm": [[_format_rational(c) for c in row] for row in model.fm.rows],
    }
    return json.dumps(doc, indent=1) + "\n"


def import_model(text: str) -> ModelAlgebra:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelParseError(f"not valid JSON: {exc}", field="document") from None
    if not isinstance(doc, dict):
        raise ModelParseError("document must be a JSON object", field="document")
    if doc.get("schema") != SCHEMA:
        raise ModelParseError(
            f"unsupported schema {doc.get('schema')!r}", field="schema"
        )
    try:
        g = int(doc["g"])
    except (KeyError, TypeError, ValueError):
        raise ModelParseError("missing or malformed field 'g'", field="g") from None
    basis_raw = doc.get("basis")
    if not isinstance(basis_raw, list) or not basis_raw:
        raise ModelParseError("missing or empty 'basis'", field="basis")
    basis = []
    for n, entry in enumerate(basis_raw):
        try:
            basis.append((str(entry["label"]), (int(entry["p"]), int(entry["q"]))))
        except (KeyError, TypeError, ValueError):
            raise ModelParseError(
                f"basis entry {n} is malformed", field=f"basis[{n}]"
            ) from None
    dim = len(basis)
    for key in ("unit", "star_unit"):
        if not isinstance(doc.get(key), int) or not 0 <= doc[key] < dim:
            raise ModelParseError(f"missing or out-of-range '{key}'", field=key)
    mul_raw = doc.get("mul")
    if not isinstance(mul_raw, list):
        raise ModelParseError("missing 'mul'", field="mul")
    mul: dict[tuple[int, int], dict[int, Fraction]] = {}
    for n, triple in enumerate(mul_raw):
        field = f"mul[{n}]"
        if not (isinstance(triple, list) and len(triple) == 4):
            raise ModelParseError(f"{field}: expected [i, j, k, rational]", field)
        i, j, k, raw = triple
        for idx in (i, j, k):
            if not isinstance(idx, int) or not 0 <= idx < dim:
                raise ModelParseError(f"{field}: index out of range", field)
        if i > j:
            raise ModelParseError(f"{field}: triples must have i <= j", field)
        c = _parse_rational(raw, field)
        mul.setdefault((i, j), {})[k] = c
        if i != j:
            mul.setdefault((j, i), {})[k] = c
    fm_raw = doc.get("fm")
    if not (isinstance(fm_raw, list) and len(fm_raw) == dim):
        raise ModelParseError("missing or wrongly sized 'fm'", field="fm")
    fm_rows = []
    for r, row in enumerate(fm_raw):
        if not (isinstance(row, list) and len(row) == dim):
            raise ModelParseError(f"fm row {r} has the wrong length", field=f"fm[{r}]")
        fm_rows.append([_parse_rational(c, f"fm[{r}]") for c in row])
    return ModelAlgebra(
        g, basis, mul, fm_rows, unit_index=doc["unit"], star_unit_index=doc["star_unit"]
    )


def fingerprint(model: ModelAlgebra) -> str:
    return hashlib.sha256(export_model(model).encode("utf-8")).hexdigest()


def save_model(model: ModelAlgebra, path: str | Path) -> None:
    Path(path).write_text(export_model(model), encoding="utf-8")


def load_model(path: str | Path) -> ModelAlgebra:
    return import_model(Path(path).read_text(encoding="utf-8"))
