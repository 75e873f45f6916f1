"""JSON reading and writing of instances and solve reports.

Rationals are written as strings in lowest terms (``"3"``, ``"7/2"``); on
input plain JSON integers are accepted too.  Output is canonical: sorted keys
and sorted element lists, so equal objects give identical bytes.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from pathlib import Path
from typing import IO, Any

from .errors import InvalidArgument, ParseError
from .instance import Instance, SolveReport, evaluate, is_feasible
from .matroid import from_descriptor, verify_axioms


def format_value(x) -> str:
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_value(text: str):
    if text == "inf":
        return math.inf
    return Fraction(text)


def _rational(x, pointer: str) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise ParseError(pointer, "expected an integer or a 'p/q' string")
    try:
        value = Fraction(x)
    except (ValueError, ZeroDivisionError):
        raise ParseError(pointer, f"not a rational number: {x!r}") from None
    if value < 0:
        raise ParseError(pointer, "weights must be nonnegative")
    return value


def _count(doc: dict, key: str, minimum: int) -> int:
    v = doc.get(key)
    if isinstance(v, bool) or not isinstance(v, int) or v < minimum:
        raise ParseError(f"/{key}", f"expected an integer >= {minimum}")
    return v


def instance_from_dict(doc: Any, check_axioms: bool = False) -> Instance:
    if not isinstance(doc, dict):
        raise ParseError("", "instance must be a JSON object")
    n = _count(doc, "n", 1)
    k = _count(doc, "k", 1)
    descs = doc.get("matroids")
    if not isinstance(descs, list) or len(descs) != k:
        raise ParseError("/matroids", f"expected {k} matroid descriptors")
    matroids = [from_descriptor(d, n, f"/matroids/{i}") for i, d in enumerate(descs)]
    rows = doc.get("weights")
    if not isinstance(rows, list) or len(rows) != k:
        raise ParseError("/weights", f"expected {k} weight rows")
    weights = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"/weights/{i}", f"expected {n} weights")
        weights.append(tuple(_rational(x, f"/weights/{i}/{e}") for e, x in enumerate(row)))
    flags = {}
    for key in ("identical_matroids", "identical_weights"):
        v = doc.get(key, False)
        if not isinstance(v, bool):
            raise ParseError(f"/{key}", "expected a boolean")
        flags[key] = v
    provenance = doc.get("provenance")
    if provenance is not None and not isinstance(provenance, dict):
        raise ParseError("/provenance", "expected an object")
    if check_axioms:
        for i, m in enumerate(matroids):
            report = verify_axioms(m)
            if not report.ok:
                axiom, sets = report.violations[0]
                raise ParseError(f"/matroids/{i}",
                                 f"violates {axiom}: {[sorted(s) for s in sets]}")
    try:
        return Instance(tuple(matroids), tuple(weights), flags["identical_matroids"],
                        flags["identical_weights"], provenance)
    except InvalidArgument as exc:
        raise ParseError("", str(exc)) from exc


def parse_instance(source: str | Path | IO[str] | dict, check_axioms: bool = False) -> Instance:
    """Read an instance from a path, an open text stream, JSON text or a decoded dict."""
    if isinstance(source, dict):
        return instance_from_dict(source, check_axioms)
    if hasattr(source, "read"):
        text = source.read()
    elif isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        text = Path(source).read_text()
    else:
        text = source
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("", f"invalid JSON: {exc.msg} at line {exc.lineno}") from None
    return instance_from_dict(doc, check_axioms)


def instance_to_dict(instance: Instance) -> dict:
    doc = {
        "n": instance.n,
        "k": instance.k,
        "matroids": [m.descriptor() for m in instance.matroids],
        "weights": [[format_value(x) for x in row] for row in instance.weights],
        "identical_matroids": instance.identical_matroids,
        "identical_weights": instance.identical_weights,
    }
    if instance.provenance is not None:
        doc["provenance"] = instance.provenance
    return doc


def dumps(doc: Any) -> str:
    return json.dumps(_plain(doc), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def serialize_instance(instance: Instance) -> str:
    return dumps(instance_to_dict(instance))


def _plain(x):
    """Make solver extras JSON-friendly (rationals become strings)."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (frozenset, set)):
        return sorted(_plain(v) for v in x)
    if isinstance(x, Fraction) or (isinstance(x, float) and math.isinf(x)):
        return format_value(x)
    if hasattr(x, "value") and not isinstance(x, (int, str, bool)):  # enums
        return x.value
    return x


def report_to_dict(report: SolveReport, instance: Instance) -> dict:
    """Canonical report; ``verified`` comes from re-evaluating the witness here."""
    objective = report.objective
    verified = (is_feasible(instance, report.parts, report.policy)
                and evaluate(instance, objective, report.parts, report.policy) == report.value)
    doc = {
        "value": format_value(report.value),
        "parts": [sorted(p) for p in report.parts],
        "objective": str(objective),
        "sense": objective.sense.value,
        "policy": report.policy.value,
        "algorithm": report.algorithm,
        "telemetry": {"candidates": report.candidates,
                      "feasibility_calls": report.feasibility_calls},
        "verified": verified,
    }
    if report.notes:
        doc["notes"] = list(report.notes)
    if report.extra:
        doc["details"] = report.extra
    return doc


def emit_report(report: SolveReport, instance: Instance) -> str:
    return dumps(report_to_dict(report, instance))
