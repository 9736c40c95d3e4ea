"""Curve documents in, ideal listings out.

A curve document is JSON::

    {"p": 7,
     "steps": [{"n": 1,
                "additive": [{"power": 0, "coeff": -1}],
                "rhs": [{"coeff": 1, "exps": [4]}]}]}

``power`` j is the coefficient of ``X^(p^j)``; ``exps`` of step i has i entries.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Sequence

import jsonschema

from .errors import HKGError, TowerError
from .order import ExpTuple, Monomial
from .relations import QuadForm, SkipDiagnostic
from .semigroup import basis_A
from .tower import Tower, TowerStep

FORMATS = ("plain", "json", "singular", "macaulay2")

_TERM = {
    "type": "object",
    "required": ["power", "coeff"],
    "properties": {"power": {"type": "integer"}, "coeff": {"type": "integer"}},
    "additionalProperties": False,
}
_MONO = {
    "type": "object",
    "required": ["coeff", "exps"],
    "properties": {"coeff": {"type": "integer"}, "exps": {"type": "array", "items": {"type": "integer"}}},
    "additionalProperties": False,
}
CURVE_SCHEMA = {
    "type": "object",
    "required": ["p", "steps"],
    "properties": {
        "p": {"type": "integer"},
        "steps": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["n", "additive", "rhs"],
                "properties": {
                    "n": {"type": "integer"},
                    "additive": {"type": "array", "items": _TERM},
                    "rhs": {"type": "array", "items": _MONO},
                },
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}


class CurveFormatError(HKGError):
    """The document is unreadable or does not follow the curve schema."""


def tower_from_document(doc: Any) -> Tower:
    try:
        jsonschema.validate(doc, CURVE_SCHEMA)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(x) for x in exc.absolute_path) or "<root>"
        raise CurveFormatError(f"malformed curve document at {path}: {exc.message}") from None
    steps = []
    for idx, s in enumerate(doc["steps"], start=1):
        additive: dict[int, int] = {}
        for term in s["additive"]:
            if term["power"] in additive:
                raise TowerError("duplicate-term", f"additive power {term['power']} listed twice", idx)
            additive[term["power"]] = term["coeff"]
        rhs: dict[ExpTuple, int] = {}
        for term in s["rhs"]:
            key = tuple(term["exps"])
            if key in rhs:
                raise TowerError("duplicate-term", f"rhs exponents {list(key)} listed twice", idx)
            rhs[key] = term["coeff"]
        steps.append(TowerStep(s["n"], additive, rhs))
    return Tower(doc["p"], tuple(steps))


def parse_curve_file(path: str | Path) -> Tower:
    """Load and validate a curve document.

    Raises :class:`CurveFormatError` for I/O and format problems and
    :class:`TowerError` when the tower itself is invalid.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CurveFormatError(f"cannot read {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CurveFormatError(f"{path}: invalid JSON: {exc}") from None
    return tower_from_document(doc)


def balanced(c: int, p: int) -> int:
    c %= p
    return c - p if c > p // 2 else c


def tower_to_document(tower: Tower) -> dict:
    p = tower.p
    return {
        "p": p,
        "steps": [
            {
                "n": s.n,
                "additive": [{"power": j, "coeff": balanced(c, p)} for j, c in s.additive.items()],
                "rhs": [{"coeff": balanced(c, p), "exps": list(key)} for key, c in s.rhs.items()],
            }
            for s in tower.steps
        ],
    }


# -- ideal export ---------------------------------------------------------


def variable_name(t: Sequence[int]) -> str:
    return "w_" + "_".join(str(e) for e in t)


def m2_variable_name(t: Sequence[int]) -> str:
    return "w_(" + ",".join(str(e) for e in t) + ")"


def monomial_str(m: Monomial, name=variable_name) -> str:
    parts = []
    i = 0
    while i < len(m):
        j = i
        while j < len(m) and m[j] == m[i]:
            j += 1
        parts.append(name(m[i]) + (f"^{j - i}" if j - i > 1 else ""))
        i = j
    return "*".join(parts)


def form_str(q: QuadForm, canonical: bool = False, name=variable_name) -> str:
    """One generator as text; balanced coefficients unless ``canonical``."""
    if q.is_zero():
        return "0"
    out = []
    for m, c in q.terms.items():
        c = c % q.p if canonical else balanced(c, q.p)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = monomial_str(m, name) if mag == 1 else f"{mag}*{monomial_str(m, name)}"
        if not out:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f"{sign} {body}")
    return " ".join(out)


def _source_json(source: tuple) -> Any:
    if not source:
        return None
    if source[0] == "G0":
        return {"family": "G0", "sum": list(source[1])}
    return {"family": "G", "v": list(source[1]), "step": source[2]}


def _source_from_json(obj: Any) -> tuple:
    if obj is None:
        return ()
    if obj["family"] == "G0":
        return ("G0", tuple(obj["sum"]))
    return ("G", tuple(obj["v"]), obj["step"])


def ideal_to_json(tower: Tower, J: Sequence[QuadForm], skipped: Sequence[SkipDiagnostic] = ()) -> dict:
    return {
        "p": tower.p,
        "variables": [list(t) for t in basis_A(tower)],
        "generators": [
            {
                "source": _source_json(q.source),
                "terms": [{"coeff": c, "factors": [list(f) for f in m]} for m, c in q.terms.items()],
            }
            for q in J
        ],
        "skipped": [
            {"v": list(d.v), "step": d.step, "tuple": list(d.tuple), "reason": d.reason} for d in skipped
        ],
    }


def ideal_from_json(doc: dict) -> tuple[int, list[QuadForm]]:
    p = doc["p"]
    forms = []
    for gen in doc["generators"]:
        terms = {tuple(tuple(f) for f in t["factors"]): t["coeff"] for t in gen["terms"]}
        forms.append(QuadForm(p, terms, _source_from_json(gen.get("source"))))
    return p, forms


def export_ideal(
    tower: Tower,
    J: Sequence[QuadForm],
    fmt: str = "plain",
    skipped: Sequence[SkipDiagnostic] = (),
    canonical: bool = False,
    paper_fidelity: bool = False,
) -> str:
    """Serialize a generator list; output depends only on the arguments."""
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")
    if paper_fidelity:
        doubled = []
        for q in J:
            doubled.append(q)
            if q.source[:1] == ("G0",):
                doubled.append(-q)
        J = doubled
    if fmt == "json":
        return json.dumps(ideal_to_json(tower, J, skipped), indent=1) + "\n"
    if fmt == "plain":
        lines = [form_str(q, canonical) for q in J]
        lines += [f"# skipped v={list(d.v)} step {d.step}: {d.reason}" for d in skipped]
        return "".join(line + "\n" for line in lines)
    A = basis_A(tower)
    if fmt == "singular":
        names = ", ".join(variable_name(t) for t in A)
        body = ",\n  ".join(form_str(q, canonical) for q in J) if J else "0"
        return f"ring R = {tower.p}, ({names}), dp;\nideal I =\n  {body};\n"
    names = ", ".join(m2_variable_name(t) for t in A)
    body = ",\n  ".join(form_str(q, canonical, m2_variable_name) for q in J) if J else "0_R"
    return f"R = ZZ/{tower.p}[{names}, MonomialOrder => GRevLex];\nI = ideal(\n  {body}\n  );\n"
