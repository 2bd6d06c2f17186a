"""JSON documents: schemas, parsing with located errors, canonical printing.

Every document is an object with ``"kind"`` (one of :data:`KINDS`) and
``"version": 1``.  Scalars are ``{"num": n, "den": d}`` over QQ,
``{"mod": p, "val": v}`` over GF(p), or plain integers.  Floats are rejected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import jsonschema

from .coalgebra import FiniteCoalgebra
from .comatrix import Bicomodule, MoritaTakeuchiContext, RegularCopies, TriangularData
from .errors import StructureError, TricoalgError
from .exactla import GF, QQ, Field, GFElement
from .quiver import MonomialSpec, Quiver
from .series import CompleteCycleAlgebra, FgPresentation, PowerSeries, SeriesPresentation

VERSION = 1
KINDS = ("coalgebra", "quiver-spec", "context", "triangular", "module-presentation", "triangular-module")


class DocumentError(TricoalgError, ValueError):
    """Malformed JSON, schema violation or dangling label, with a location."""

    def __init__(self, category: str, message: str, path: str = "", line: int | None = None):
        self.category = category
        self.path = path
        self.line = line
        where = f" at {path}" if path else ""
        if line is not None:
            where += f" (line {line})"
        super().__init__(f"{category} error{where}: {message}")


# ---------------------------------------------------------------------------
# schemas

_SCALAR = {
    "oneOf": [
        {"type": "integer"},
        {
            "type": "object",
            "properties": {"num": {"type": "integer"}, "den": {"type": "integer", "minimum": 1}},
            "required": ["num", "den"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {"mod": {"type": "integer", "minimum": 2}, "val": {"type": "integer"}},
            "required": ["mod", "val"],
            "additionalProperties": False,
        },
    ]
}
_NAME = {"type": "string", "minLength": 1}
_FIELD = {
    "type": "object",
    "properties": {"characteristic": {"type": "integer", "minimum": 0}},
    "required": ["characteristic"],
    "additionalProperties": False,
}
_TERM = {"type": "array", "prefixItems": [_NAME, _NAME, _SCALAR], "minItems": 3, "maxItems": 3}
_HEADER = {"version": {"const": VERSION}}


def _doc(kind: str, props: dict, required: list) -> dict:
    return {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "title": f"tricoalg {kind} document",
        "type": "object",
        "properties": {"kind": {"const": kind}, **_HEADER, **props},
        "required": ["kind", "version", *required],
        "additionalProperties": False,
    }


_COALGEBRA_BODY = {
    "name": {"type": ["string", "null"]},
    "field": _FIELD,
    "basis": {"type": "array", "items": _NAME, "uniqueItems": True},
    "delta": {"type": "object", "additionalProperties": {"type": "array", "items": _TERM}},
    "counit": {"type": "object", "additionalProperties": _SCALAR},
    "grading": {"type": ["array", "null"], "items": {"type": "integer", "minimum": 0}},
}
_SPEC_BODY = {
    "name": {"type": ["string", "null"]},
    "field": _FIELD,
    "vertices": {"type": "array", "items": _NAME, "uniqueItems": True},
    "arrows": {
        "type": "array",
        "items": {
            "type": "object",
            "properties": {"label": _NAME, "source": _NAME, "target": _NAME},
            "required": ["label", "source", "target"],
            "additionalProperties": False,
        },
    },
    "cycles": {"type": "array", "items": {"type": "array", "items": _NAME, "minItems": 1}},
    "extras": {"type": "array", "items": {"type": "array", "items": _NAME, "minItems": 1}},
}
_BICOMODULE = {
    "type": "object",
    "properties": {
        "names": {"type": "array", "items": _NAME, "uniqueItems": True},
        "left": {"type": "object", "additionalProperties": {"type": "array", "items": _TERM}},
        "right": {"type": "object", "additionalProperties": {"type": "array", "items": _TERM}},
    },
    "required": ["names", "left", "right"],
    "additionalProperties": False,
}


def _inline(body: dict, required: list) -> dict:
    return {"type": "object", "properties": body, "required": required, "additionalProperties": False}


_INLINE_COALGEBRA = _inline(_COALGEBRA_BODY, ["field", "basis", "delta", "counit"])
_INLINE_SPEC = _inline(_SPEC_BODY, ["field", "vertices", "arrows", "cycles", "extras"])
_POLY = {"type": "array", "items": _SCALAR}
_PRESENTATION_BODY = {
    "ring": {
        "oneOf": [
            {"const": "power-series"},
            _INLINE_SPEC,
        ]
    },
    "generators": {"oneOf": [{"type": "integer", "minimum": 0}, {"type": "array", "items": _NAME}]},
    "relations": {
        "type": "array",
        "items": {
            "oneOf": [
                {"type": "array", "items": _POLY},
                {"type": "object", "additionalProperties": {"type": "object", "additionalProperties": _SCALAR}},
            ]
        },
    },
}
_INLINE_PRESENTATION = _inline(_PRESENTATION_BODY, ["ring", "generators", "relations"])

SCHEMAS = {
    "coalgebra": _doc("coalgebra", _COALGEBRA_BODY, ["field", "basis", "delta", "counit"]),
    "quiver-spec": _doc("quiver-spec", _SPEC_BODY, ["field", "vertices", "arrows", "cycles", "extras"]),
    "context": _doc(
        "context",
        {
            "D": _INLINE_COALGEBRA,
            "E": _INLINE_COALGEBRA,
            "X": _BICOMODULE,
            "Y": _BICOMODULE,
            "phi": {"type": "object", "additionalProperties": {"type": "array", "items": _TERM}},
            "psi": {"type": "object", "additionalProperties": {"type": "array", "items": _TERM}},
        },
        ["D", "E", "X", "Y", "phi", "psi"],
    ),
    "triangular": _doc(
        "triangular",
        {
            "D": {"oneOf": [_INLINE_COALGEBRA, _INLINE_SPEC]},
            "E": {"oneOf": [_INLINE_COALGEBRA, _INLINE_SPEC]},
            "M": {
                "oneOf": [
                    _BICOMODULE,
                    _inline({"regular_copies": {"type": "integer", "minimum": 1}}, ["regular_copies"]),
                ]
            },
        },
        ["D", "E", "M"],
    ),
    "module-presentation": _doc("module-presentation", _PRESENTATION_BODY, ["ring", "generators", "relations"]),
    "triangular-module": _doc(
        "triangular-module",
        {
            "X": {"oneOf": [_inline({"finite_dim": {"type": "integer", "minimum": 0}}, ["finite_dim"]), _INLINE_PRESENTATION]},
            "y_dim": {"type": "integer", "minimum": 0},
            "P": {
                "oneOf": [
                    {"type": "null"},
                    _inline({"finite": {"type": "array", "items": {"type": "array", "items": {"type": "array", "items": _POLY}}}}, ["finite"]),
                    _inline({"regular": {"type": "array", "items": {"type": "array", "items": _POLY}}}, ["regular"]),
                ]
            },
        },
        ["X", "y_dim", "P"],
    ),
}


# ---------------------------------------------------------------------------
# scalars


def parse_scalar(x, F: Field, path: str):
    if isinstance(x, bool) or isinstance(x, float):
        raise DocumentError("schema", "scalars must be integers or exact objects", path)
    if isinstance(x, int):
        return F(x)
    if "num" in x:
        if not F.is_rational:
            raise DocumentError("resolution", "rational scalar in a finite-field document", path)
        return Fraction(x["num"], x["den"])
    if F.is_rational or x["mod"] != F.characteristic:
        raise DocumentError("resolution", f"scalar modulus {x['mod']} does not match the field", path)
    return F(x["val"])


def print_scalar(x) -> Any:
    if isinstance(x, GFElement):
        return {"mod": x.p, "val": x.val}
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}


def _field(d: dict) -> Field:
    p = d["characteristic"]
    return QQ if p == 0 else GF(p)


def _print_field(F: Field) -> dict:
    return {"characteristic": F.characteristic}


# ---------------------------------------------------------------------------
# readers


def _lookup(index: dict, name: str, path: str) -> int:
    if name not in index:
        raise DocumentError("resolution", f"unknown label {name!r}", path)
    return index[name]


def read_coalgebra(d: dict, path: str = "") -> FiniteCoalgebra:
    F = _field(d["field"])
    basis = list(d["basis"])
    idx = {b: i for i, b in enumerate(basis)}
    for key in list(d["delta"]) + list(d["counit"]):
        _lookup(idx, key, f"{path}/delta")
    delta = []
    for b in basis:
        terms: dict = {}
        for t, (l, r, c) in enumerate(d["delta"].get(b, [])):
            p = f"{path}/delta/{b}/{t}"
            key = (_lookup(idx, l, p), _lookup(idx, r, p))
            terms[key] = terms.get(key, F.zero) + parse_scalar(c, F, p)
        delta.append({k: v for k, v in terms.items() if v})
    counit = [parse_scalar(d["counit"][b], F, f"{path}/counit/{b}") if b in d["counit"] else F.zero for b in basis]
    try:
        return FiniteCoalgebra(basis, delta, counit, F, d.get("grading"), d.get("name"))
    except StructureError as exc:
        raise DocumentError("resolution", str(exc), path) from None


def read_spec(d: dict, path: str = "") -> MonomialSpec:
    F = _field(d["field"])
    try:
        Q = Quiver(d["vertices"], [(a["label"], a["source"], a["target"]) for a in d["arrows"]])
        return MonomialSpec(Q, [tuple(c) for c in d["cycles"]], [tuple(e) for e in d["extras"]], F, d.get("name"))
    except (StructureError, KeyError) as exc:
        raise DocumentError("resolution", str(exc), path) from None


def _read_terms(raw: dict, left_idx: dict, right_idx: dict, names: list, F: Field, path: str) -> list:
    for key in raw:
        if key not in names:
            raise DocumentError("resolution", f"unknown label {key!r}", path)
    out = []
    for m in names:
        terms: dict = {}
        for t, (a, b, c) in enumerate(raw.get(m, [])):
            p = f"{path}/{m}/{t}"
            key = (_lookup(left_idx, a, p), _lookup(right_idx, b, p))
            terms[key] = terms.get(key, F.zero) + parse_scalar(c, F, p)
        out.append({k: v for k, v in terms.items() if v})
    return out


def read_bicomodule(d: dict, D: FiniteCoalgebra, E: FiniteCoalgebra, path: str) -> Bicomodule:
    names = list(d["names"])
    midx = {m: i for i, m in enumerate(names)}
    didx = {b: i for i, b in enumerate(D.basis)}
    eidx = {b: i for i, b in enumerate(E.basis)}
    left = _read_terms(d["left"], didx, midx, names, D.field, f"{path}/left")
    # right terms are written (m', e); stored as (e, m')
    right_raw = _read_terms(d["right"], midx, eidx, names, E.field, f"{path}/right")
    right = [{(e, mp): c for (mp, e), c in r.items()} for r in right_raw]
    return Bicomodule(D, E, names, left, right)


def _read_piece(d: dict, path: str):
    if "basis" in d:
        return read_coalgebra(d, path)
    return read_spec(d, path)


def read_presentation(d: dict, path: str = ""):
    if d["ring"] == "power-series":
        g = d["generators"]
        if not isinstance(g, int):
            raise DocumentError("schema", "power-series generators must be a count", f"{path}/generators")
        rows = []
        for i, r in enumerate(d["relations"]):
            if not isinstance(r, list) or len(r) != g:
                raise DocumentError("resolution", "relation length does not match the generators", f"{path}/relations/{i}")
            rows.append([PowerSeries([parse_scalar(c, QQ, f"{path}/relations/{i}/{j}") for c in poly]) for j, poly in enumerate(r)])
        return SeriesPresentation(g, rows)
    spec = read_spec(d["ring"], f"{path}/ring")
    try:
        A = CompleteCycleAlgebra(spec)
        rels = []
        for i, r in enumerate(d["relations"]):
            if not isinstance(r, dict):
                raise DocumentError("schema", "cycle-algebra relations are objects", f"{path}/relations/{i}")
            rels.append({int(j): {lab: parse_scalar(c, QQ, f"{path}/relations/{i}/{j}/{lab}") for lab, c in e.items()} for j, e in r.items()})
        return FgPresentation(A, list(d["generators"]), rels)
    except (StructureError, ValueError) as exc:
        if isinstance(exc, DocumentError):
            raise
        raise DocumentError("resolution", str(exc), path) from None


def _read_row(row, path):
    return [PowerSeries([parse_scalar(c, QQ, f"{path}/{j}") for c in poly]) for j, poly in enumerate(row)]


def read_triangular_module(d: dict, path: str = ""):
    from .splitting import FiniteP, RegularP, TriangularModule

    X = d["X"]["finite_dim"] if "finite_dim" in d["X"] else read_presentation(d["X"], f"{path}/X")
    P = d["P"]
    if P is None:
        act = None
    elif "finite" in P:
        act = FiniteP([[_read_row(r, f"{path}/P/finite/{k}/{j}") for j, r in enumerate(imgs)] for k, imgs in enumerate(P["finite"])])
    else:
        act = RegularP([_read_row(r, f"{path}/P/regular/{j}") for j, r in enumerate(P["regular"])])
    return TriangularModule(X, d["y_dim"], act)


def _truncate_for(spec: MonomialSpec, terms: dict, pos: int) -> FiniteCoalgebra:
    from .quiver import instantiate

    depth = 0
    for ts in terms.values():
        for t in ts:
            lab = t[pos]
            if lab not in spec.quiver.vertices:
                depth = max(depth, len(lab.split(".")))
    return instantiate(spec, depth)


@dataclass
class Document:
    kind: str
    value: Any
    raw: dict


def validate(d: dict) -> str:
    if not isinstance(d, dict) or d.get("kind") not in SCHEMAS:
        raise DocumentError("schema", f"'kind' must be one of {list(KINDS)}", "/kind")
    validator = jsonschema.Draft202012Validator(SCHEMAS[d["kind"]])
    errors = sorted(validator.iter_errors(d), key=lambda e: (len(e.absolute_path), list(map(str, e.absolute_path))))
    if errors:
        err = errors[0]
        path = "/" + "/".join(str(p) for p in err.absolute_path)
        raise DocumentError("schema", err.message, path)
    return d["kind"]


def from_dict(d: dict) -> Document:
    kind = validate(d)
    if kind == "coalgebra":
        value = read_coalgebra(d)
    elif kind == "quiver-spec":
        value = read_spec(d)
    elif kind == "context":
        D = read_coalgebra(d["D"], "/D")
        E = read_coalgebra(d["E"], "/E")
        X = read_bicomodule(d["X"], D, E, "/X")
        Y = read_bicomodule(d["Y"], E, D, "/Y")
        xi = {m: i for i, m in enumerate(X.names)}
        yi = {m: i for i, m in enumerate(Y.names)}
        phi = _read_terms(d["phi"], xi, yi, D.basis, D.field, "/phi")
        psi = _read_terms(d["psi"], yi, xi, E.basis, E.field, "/psi")
        value = MoritaTakeuchiContext(D, E, X, Y, phi, psi)
    elif kind == "triangular":
        D = _read_piece(d["D"], "/D")
        E = _read_piece(d["E"], "/E")
        if "regular_copies" in d["M"]:
            M = RegularCopies(d["M"]["regular_copies"])
        else:
            # a spec piece is truncated just deep enough for the labels in M
            MD = D if isinstance(D, FiniteCoalgebra) else _truncate_for(D, d["M"]["left"], 0)
            ME = E if isinstance(E, FiniteCoalgebra) else _truncate_for(E, d["M"]["right"], 1)
            M = read_bicomodule(d["M"], MD, ME, "/M")
        value = TriangularData(D, E, M)
    elif kind == "module-presentation":
        value = read_presentation(d)
    else:
        value = read_triangular_module(d)
    return Document(kind, value, d)


def parse(text: str) -> Document:
    """Parse and validate a document; errors carry a line or a JSON path."""
    try:
        d = json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise DocumentError("json", exc.msg, line=exc.lineno) from None
    return from_dict(d)


def _reject_float(s):
    raise DocumentError("schema", f"decimal number {s} is not exact")


# ---------------------------------------------------------------------------
# writers


def coalgebra_dict(C: FiniteCoalgebra, header: bool = True) -> dict:
    out = {"kind": "coalgebra", "version": VERSION} if header else {}
    out.update({
        "name": C.name,
        "field": _print_field(C.field),
        "basis": list(C.basis),
        "delta": {
            C.basis[k]: [[C.basis[i], C.basis[j], print_scalar(x)] for (i, j), x in sorted(C.delta[k].items())]
            for k in range(C.dim)
        },
        "counit": {C.basis[k]: print_scalar(x) for k, x in enumerate(C.counit) if x},
        "grading": list(C.grading) if C.grading is not None else None,
    })
    return out


def spec_dict(s: MonomialSpec, header: bool = True) -> dict:
    out = {"kind": "quiver-spec", "version": VERSION} if header else {}
    out.update({
        "name": s.name,
        "field": _print_field(s.field),
        "vertices": list(s.quiver.vertices),
        "arrows": [{"label": a.label, "source": a.source, "target": a.target} for a in s.quiver.arrows],
        "cycles": [list(c) for c in s.cycles],
        "extras": [list(p.arrows) for p in s.extras],
    })
    return out


def _terms_dict(names, coaction, lnames, rnames) -> dict:
    return {
        names[m]: [[lnames[a], rnames[b], print_scalar(x)] for (a, b), x in sorted(coaction[m].items())]
        for m in range(len(names))
    }


def bicomodule_dict(B: Bicomodule) -> dict:
    right = [{(mp, e): x for (e, mp), x in r.items()} for r in B.right_coaction]
    return {
        "names": list(B.names),
        "left": _terms_dict(B.names, B.left_coaction, B.left.basis, B.names),
        "right": _terms_dict(B.names, right, B.names, B.right.basis),
    }


def _piece_dict(p) -> dict:
    return coalgebra_dict(p, False) if isinstance(p, FiniteCoalgebra) else spec_dict(p, False)


def _poly(x) -> list:
    x = PowerSeries.coerce(x)
    if not x.exact:
        raise DocumentError("resolution", "only exact polynomials can be written")
    cs = list(x.coeffs)
    while cs and not cs[-1]:
        cs.pop()
    return [print_scalar(c) for c in cs]


def presentation_dict(p, header: bool = True) -> dict:
    out = {"kind": "module-presentation", "version": VERSION} if header else {}
    if isinstance(p, SeriesPresentation):
        out.update({"ring": "power-series", "generators": p.ngens, "relations": [[_poly(x) for x in r] for r in p.relations]})
    else:
        out.update({
            "ring": spec_dict(p.algebra.spec, False),
            "generators": list(p.generators),
            "relations": [
                {str(j): {q.label: print_scalar(c) for q, c in sorted(poly.items(), key=lambda t: (t[0].length, t[0].label))} for j, poly in sorted(r.items())}
                for r in p.relations
            ],
        })
    return out


def to_dict(value) -> dict:
    from .splitting import FiniteP, RegularP, TriangularModule

    if isinstance(value, FiniteCoalgebra):
        return coalgebra_dict(value)
    if isinstance(value, MonomialSpec):
        return spec_dict(value)
    if isinstance(value, MoritaTakeuchiContext):
        X, Y, D, E = value.X, value.Y, value.D, value.E
        return {
            "kind": "context", "version": VERSION,
            "D": coalgebra_dict(D, False), "E": coalgebra_dict(E, False),
            "X": bicomodule_dict(X), "Y": bicomodule_dict(Y),
            "phi": _terms_dict(D.basis, value.phi, X.names, Y.names),
            "psi": _terms_dict(E.basis, value.psi, Y.names, X.names),
        }
    if isinstance(value, TriangularData):
        M = {"regular_copies": value.M.copies} if isinstance(value.M, RegularCopies) else bicomodule_dict(value.M)
        return {"kind": "triangular", "version": VERSION, "D": _piece_dict(value.D), "E": _piece_dict(value.E), "M": M}
    if isinstance(value, (SeriesPresentation, FgPresentation)):
        return presentation_dict(value)
    if isinstance(value, TriangularModule):
        X = {"finite_dim": value.X} if isinstance(value.X, int) else presentation_dict(value.X, False)
        if value.P is None:
            P = None
        elif isinstance(value.P, FiniteP):
            P = {"finite": [[[_poly(x) for x in row] for row in imgs] for imgs in value.P.images]}
        elif isinstance(value.P, RegularP):
            P = {"regular": [[_poly(x) for x in row] for row in value.P.phi]}
        else:
            raise TypeError("unknown P-action")
        return {"kind": "triangular-module", "version": VERSION, "X": X, "y_dim": value.y_dim, "P": P}
    raise TypeError(f"no document form for {type(value).__name__}")


def dumps(d: dict) -> str:
    """Canonical text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(d, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def print_document(value) -> str:
    return dumps(to_dict(value))
