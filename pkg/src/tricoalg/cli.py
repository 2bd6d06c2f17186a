"""Command line front end: ``tricoalg <command> [files] [flags]``.

Reports are JSON with sorted keys.  Exit status: 0 for definite answers, 2
when some answer is undecided at the configured precision or bound, 1 on
input errors.
"""

from __future__ import annotations

import argparse
import sys
import time
import traceback
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import documents
from .coalgebra import LEFT, RIGHT, FiniteCoalgebra, dual_algebra, is_serial as coalgebra_serial, verify_coalgebra
from .comatrix import (
    MoritaTakeuchiContext,
    Refusal,
    TriangularData,
    check_context,
    generalized_comatrix,
    idempotent_decompose,
    is_left_artinian_triangular,
    triangular_comatrix,
    triangular_decompose,
)
from .documents import DocumentError, dumps, print_scalar
from .errors import InsufficientPrecision, TricoalgError
from .exactla import Subspace
from .quiver import MonomialSpec, ext_quiver, ext_quiver_spec, is_serial as spec_serial
from .series import FgPresentation, SeriesPresentation, rat_part_fg

DEFINITE, UNDECIDED = "definite", "undecided"


class InputError(TricoalgError, ValueError):
    pass


def _need(doc, *kinds):
    if doc.kind not in kinds:
        raise InputError(f"command needs a {' or '.join(kinds)} document, got {doc.kind}")


def _coalgebra_of(doc) -> FiniteCoalgebra:
    v = doc.value
    if isinstance(v, FiniteCoalgebra):
        return v
    if isinstance(v, MoritaTakeuchiContext):
        return generalized_comatrix(v, check=False)
    if isinstance(v, TriangularData) and isinstance(v.D, FiniteCoalgebra) and isinstance(v.E, FiniteCoalgebra):
        return triangular_comatrix(v, check=False)
    raise InputError(f"a finite coalgebra cannot be built from this {doc.kind} document")


def _report(rep) -> dict:
    return {"coassociative": rep.coassociative, "counital": rep.counital, "witness": rep.witness, "detail": rep.detail}


# ---------------------------------------------------------------------------
# commands: each returns (result, status)


def cmd_verify(doc, args):
    if doc.kind == "quiver-spec":
        rep = doc.value.validate()
        return {"valid": rep.ok, "violations": [[k, w] for k, w in rep.violations]}, DEFINITE
    if doc.kind == "context":
        ctx = doc.value
        rep = check_context(ctx)
        C = generalized_comatrix(ctx, check=False)
        return {
            "context_ok": rep.ok,
            "failed_identity": rep.identity,
            "element": rep.element,
            "comatrix": _report(verify_coalgebra(C)),
        }, DEFINITE
    if doc.kind in ("coalgebra", "triangular"):
        if doc.kind == "triangular":
            t = doc.value
            if not isinstance(t.D, FiniteCoalgebra) or not isinstance(t.E, FiniteCoalgebra):
                reps = {k: p.validate() for k, p in (("D", t.D), ("E", t.E)) if isinstance(p, MonomialSpec)}
                return {"pieces_valid": {k: r.ok for k, r in sorted(reps.items())}}, DEFINITE
            bic = t.M.verify()
            out = _report(verify_coalgebra(_coalgebra_of(doc)))
            out["M_bicomodule"] = _report(bic)
            return out, DEFINITE
        return _report(verify_coalgebra(doc.value)), DEFINITE
    raise InputError(f"nothing to verify in a {doc.kind} document")


def cmd_dual(doc, args):
    C = _coalgebra_of(doc)
    A = dual_algebra(C)
    products = {}
    for (i, j), prod in sorted(A.mult.items()):
        if prod:
            products[f"{A.basis[i]}*{A.basis[j]}"] = {A.basis[k]: print_scalar(x) for k, x in sorted(prod.items())}
    return {
        "basis": list(A.basis),
        "unit": {A.basis[k]: print_scalar(x) for k, x in sorted(A.unit.items())},
        "products": products,
        "associative_unital": bool(A.verify()),
    }, DEFINITE


def cmd_ext_quiver(doc, args):
    if doc.kind == "quiver-spec":
        Q = ext_quiver_spec(doc.value)
    else:
        Q = ext_quiver(_coalgebra_of(doc))
    out = Q.as_dict()
    out["disjoint_cycles"] = Q.is_disjoint_cycles()
    if args.dot:
        out["dot"] = Q.to_dot()
    return out, DEFINITE


def _sides(side):
    return [LEFT, RIGHT] if side == "both" else [side]


def cmd_serial(doc, args):
    out = {}
    for side in _sides(args.side):
        if doc.kind == "quiver-spec":
            rep = spec_serial(doc.value, side)
            out[side] = {"serial": rep.serial, "witness": rep.witness}
        else:
            ok, layers = coalgebra_serial(_coalgebra_of(doc), side)
            out[side] = {"serial": ok, "layers": {k: list(v) for k, v in sorted(layers.items())}}
    return out, DEFINITE


def cmd_splitting(doc, args):
    from .splitting import UNDECIDABLE, decide_splitting

    _need(doc, "quiver-spec")
    out, status = {}, DEFINITE
    for side in _sides(args.side):
        dec = decide_splitting(doc.value, side)
        out[side] = dec.as_dict()
        if dec.verdict == UNDECIDABLE:
            status = UNDECIDED
    return out, status


def cmd_rat(doc, args):
    from .splitting import Undecided, rat_oracle, rat_triangular, split_presentation

    _need(doc, "module-presentation", "triangular-module")
    try:
        if doc.kind == "module-presentation":
            res = rat_part_fg(doc.value, args.precision)
            out = res.as_dict()
            if isinstance(doc.value, FgPresentation):
                out["complement"] = split_presentation(doc.value, args.precision).as_dict()
            return out, DEFINITE
        H = doc.value
        f = rat_triangular(H, precision=args.precision)
        if isinstance(f, Undecided):
            return {"undecided": f.reason}, UNDECIDED
        o = rat_oracle(H, bound=args.bound, window=f.window)
        if isinstance(o, Undecided):
            return {"undecided": o.reason, "formula": f.as_dict()}, UNDECIDED
        out = f.as_dict()
        out["rat_Y_basis"] = [[print_scalar(v.get(j, 0)) for j in range(H.y_dim)] for v in f.y_part.basis()]
        out["oracle_agrees"] = f.x_part == o.x_part and f.y_part == o.y_part
        return out, DEFINITE
    except InsufficientPrecision as exc:
        return {"undecided": str(exc)}, UNDECIDED


def cmd_decompose(doc, args):
    C = _coalgebra_of(doc)
    if args.idempotent:
        raw = documents.json.loads(Path(args.idempotent).read_text(encoding="utf-8"), parse_float=documents._reject_float)
        if not isinstance(raw, dict) or not isinstance(raw.get("idempotent"), dict):
            raise DocumentError("schema", "idempotent file needs an 'idempotent' object", "/idempotent")
        e = {}
        for name, x in raw["idempotent"].items():
            if name not in C.basis:
                raise DocumentError("resolution", f"unknown label {name!r}", f"/idempotent/{name}")
            e[C.index(name)] = documents.parse_scalar(x, C.field, f"/idempotent/{name}")
        blocks = idempotent_decompose(C, e)
        return {
            "blocks": {k: s.dim for k, s in sorted(blocks.spaces.items())},
            "verified": blocks.verified,
            "reassembled": documents.coalgebra_dict(blocks.comatrix, False),
        }, DEFINITE
    if not args.triangular:
        raise InputError("decompose needs --idempotent FILE or --triangular")
    if args.split:
        xnames = args.split.split(",")
    elif doc.kind == "triangular":
        xnames = [b for b in C.basis[: doc.value.D.dim]]
    else:
        raise InputError("--triangular on a coalgebra needs --split with the names spanning X")
    for b in xnames:
        if b not in C.basis:
            raise DocumentError("resolution", f"unknown label {b!r}", "--split")
    X = Subspace(C.dim, [C.vector(b) for b in xnames], C.field)
    Y = Subspace(C.dim, [C.vector(b) for b in C.basis if b not in xnames], C.field)
    res = triangular_decompose(C, X, Y)
    if isinstance(res, Refusal):
        return {"refused": res.reason}, DEFINITE
    return {
        "D_dim": res.data.D.dim,
        "M_dim": res.data.M.dim,
        "E_dim": res.data.E.dim,
        "verified": res.blocks.verified,
        "idempotent": {C.basis[k]: print_scalar(x) for k, x in sorted(res.idempotent.items())},
    }, DEFINITE


def cmd_artinian(doc, args):
    _need(doc, "triangular")
    v = is_left_artinian_triangular(doc.value)
    status = DEFINITE if v.decided else UNDECIDED
    return {"left": v.left, "right": v.right, "reasons": list(v.reasons)}, status


COMMANDS = {
    "verify": cmd_verify,
    "dual": cmd_dual,
    "ext-quiver": cmd_ext_quiver,
    "serial": cmd_serial,
    "splitting": cmd_splitting,
    "rat": cmd_rat,
    "decompose": cmd_decompose,
    "artinian": cmd_artinian,
}


# ---------------------------------------------------------------------------
# examples


def example_document(label: str, n: int | None, form: str | None) -> dict:
    from . import examples as ex
    from .quiver import instantiate

    if label == "divided_power":
        N = 4 if n is None else n
        if form == "quiver-spec":
            return documents.to_dict(ex.loop_spec())
        return documents.to_dict(ex.divided_power(N))
    if label == "example_4_2":
        N = 4 if n is None else n
        e = ex.example_4_2(N)
        if form == "coalgebra":
            return documents.to_dict(e.coalgebra)
        if form == "triangular":
            return documents.to_dict(e.data)
        return documents.to_dict(e.spec)
    if label == "sec2":
        return documents.to_dict(ex.example_sec2(3 if n is None else n))
    if label == "artinian":
        return documents.to_dict(ex.artinian_asymmetry())
    if label == "artinian_finite":
        return documents.to_dict(ex.artinian_asymmetry(True))
    if label == "cyclic":
        s = ex.cyclic_monomial(2 if n is None else n)
        if form == "coalgebra":
            return documents.to_dict(instantiate(s, 2 * len(s.quiver.vertices)))
        return documents.to_dict(s)
    if label == "example_4_6":
        return documents.to_dict(ex.example_4_6_instance())
    raise InputError(f"unknown example {label!r}; choose from {', '.join(EXAMPLE_LABELS)}")


EXAMPLE_LABELS = ("divided_power", "example_4_2", "sec2", "artinian", "artinian_finite", "cyclic", "example_4_6")


# ---------------------------------------------------------------------------
# driver


def _error_entry(exc) -> dict:
    if isinstance(exc, DocumentError):
        return {"category": exc.category, "message": str(exc), "path": exc.path, "line": exc.line}
    tb = traceback.extract_tb(exc.__traceback__)
    module = "cli"
    for frame in reversed(tb):
        p = Path(frame.filename)
        if p.parent.name == "tricoalg":
            module = p.stem
            break
    return {"category": "delegation", "module": module, "type": type(exc).__name__, "message": str(exc)}


def _run_one(command, path: str, args) -> tuple[dict, int]:
    t0 = time.perf_counter()
    entry: dict = {"input": path}
    try:
        text = Path(path).read_text(encoding="utf-8")
        doc = documents.parse(text)
        entry["kind"] = doc.kind
        result, status = COMMANDS[command](doc, args)
        entry["result"] = result
        entry["status"] = status
        code = 0 if status == DEFINITE else 2
    except (OSError, TricoalgError, ValueError, TypeError, KeyError) as exc:
        entry["error"] = _error_entry(exc)
        entry["status"] = "error"
        code = 1
    if args.timing:
        entry["seconds"] = round(time.perf_counter() - t0, 6)
    return entry, code


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tricoalg", description="Comatrix coalgebras and Rat-splitting.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, files=True):
        if files:
            sp.add_argument("inputs", nargs="+", help="input documents")
        sp.add_argument("--out", help="write the report here instead of stdout")
        sp.add_argument("--precision", type=int, default=16)
        sp.add_argument("--bound", type=int, default=None)
        sp.add_argument("--timing", action="store_true")
        sp.add_argument("--jobs", type=int, default=1)
        return sp

    common(sub.add_parser("verify"))
    common(sub.add_parser("dual"))
    common(sub.add_parser("ext-quiver")).add_argument("--dot", action="store_true")
    common(sub.add_parser("serial")).add_argument("--side", choices=["left", "right", "both"], default="both")
    common(sub.add_parser("splitting")).add_argument("--side", choices=["left", "right", "both"], default="both")
    common(sub.add_parser("rat"))
    dp = common(sub.add_parser("decompose"))
    g = dp.add_mutually_exclusive_group()
    g.add_argument("--idempotent", metavar="FILE")
    g.add_argument("--triangular", action="store_true")
    dp.add_argument("--split", help="comma-separated names spanning X (with --triangular)")
    common(sub.add_parser("artinian"))
    ep = common(sub.add_parser("example"), files=False)
    ep.add_argument("label", choices=EXAMPLE_LABELS)
    ep.add_argument("--n", type=int, default=None)
    ep.add_argument("--form", choices=["coalgebra", "quiver-spec", "triangular"], default=None)
    sp = sub.add_parser("schema")
    sp.add_argument("kind", choices=documents.KINDS)
    sp.add_argument("--out")
    return p


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "schema":
        _emit(dumps(documents.SCHEMAS[args.kind]), args.out)
        return 0
    if args.command == "example":
        try:
            text = dumps(example_document(args.label, args.n, args.form))
        except (TricoalgError, ValueError) as exc:
            sys.stderr.write(f"tricoalg: {exc}\n")
            return 1
        _emit(text, args.out)
        return 0
    jobs = max(1, args.jobs)
    if jobs > 1 and len(args.inputs) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda f: _run_one(args.command, f, args), args.inputs))
    else:
        results = [_run_one(args.command, f, args) for f in args.inputs]
    codes = [c for _, c in results]
    code = 1 if 1 in codes else (2 if 2 in codes else 0)
    flags = {k: v for k, v in sorted(vars(args).items()) if k not in ("command", "inputs", "out", "jobs", "timing")}
    report = {"command": args.command, "flags": flags, "reports": [e for e, _ in results], "exit_code": code}
    _emit(dumps(report), args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
