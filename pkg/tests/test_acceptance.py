"""Acceptance suite: ten end-to-end criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v`` (lines go to the terminal) or
directly with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import os
import random
import subprocess
import sys
import tempfile
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import (  # noqa: E402
    coalgebra_pool,
    perturb_context,
    random_idempotent,
    random_presentation,
    random_spec,
    triangular_module_corpus,
    valid_contexts,
)

from tricoalg.coalgebra import RIGHT, LEFT, dual_algebra, isomorphic_by_names, verify_coalgebra  # noqa: E402
from tricoalg.comatrix import (  # noqa: E402
    Bicomodule,
    block_matrix_ring,
    check_context,
    generalized_comatrix,
    idempotent_decompose,
    is_left_artinian_triangular,
    same_structure_constants,
    triangular_comatrix,
)
from tricoalg.examples import (  # noqa: E402
    _right_injectives_42,
    artinian_asymmetry,
    cyclic_monomial,
    divided_power,
    example_4_2,
    example_4_2_spec,
    example_4_6_instance,
    loop_bijection,
    loop_spec,
    sec2_hom_growth,
    sec2_quotient_embeddings,
)
from tricoalg.quiver import MonomialSpec, Quiver, ext_quiver_spec, instantiate, is_serial  # noqa: E402
from tricoalg.series import INF, invariant_factors_by_minors, rat_part_fg  # noqa: E402
from tricoalg.splitting import (  # noqa: E402
    Undecided,
    condition_ab,
    decide_left_splitting,
    decide_right_splitting,
    rat_oracle,
    rat_triangular,
    verify_witness,
)

ROOT = Path(__file__).resolve().parent.parent


# -- criteria --------------------------------------------------------------


def criterion_1():
    rng = random.Random(101)
    base = valid_contexts(rng, 25)
    corpus = []
    for c in base:
        corpus += [c, perturb_context(rng, c)]
    bad = []
    for ctx in corpus:
        a = check_context(ctx).ok
        b = verify_coalgebra(generalized_comatrix(ctx, check=False)).ok
        if a != b:
            bad.append((a, b))
    n_ok = sum(check_context(c).ok for c in corpus)
    ok = len(corpus) >= 50 and not bad and 0 < n_ok < len(corpus)
    return ok, f"{len(corpus)} contexts ({n_ok} valid), {len(bad)} disagreements"


def _triangular_contexts() -> list:
    """``Y = 0`` contexts: the example data and the certified pieces of a spec."""
    from tricoalg.comatrix import _zero_context
    from tricoalg.splitting import decide_left_splitting as dl

    datas = [example_4_2(N).data for N in range(1, 5)]
    cert = dl(example_4_6_instance()).certificate
    datas += [cert.triangular(example_4_6_instance(), d) for d in (1, 2)]
    return [_zero_context(t.D, t.E, t.M, Bicomodule.zero(t.E, t.D)) for t in datas]


def criterion_2():
    rng = random.Random(202)
    corpus = valid_contexts(rng, 16, bound=4) + _triangular_contexts()
    bad = 0
    for ctx in corpus:
        C = generalized_comatrix(ctx)
        if not same_structure_constants(dual_algebra(C), block_matrix_ring(ctx)):
            bad += 1
    tri = sum(1 for c in corpus if c.Y.dim == 0)
    ok = len(corpus) >= 20 and bad == 0 and tri > 0
    return ok, f"{len(corpus)} instances ({tri} with Y = 0), {bad} mismatches"


def criterion_3():
    rng = random.Random(303)
    corpus = triangular_module_corpus(rng, 40)
    bad, undecided = [], 0
    kinds = set()
    for kind, H in corpus:
        kinds.add(kind)
        f = rat_triangular(H)
        o = rat_oracle(H, window=getattr(f, "window", None))
        if isinstance(f, Undecided) or isinstance(o, Undecided):
            undecided += 1
            continue
        if f.x_part != o.x_part or f.y_part != o.y_part:
            bad.append(kind)
    ok = len(corpus) >= 30 and not bad and undecided == 0 and len(kinds) == 5
    return ok, f"{len(corpus)} modules over {sorted(kinds)}, {len(bad)} mismatches, {undecided} undecided"


def criterion_4():
    s = example_4_2_spec()
    inj = all(_right_injectives_42(N) for N in range(1, 21))
    left, right = decide_left_splitting(s), decide_right_splitting(s)
    w = right.witness or {}
    dims_ok = False
    if w:
        dims = verify_witness(s, w["vertex"], RIGHT, truncations=tuple(range(1, 21)))
        dims_ok = all(dims[N] == N + 1 for N in range(1, 21))
    ok = inj and left.verdict == "yes" and right.verdict == "no" and dims_ok
    return ok, f"injectives {inj}, left {left.verdict}, right {right.verdict}, witness dims N+1 {dims_ok}"


def criterion_5():
    rows = []
    ok = True
    for n in (1, 2, 3, 5):
        s = cyclic_monomial(n)
        eq = ext_quiver_spec(s).cycle_lengths() == [n]
        ser = bool(is_serial(s, LEFT)) and bool(is_serial(s, RIGHT))
        sp = decide_left_splitting(s).verdict == "yes" and decide_right_splitting(s).verdict == "yes"
        good = eq and ser and sp
        if n == 1:
            good = good and all(
                isomorphic_by_names(divided_power(N), instantiate(loop_spec("v0", "a0"), N), loop_bijection(N, "v0", "a0"))
                and isomorphic_by_names(instantiate(s, N), instantiate(loop_spec("v0", "a0"), N))
                for N in range(0, 9)
            )
        ok = ok and good
        rows.append(f"n={n}:{'ok' if good else 'bad'}")
    return ok, " ".join(rows)


def criterion_6():
    rng = random.Random(606)
    bad = 0
    count = 0
    for _ in range(40):
        p = random_presentation(rng, max_gens=3, maxval=4)
        if not p.relations:
            continue
        count += 1
        r = rat_part_fg(p, 16)
        minors = sorted(v for v in invariant_factors_by_minors(p.relations) if v is not INF and v > 0)
        if not (r.verified and sorted(r.torsion) == minors):
            bad += 1
    ok = count >= 30 and bad == 0
    return ok, f"{count} presentations, {bad} failures"


def criterion_7():
    rng = random.Random(707)
    corpus = [random_spec(rng) for _ in range(40)]
    two_loops = MonomialSpec(Quiver(["u"], [("s", "u", "u"), ("t", "u", "u")]), [("s",), ("t",)], [])
    corpus += [example_4_2_spec(), example_4_6_instance(), loop_spec(), two_loops]
    corpus += [cyclic_monomial(n) for n in (1, 2, 3, 5)]
    log = []
    verdicts = {}
    for s in corpus:
        d = decide_left_splitting(s)
        verdicts[d.verdict] = verdicts.get(d.verdict, 0) + 1
        predicted = condition_ab(s).holds and s.validate().ok
        if (d.verdict == "yes") != predicted:
            log.append(f"DISAGREEMENT spec={s.name!r} cycles={s.cycles} extras={[p.label for p in s.extras]} "
                       f"verdict={d.verdict} predicted={predicted} reason={d.reason}")
    for line in log:
        print(line)
    ok = len(corpus) >= 40 and not log
    return ok, f"{len(corpus)} specs, verdicts {dict(sorted(verdicts.items()))}, {len(log)} disagreements"


def criterion_8():
    emb = all(max(sec2_quotient_embeddings(N)) <= 2 and len(sec2_quotient_embeddings(N)) >= 10 for N in range(1, 21))
    hom = all(sec2_hom_growth(N) == N for N in range(1, 21))
    return emb and hom, f"quotients embed in C^2 {emb}, Hom dimension N {hom} (N = 1..20)"


def criterion_9():
    a = is_left_artinian_triangular(artinian_asymmetry())
    b = is_left_artinian_triangular(artinian_asymmetry(True))
    ok = (a.left, a.right) == (True, False) and (b.left, b.right) == (True, True)
    return ok, f"regular M ({a.left}, {a.right}), M = K ({b.left}, {b.right})"


def _example_corpus(tmp: Path) -> list[str]:
    from tricoalg.cli import main

    files = sorted(str(p) for p in (ROOT / "docs" / "golden").glob("*.json"))
    jobs = [("divided_power", None), ("example_4_2", None), ("example_4_2", "coalgebra"), ("example_4_2", "triangular"),
            ("sec2", None), ("artinian", None), ("artinian_finite", None), ("cyclic", None), ("cyclic", "coalgebra"),
            ("example_4_6", None)]
    for label, form in jobs:
        out = tmp / f"{label}-{form or 'default'}.json"
        argv = ["example", label, "--out", str(out)] + (["--form", form] if form else [])
        assert main(argv) == 0
        files.append(str(out))
    return files


def _cli_pass(files: list[str], out_dir: Path, seed: str) -> dict[str, bytes]:
    env = dict(os.environ, PYTHONHASHSEED=seed)
    outs = {}
    for cmd in ("verify", "dual", "ext-quiver", "serial", "splitting", "rat", "artinian"):
        out = out_dir / f"{cmd}.json"
        subprocess.run([sys.executable, "-m", "tricoalg.cli", cmd, *files, "--out", str(out)], env=env, check=False)
        outs[cmd] = out.read_bytes()
    return outs


def criterion_10():
    rng = random.Random(1010)
    count, bad = 0, 0
    for C in coalgebra_pool(rng) * 3:
        e = random_idempotent(rng, C)
        if not e:
            continue
        dec = idempotent_decompose(C, e)
        count += 1
        if not dec.verified:
            bad += 1
    with tempfile.TemporaryDirectory() as t:
        t = Path(t)
        files = _example_corpus(t)
        (t / "a").mkdir()
        (t / "b").mkdir()
        first = _cli_pass(files, t / "a", "1")
        second = _cli_pass(files, t / "b", "2")
    same = first == second
    ok = count >= 20 and bad == 0 and same
    return ok, f"{count} decompositions ({bad} failed), CLI byte-identical over {len(files)} documents {same}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def _line(k: int, ok: bool, detail: str) -> str:
    return f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}"


@pytest.mark.parametrize("k", range(1, 11))
def test_criterion(k, capsys):
    ok, detail = CRITERIA[k - 1]()
    with capsys.disabled():
        print("\n" + _line(k, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = [(k, *c()) for k, c in enumerate(CRITERIA, 1)]
    for k, ok, detail in results:
        print(_line(k, ok, detail))
    sys.exit(0 if all(ok for _, ok, _ in results) else 1)
