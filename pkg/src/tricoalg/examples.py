"""Builders for the named examples and small derived variants.

Each builder returns plain objects from the other modules.  :func:`ledger`
lists the expected properties of every example as runnable checks.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .coalgebra import (
    LEFT,
    RIGHT,
    FiniteCoalgebra,
    embed_in_power,
    hom_comodules,
    injectives,
    is_serial,
    isomorphic_by_names,
    verify_coalgebra,
)
from .comatrix import Bicomodule, RegularCopies, TriangularData, triangular_comatrix
from .exactla import QQ, Subspace
from .quiver import MonomialSpec, Quiver, instantiate

# ---------------------------------------------------------------------------
# divided powers


def divided_power(N: int) -> FiniteCoalgebra:
    """``c_0..c_N`` with ``delta(c_n) = sum_{i+j=n} c_i (x) c_j``."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    names = [f"c{n}" for n in range(N + 1)]
    delta = {f"c{n}": [(f"c{i}", f"c{n - i}", 1) for i in range(n + 1)] for n in range(N + 1)}
    counit = {"c0": 1}
    return FiniteCoalgebra.from_names(names, delta, counit, QQ, list(range(N + 1)), f"divided_power({N})")


def loop_spec(vertex: str = "u", loop: str = "t") -> MonomialSpec:
    """One vertex with one loop designated as a cycle; dual to ``K[[z]]``."""
    return MonomialSpec(Quiver([vertex], [(loop, vertex, vertex)]), [(loop,)], name="loop")


def loop_bijection(N: int, vertex: str = "u", loop: str = "t") -> dict:
    """``c_n`` -> the label of the loop walk of length ``n``."""
    return {f"c{n}": ".".join([loop] * n) if n else vertex for n in range(N + 1)}


def cyclic_monomial(n: int) -> MonomialSpec:
    """The cyclic quiver on ``n`` vertices with the whole cycle designated."""
    if n < 1:
        raise ValueError("n must be positive")
    vs = [f"v{i}" for i in range(n)]
    arrows = [(f"a{i}", vs[i], vs[(i + 1) % n]) for i in range(n)]
    return MonomialSpec(Quiver(vs, arrows), [tuple(a for a, _, _ in arrows)], name=f"cyclic({n})")


# ---------------------------------------------------------------------------
# the left-but-not-right splitting example


@dataclass
class Example42:
    coalgebra: FiniteCoalgebra
    spec: MonomialSpec
    data: TriangularData
    bijection: dict  # coalgebra name -> spec path label


def example_4_2_spec() -> MonomialSpec:
    Q = Quiver(["u", "w"], [("t", "u", "u"), ("x", "u", "w")])
    return MonomialSpec(Q, [("t",)], ["x"], name="example_4_2")


def example_4_2(N: int) -> Example42:
    """``D`` divided powers, ``E = K{d}``, ``M = K{x}`` with
    ``delta(x) = c_0 (x) x + x (x) d``."""
    D = divided_power(N)
    E = FiniteCoalgebra.from_names(["d"], {"d": [("d", "d", 1)]}, {"d": 1}, QQ, [0], "K{d}")
    M = Bicomodule.from_names(D, E, ["x"], left={"x": [("c0", "x", 1)]}, right={"x": [("x", "d", 1)]})
    data = TriangularData(D, E, M)
    C = triangular_comatrix(data, name=f"example_4_2({N})")
    bij = dict(loop_bijection(N))
    bij.update({"d": "w", "x": "x"})
    return Example42(C, example_4_2_spec(), data, bij)


# ---------------------------------------------------------------------------
# the infinite star: a, x_n, b_n


def example_sec2(N: int) -> FiniteCoalgebra:
    """``delta(a) = a (x) a``, ``delta(b_n) = b_n (x) b_n``,
    ``delta(x_n) = b_n (x) x_n + x_n (x) a`` for ``1 <= n <= N``."""
    if N < 1:
        raise ValueError("N must be at least 1")
    names = ["a"] + [f"x{n}" for n in range(1, N + 1)] + [f"b{n}" for n in range(1, N + 1)]
    delta = {"a": [("a", "a", 1)]}
    for n in range(1, N + 1):
        delta[f"b{n}"] = [(f"b{n}", f"b{n}", 1)]
        delta[f"x{n}"] = [(f"b{n}", f"x{n}", 1), (f"x{n}", "a", 1)]
    counit = {"a": 1, **{f"b{n}": 1 for n in range(1, N + 1)}}
    grading = [0] + [1] * N + [0] * N
    return FiniteCoalgebra.from_names(names, delta, counit, QQ, grading, f"star({N})")


def generated_subcomodule(R, vectors) -> Subspace:
    """Smallest subcomodule of ``R`` containing ``vectors``."""
    ops = R.basis_operators()
    space = Subspace(R.dim, list(vectors), R.field)
    while True:
        vecs = space.basis() + [T.apply(v) for T in ops for v in space.basis()]
        bigger = Subspace(R.dim, vecs, R.field)
        if bigger.dim == space.dim:
            return space
        space = bigger


def sec2_subcomodules(N: int, count: int = 10, seed: int = 0) -> list[Subspace]:
    """Deterministic family of left subcomodules of the star at truncation ``N``."""
    C = example_sec2(N)
    R = C.regular(LEFT)
    rng = random.Random(seed * 1000 + N)
    fixed = [[], ["a"], [f"b{n}" for n in range(1, N + 1)], ["a", "b1"], ["x1"]]
    out = [generated_subcomodule(R, [C.vector(b) for b in gens]) for gens in fixed]
    while len(out) < count:
        k = rng.randint(1, min(3, C.dim))
        gens = rng.sample(C.basis, k)
        out.append(generated_subcomodule(R, [C.vector(b) for b in gens]))
    return out


def sec2_quotient_embeddings(N: int, count: int = 10, seed: int = 0) -> list[int]:
    """For each sampled ``N'``, the power ``n`` with ``C/N'`` embedded in ``C^n``."""
    C = example_sec2(N)
    R = C.regular(LEFT)
    out = []
    for S in sec2_subcomodules(N, count, seed):
        Q, _ = R.quotient(S)
        emb = embed_in_power(Q)
        if not emb.is_injective():
            raise AssertionError("embedding is not injective")
        out.append(emb.n)
    return out


def sec2_hom_growth(N: int, kill: str = "socle") -> int:
    """``dim Hom(S_a, C/P)`` for right comodules.

    ``kill = "socle"`` takes ``P`` = the right socle ``span{a, b_n}``;
    ``kill = "b"`` takes ``P = span{b_n}``, which leaves ``a`` in the quotient.
    """
    C = example_sec2(N)
    R = C.regular(RIGHT)
    names = [f"b{n}" for n in range(1, N + 1)]
    if kill == "socle":
        names = ["a"] + names
    elif kill != "b":
        raise ValueError("kill must be 'socle' or 'b'")
    Q, _ = R.quotient(Subspace(C.dim, [C.vector(b) for b in names], C.field))
    S, _ = R.submodule([C.vector("a")])
    homs = hom_comodules(S, Q)
    return len(homs)


# ---------------------------------------------------------------------------
# Artinian asymmetry


def artinian_asymmetry(finite_m: bool = False) -> TriangularData:
    """``D`` divided powers, ``E = K``, ``M = D``; with ``finite_m`` instead
    ``M = K{x}``, whose left coaction only involves the vertex ``u`` and so
    factors through the degree-zero part of ``D``."""
    E = FiniteCoalgebra.from_names(["e"], {"e": [("e", "e", 1)]}, {"e": 1}, QQ, [0], "K")
    if not finite_m:
        return TriangularData(loop_spec(), E, RegularCopies(1))
    D0 = instantiate(loop_spec(), 0)
    M = Bicomodule.from_names(D0, E, ["x"], left={"x": [("u", "x", 1)]}, right={"x": [("x", "e", 1)]})
    return TriangularData(loop_spec(), E, M)


# ---------------------------------------------------------------------------
# the conditions (a), (b) pattern


def example_4_6_instance() -> MonomialSpec:
    """A 2-cycle ``v1 -> v2 -> v1`` with an arrow ``c: v1 -> w`` as the only extra."""
    Q = Quiver(["v1", "v2", "w"], [("a", "v1", "v2"), ("b", "v2", "v1"), ("c", "v1", "w")])
    return MonomialSpec(Q, [("a", "b")], ["c"], name="example_4_6")


# ---------------------------------------------------------------------------
# ledger


@dataclass
class PaperExample:
    label: str
    params: dict
    claims: list = dc_field(default_factory=list)  # (description, check)

    def run(self) -> list[tuple[str, bool]]:
        return [(desc, bool(check())) for desc, check in self.claims]


def _right_injectives_42(N: int) -> bool:
    ex = example_4_2(N)
    dec = injectives(ex.coalgebra, RIGHT)
    C = ex.coalgebra
    want = {
        "c0": Subspace(C.dim, [C.vector(f"c{n}") for n in range(N + 1)] + [C.vector("x")], C.field),
        "d": Subspace(C.dim, [C.vector("d")], C.field),
    }
    got = dec.by_label()
    return set(got) == set(want) and all(got[k].space == want[k] for k in want)


def _equals_spec(C: FiniteCoalgebra, s: MonomialSpec, N: int, bij: dict) -> bool:
    return isomorphic_by_names(C, instantiate(s, N), bij)


def _ledger() -> dict[str, PaperExample]:
    from .comatrix import is_left_artinian_triangular
    from .quiver import ext_quiver_spec, is_serial as spec_serial
    from .splitting import condition_ab, decide_splitting

    N = 6
    out = {}
    out["divided_power"] = PaperExample("divided_power", {"N": N}, [
        ("coalgebra axioms", lambda: verify_coalgebra(divided_power(N)).ok),
        ("equals the loop spec", lambda: _equals_spec(divided_power(N), loop_spec(), N, loop_bijection(N))),
    ])
    out["example_4_2"] = PaperExample("example_4_2", {"N": N}, [
        ("coalgebra axioms", lambda: verify_coalgebra(example_4_2(N).coalgebra).ok),
        ("equals its spec", lambda: _equals_spec(example_4_2(N).coalgebra, example_4_2_spec(), N, example_4_2(N).bijection)),
        ("right injectives span{x, c_n} + span{d}", lambda: _right_injectives_42(N)),
        ("left splitting", lambda: decide_splitting(example_4_2_spec(), LEFT).verdict == "yes"),
        ("no right splitting", lambda: decide_splitting(example_4_2_spec(), RIGHT).verdict == "no"),
    ])
    out["sec2"] = PaperExample("sec2", {"N": N}, [
        ("coalgebra axioms", lambda: verify_coalgebra(example_sec2(N)).ok),
        ("not left serial", lambda: not is_serial(example_sec2(N), LEFT)[0]),
        ("quotients embed in C^2", lambda: max(sec2_quotient_embeddings(N)) <= 2),
        ("Hom(S_a, C/soc) has dimension N", lambda: sec2_hom_growth(N) == N),
    ])
    out["artinian"] = PaperExample("artinian", {}, [
        ("left and not right Artinian", lambda: (lambda v: (v.left, v.right) == (True, False))(is_left_artinian_triangular(artinian_asymmetry()))),
        ("finite M: Artinian on both sides", lambda: (lambda v: (v.left, v.right) == (True, True))(is_left_artinian_triangular(artinian_asymmetry(True)))),
    ])
    for n in (1, 2, 3):
        s = cyclic_monomial(n)
        out[f"cyclic_{n}"] = PaperExample(f"cyclic_{n}", {"n": n}, [
            ("valid spec", lambda s=s: s.validate().ok),
            ("Ext-quiver is one cycle", lambda s=s, n=n: ext_quiver_spec(s).cycle_lengths() == [n]),
            ("serial on both sides", lambda s=s: bool(spec_serial(s, LEFT)) and bool(spec_serial(s, RIGHT))),
            ("splits on both sides", lambda s=s: [decide_splitting(s, x).verdict for x in (LEFT, RIGHT)] == ["yes", "yes"]),
        ])
    s46 = example_4_6_instance()
    out["example_4_6"] = PaperExample("example_4_6", {}, [
        ("(a) and (b) hold", lambda: condition_ab(s46).holds),
        ("left splitting", lambda: decide_splitting(s46, LEFT).verdict == "yes"),
        ("no right splitting", lambda: decide_splitting(s46, RIGHT).verdict == "no"),
    ])
    return out


def ledger() -> dict[str, PaperExample]:
    return _ledger()


EXAMPLE_LABELS = ("divided_power", "example_4_2", "sec2", "artinian", "cyclic", "example_4_6")
