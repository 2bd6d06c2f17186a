"""Random generators shared by the test modules."""

from __future__ import annotations

import random
from fractions import Fraction

from tricoalg.coalgebra import FiniteCoalgebra, primitive_idempotents
from tricoalg.comatrix import Bicomodule, MoritaTakeuchiContext, idempotent_decompose
from tricoalg.examples import cyclic_monomial, divided_power, example_4_2
from tricoalg.errors import UnsupportedConfiguration
from tricoalg.exactla import QQ
from tricoalg.quiver import MonomialSpec, Quiver, instantiate
from tricoalg.series import PowerSeries, SeriesPresentation


def matrix_coalgebra(n: int) -> FiniteCoalgebra:
    names = [f"e{i}{j}" for i in range(n) for j in range(n)]
    delta = {f"e{i}{j}": [(f"e{i}{k}", f"e{k}{j}", 1) for k in range(n)] for i in range(n) for j in range(n)}
    return FiniteCoalgebra.from_names(names, delta, {f"e{i}{i}": 1 for i in range(n)}, QQ, None, f"matrix({n})")


def random_acyclic_spec(rng: random.Random, nv: int = 3) -> MonomialSpec:
    vs = [f"p{i}" for i in range(nv)]
    arrows = []
    for i in range(nv):
        for j in range(i + 1, nv):
            if rng.random() < 0.6:
                arrows.append((f"r{i}{j}", vs[i], vs[j]))
    Q = Quiver(vs, arrows)
    extras = [(a,) for a, _, _ in arrows]
    for a, s, t in arrows:
        for b, s2, t2 in arrows:
            if s2 == t and rng.random() < 0.5:
                extras.append((a, b))
    return MonomialSpec(Q, [], extras)


def coalgebra_pool(rng: random.Random) -> list[FiniteCoalgebra]:
    """Small coalgebras with several grouplikes, for idempotent splitting."""
    pool = [
        matrix_coalgebra(2),
        example_4_2(1).coalgebra,
        example_4_2(2).coalgebra,
        instantiate(cyclic_monomial(2), 2),
        instantiate(cyclic_monomial(3), 1),
        instantiate(MonomialSpec(Quiver(["u", "w"], [("x", "u", "w"), ("y", "w", "u")]), [], ["x", "y"]), 1),
    ]
    for _ in range(4):
        s = random_acyclic_spec(rng)
        pool.append(instantiate(s, 2))
    return pool


def random_idempotent(rng: random.Random, C: FiniteCoalgebra) -> dict:
    try:
        prims = primitive_idempotents(C)
    except UnsupportedConfiguration:
        # matrix coalgebras are not pointed; use a diagonal dual idempotent
        diag = [n for n in C.basis if len(n) == 3 and n[1] == n[2]]
        return {C.basis.index(rng.choice(diag)): 1}
    if len(prims) < 2:
        return {}
    k = rng.randint(1, len(prims) - 1)
    chosen = rng.sample(prims, k)
    e: dict = {}
    for _, f in chosen:
        for i, x in f.items():
            e[i] = e.get(i, 0) + x
    return {i: x for i, x in e.items() if x}


def small_context(ctx: MoritaTakeuchiContext, bound: int = 3) -> bool:
    return max(ctx.D.dim, ctx.E.dim, ctx.X.dim, ctx.Y.dim) <= bound


def valid_contexts(rng: random.Random, count: int, bound: int = 3) -> list[MoritaTakeuchiContext]:
    out = []
    pool = coalgebra_pool(rng)
    tries = 0
    while len(out) < count and tries < 40 * count:
        tries += 1
        C = rng.choice(pool)
        e = random_idempotent(rng, C)
        if not e:
            continue
        ctx = idempotent_decompose(C, e).context
        if small_context(ctx, bound):
            out.append(ctx)
    return out


def _perturb_terms(rng, terms: list) -> list:
    terms = [dict(t) for t in terms]
    k = rng.randrange(len(terms))
    if terms[k] and rng.random() < 0.5:
        key = rng.choice(sorted(terms[k]))
        terms[k][key] = terms[k][key] + rng.choice([-1, 1, 2])
        if not terms[k][key]:
            del terms[k][key]
    return terms


def perturb_context(rng: random.Random, ctx: MoritaTakeuchiContext) -> MoritaTakeuchiContext:
    """Change one structure constant of phi, psi or a coaction (sometimes harmlessly)."""
    choice = rng.choice(["phi", "psi", "Xl", "Yr", "scale"])
    phi, psi, X, Y = ctx.phi, ctx.psi, ctx.X, ctx.Y
    if choice == "phi" and phi and any(phi):
        phi = _perturb_terms(rng, phi)
    elif choice == "psi" and psi and any(psi):
        psi = _perturb_terms(rng, psi)
    elif choice == "Xl" and X.dim:
        X = Bicomodule(X.left, X.right, X.names, _perturb_terms(rng, X.left_coaction), X.right_coaction)
    elif choice == "Yr" and Y.dim:
        Y = Bicomodule(Y.left, Y.right, Y.names, Y.left_coaction, _perturb_terms(rng, Y.right_coaction))
    else:
        s = Fraction(rng.choice([0, 2, -1]))
        phi = [{k: s * v for k, v in t.items() if s * v} for t in phi]
    return MoritaTakeuchiContext(ctx.D, ctx.E, X, Y, phi, psi)


# -- presentations -----------------------------------------------------------


def random_poly(rng: random.Random, maxval: int = 4, density: float = 0.5) -> PowerSeries:
    if rng.random() > density:
        return PowerSeries([])
    v = rng.randint(0, maxval)
    coeffs = [0] * v + [rng.choice([-2, -1, 1, 2, 3])]
    for _ in range(rng.randint(0, 2)):
        coeffs.append(rng.randint(-2, 2))
    return PowerSeries(coeffs)


def random_presentation(rng: random.Random, max_gens: int = 3, maxval: int = 4) -> SeriesPresentation:
    g = rng.randint(1, max_gens)
    m = rng.randint(0, max_gens)
    rows = [[random_poly(rng, maxval) for _ in range(g)] for _ in range(m)]
    return SeriesPresentation(g, rows)


def unimodular(rng: random.Random, g: int) -> tuple[list, list]:
    """Polynomial ``V`` with polynomial inverse, as products of elementary matrices."""
    from tricoalg.series import s_identity, s_matmul

    V = s_identity(g)
    Vinv = s_identity(g)
    for _ in range(2 * g):
        if g < 2:
            break
        i, j = rng.sample(range(g), 2)
        c = PowerSeries([rng.randint(-2, 2), rng.randint(-1, 1)])
        Ej = s_identity(g)
        Ej[i][j] = c
        Einv = s_identity(g)
        Einv[i][j] = -c
        V = s_matmul(Ej, V)
        Vinv = s_matmul(Vinv, Einv)
    return V, Vinv


def structured_presentation(rng: random.Random, exps: list) -> tuple[SeriesPresentation, list]:
    """``K[[z]]^g / rowspace(diag(z^n_i) V)``; ``None`` exponents are free.

    Returns the presentation and the rows of ``V`` (row ``i`` generates the
    ``i``-th cyclic summand)."""
    g = len(exps)
    V, _ = unimodular(rng, g)
    rows = []
    for i, n in enumerate(exps):
        if n is None:
            continue
        rows.append([PowerSeries.z(n) * x for x in V[i]])
    return SeriesPresentation(g, rows), V


def random_spec(rng: random.Random) -> MonomialSpec:
    """Random spec with 1 to 4 designated cycles (lengths 1 to 3) and up to 4 extra paths."""
    ncyc = rng.randint(1, 4)
    vertices, arrows, cycles = [], [], []
    for k in range(ncyc):
        L = rng.randint(1, 3)
        vs = [f"c{k}v{i}" for i in range(L)]
        vertices += vs
        cyc = []
        for i in range(L):
            a = f"c{k}a{i}"
            arrows.append((a, vs[i], vs[(i + 1) % L]))
            cyc.append(a)
        cycles.append(tuple(cyc))
    nf = rng.randint(0, 2)
    vertices += [f"f{i}" for i in range(nf)]
    nextra = rng.randint(0, 4)
    extras = []
    for e in range(nextra):
        s, t = rng.choice(vertices), rng.choice(vertices)
        a = f"x{e}"
        arrows.append((a, s, t))
        extras.append((a,))
    # occasionally a length-two extra through two extra arrows
    ext_arrows = [x for x in arrows if x[0].startswith("x")]
    for a, _, t in ext_arrows:
        for b, s2, _ in ext_arrows:
            if s2 == t and rng.random() < 0.3:
                extras.append((a, b))
    Q = Quiver(vertices, arrows)
    return MonomialSpec(Q, cycles, extras)


# -- triangular modules ------------------------------------------------------


def _cycle_presentation(rng: random.Random, n: int):
    from tricoalg.series import CompleteCycleAlgebra, FgPresentation

    A = CompleteCycleAlgebra(cyclic_monomial(n))
    verts = list(A.vertices)
    gens = [rng.choice(verts) for _ in range(rng.randint(1, 2))]
    rels = []
    for j, v in enumerate(gens):
        if rng.random() < 0.7:
            # kill a walk of random length ending at the generator
            L = rng.randint(1, 2 * n)
            p = A.walk_ending(v, L)
            rels.append({j: {p.label: 1}})
    return FgPresentation(A, gens, rels)


def triangular_module_corpus(rng: random.Random, count: int = 36) -> list:
    """Mixed corpus: finite X, serial-cyclic X and torsion/free/mixed series X."""
    from tricoalg.series import restrict_scalars
    from tricoalg.splitting import FiniteP, RegularP, TriangularModule

    out = []
    kinds = ["finite", "cyclic", "torsion", "free", "mixed"]
    for i in range(count):
        kind = kinds[i % len(kinds)]
        y = rng.randint(0, 3)
        if kind == "finite":
            d = rng.randint(1, 3)
            imgs = [[{rng.randrange(d): rng.randint(-2, 2)} for _ in range(y)] for _ in range(2)]
            out.append((kind, TriangularModule(d, y, FiniteP(imgs))))
            continue
        if kind == "cyclic":
            X = _cycle_presentation(rng, rng.randint(1, 3))
            g = restrict_scalars(X).ngens
            P = FiniteP([[[random_poly(rng, 2) for _ in range(g)] for _ in range(y)]])
            out.append((kind, TriangularModule(X, y, P)))
            continue
        g = rng.randint(1, 3)
        if kind == "torsion":
            exps = [rng.randint(1, 4) for _ in range(g)]
        elif kind == "free":
            exps = [None] * g
        else:
            exps = [rng.randint(1, 4) for _ in range(g)]
            exps[rng.randrange(g)] = None
        X, V = structured_presentation(rng, exps)
        if rng.random() < 0.5:
            # P = A: phi(y) mixes torsion rows with, sometimes, free rows
            phi = []
            for _ in range(y):
                row = [PowerSeries([]) for _ in range(g)]
                for k, n in enumerate(exps):
                    if n is None and rng.random() < 0.5:
                        continue
                    c = rng.randint(-2, 2)
                    row = [a + PowerSeries([c]) * b for a, b in zip(row, V[k])]
                phi.append(row)
            P = RegularP(phi)
        else:
            # finite P: images in the socle of the torsion summands
            imgs = []
            for _ in range(2):
                per_y = []
                for _ in range(y):
                    row = [PowerSeries([]) for _ in range(g)]
                    for k, n in enumerate(exps):
                        if n is not None:
                            c = PowerSeries.z(n - 1) * PowerSeries([rng.randint(-1, 1)])
                            row = [a + c * b for a, b in zip(row, V[k])]
                    per_y.append(row)
                imgs.append(per_y)
            P = FiniteP(imgs)
        out.append((kind, TriangularModule(X, y, P)))
    return out
