"""Splitting of the rational functor for monomial coalgebras and for
triangular comatrix modules.

The left decision works on a :class:`~tricoalg.quiver.MonomialSpec`.  The
coalgebra splits on the left exactly when (a) only finitely many non-cycle
paths exist and (b) every basis arrow ending at a cycle vertex lies on that
vertex's cycle.  (a) always holds for a spec, since the extra paths are a
finite list.  A "yes" carries a certificate that reassembles the coalgebra as
a triangular comatrix coalgebra ``(D, E, M)`` with ``D`` serial with an
Ext-quiver of disjoint cycles and ``E``, ``M`` finite.  A "no" carries an
infinite proper subcomodule of an injective hull, checked at truncations.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Any

from .coalgebra import LEFT, RIGHT, FiniteCoalgebra, isomorphic_by_names
from .comatrix import Bicomodule, TriangularData, triangular_comatrix
from .errors import StructureError
from .exactla import QQ, Subspace
from .quiver import (
    MonomialSpec,
    Path,
    Quiver,
    ext_quiver_spec,
    infinite_vertices,
    instantiate,
    is_serial as spec_is_serial,
    opposite,
)

YES, NO, UNDECIDABLE = "yes", "no", "undecidable"

# violations that still leave a well-defined coalgebra we can argue about
_DECIDABLE_VIOLATIONS = {"cycles share a vertex", "cycle repeats a vertex"}


# ---------------------------------------------------------------------------
# conditions (a) and (b)

@dataclass
class ABReport:
    a: bool
    b: bool
    witnesses: list = dc_field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.a and self.b


def condition_ab(s: MonomialSpec) -> ABReport:
    """Evaluate (a) and (b) on a spec.

    The witness for a failure of (b) is the offending arrow label.
    """
    owner = s.cycle_of_vertex()
    witnesses = []
    for p in s.basis_arrows():
        if p.end not in owner:
            continue
        k = owner[p.end]
        if p.arrows[0] not in s.cycles[k]:
            witnesses.append(p.label)
    # (a): non-cycle basis paths are the subpath closure of a finite list
    return ABReport(True, not witnesses, witnesses)


# ---------------------------------------------------------------------------
# pieces of the triangular decomposition

def _restrict_quiver(s: MonomialSpec, vertices, arrows) -> Quiver:
    vs = [v for v in s.quiver.vertices if v in vertices]
    arr = [(a.label, a.source, a.target) for a in s.quiver.arrows if a.label in arrows]
    return Quiver(vs, arr)


def pieces(s: MonomialSpec) -> tuple[MonomialSpec, MonomialSpec, list]:
    """``(D, E, M-paths)``: the cycle part, the part outside the cycle
    vertices, and the extra paths from a cycle vertex to the outside."""
    I = infinite_vertices(s)
    cyc_arrows = {a for c in s.cycles for a in c}
    D = MonomialSpec(_restrict_quiver(s, I, cyc_arrows), s.cycles, (), s.field, "D")
    F = [v for v in s.quiver.vertices if v not in I]
    closure = s.extra_closure()
    outside = [p for p in closure if p.start not in I and p.end not in I]
    out_arrows = {a for p in outside for a in p.arrows}
    E = MonomialSpec(_restrict_quiver(s, F, out_arrows), (), [p.arrows for p in outside], s.field, "E")
    M = [p for p in closure if p.start in I and p.end not in I]
    return D, E, M


def _m_bicomodule(s: MonomialSpec, CD: FiniteCoalgebra, CE: FiniteCoalgebra, d: int) -> Bicomodule:
    I = infinite_vertices(s)
    _, _, mpaths = pieces(s)
    mpaths = sorted((p for p in mpaths if p.length <= d), key=lambda p: (p.length, p.label))
    names = [p.label for p in mpaths]
    left, right = {}, {}
    for p in mpaths:
        lt, rt = [], []
        for i in range(p.length + 1):
            a, b = p.split(i, s.quiver)
            if a.end in I:
                lt.append((a.label, b.label, 1))
            else:
                rt.append((a.label, b.label, 1))
        left[p.label] = lt
        right[p.label] = rt
    return Bicomodule.from_names(CD, CE, names, left=left, right=right)


@dataclass
class SplitCertificate:
    """Triangular pieces of a left splitting monomial coalgebra."""

    D: MonomialSpec
    E: MonomialSpec
    M_paths: list
    checks: dict

    def triangular(self, spec: MonomialSpec, d: int) -> TriangularData:
        CD = instantiate(self.D, d)
        CE = instantiate(self.E, d)
        return TriangularData(CD, CE, _m_bicomodule(spec, CD, CE, d))

    def reassemble(self, spec: MonomialSpec, d: int) -> bool:
        """Rebuild the truncation at ``d`` from the pieces and compare it with
        the direct truncation, structure constant by structure constant."""
        T = triangular_comatrix(self.triangular(spec, d))
        C = instantiate(spec, d)
        if sorted(T.basis) != sorted(C.basis):
            return False
        return isomorphic_by_names(C, T)


@dataclass
class SplitDecision:
    side: str
    verdict: str
    certificate: SplitCertificate | None = None
    witness: dict | None = None
    ab: ABReport | None = None
    checks: dict = dc_field(default_factory=dict)
    reason: str = ""

    def __bool__(self):
        return self.verdict == YES

    def as_dict(self) -> dict:
        out: dict = {"side": self.side, "verdict": self.verdict}
        if self.ab is not None:
            out["condition_a"] = self.ab.a
            out["condition_b"] = self.ab.b
            out["offending_arrows"] = list(self.ab.witnesses)
        if self.witness is not None:
            out["witness"] = {
                "vertex": self.witness["vertex"],
                "paths": list(self.witness["paths"]),
                "truncation_dims": {str(k): v for k, v in sorted(self.witness["dims"].items())},
            }
        if self.certificate is not None:
            out["certificate"] = {
                "D_vertices": list(self.certificate.D.quiver.vertices),
                "E_vertices": list(self.certificate.E.quiver.vertices),
                "M_paths": [p.label for p in self.certificate.M_paths],
                "checks": dict(sorted(self.certificate.checks.items())),
            }
        if self.reason:
            out["reason"] = self.reason
        return out


# ---------------------------------------------------------------------------
# witnesses for "no"

def _backward_walks(s: MonomialSpec, v: str, n: int) -> list[Path]:
    """Walks of length ``0..n`` ending at ``v``, read backwards along the first
    cycle through ``v`` (the first occurrence of ``v`` on it)."""
    k = s.cycle_of_vertex()[v]
    c = s.cycles[k]
    L = len(c)
    i = s.cycle_vertices(k).index(v)
    out = [Path.trivial(v)]
    for ell in range(1, n + 1):
        arrows = [c[(i - ell + t) % L] for t in range(ell)]
        out.append(Path.of(s.quiver, arrows))
    return out


def _count_ending(s: MonomialSpec, d: int) -> dict:
    counts: dict = {}
    for p in s.basis_paths(d):
        counts.setdefault((p.end, p.length), []).append(p)
    return counts


def verify_witness(s: MonomialSpec, v: str, side: str, truncations=(4, 6, 8)) -> dict:
    """Check that the walks ending at ``v`` (left) or starting at ``v`` (right)
    along its cycle span a proper subcomodule of the injective hull at every
    truncation, of dimension ``N + 1`` at truncation ``N``.

    Returns ``{N: dim}``; raises :class:`StructureError` on failure.
    """
    dims = {}
    for N in truncations:
        C = instantiate(s, N)
        if side == LEFT:
            walks = _backward_walks(s, v, N)
            hull = [p for p in s.basis_paths(N) if p.end == v]
        else:
            walks = [p.reversed() for p in _backward_walks(opposite(s), v, N)]
            hull = [p for p in s.basis_paths(N) if p.start == v]
        R = C.regular(side)
        vecs = [C.vector(p.label) for p in walks]
        sub, _ = R.submodule(vecs)  # raises if not stable
        hull_space = Subspace(C.dim, [C.vector(p.label) for p in hull], C.field)
        space = Subspace(C.dim, vecs, C.field)
        if not space <= hull_space or space.dim == hull_space.dim:
            raise StructureError(f"witness at {v} is not a proper subcomodule of the hull", v)
        dims[N] = sub.dim
    return dims


# ---------------------------------------------------------------------------
# the decision

def _spec_status(s: MonomialSpec):
    rep = s.validate()
    kinds = {k for k, _ in rep.violations}
    if rep.ok:
        return "valid", rep
    if kinds <= _DECIDABLE_VIOLATIONS:
        return "overlap", rep
    return "invalid", rep


def decide_left_splitting(s: MonomialSpec, truncations=(4, 6, 8)) -> SplitDecision:
    """Decide whether the rational functor splits for left modules over the
    dual algebra of the coalgebra described by ``s``."""
    status, rep = _spec_status(s)
    if status == "invalid":
        return SplitDecision(
            LEFT, UNDECIDABLE, reason=f"spec violates {rep.violations[0][0]} at {rep.violations[0][1]}"
        )
    ab = condition_ab(s)
    checks: dict = {}
    I = infinite_vertices(s)
    Lmax = max((len(c) for c in s.cycles), default=0)
    depth = 2 * Lmax + s.max_extra_length() + 1
    counts = _count_ending(s, depth)
    bad = sorted({v for (v, _), ps in counts.items() if v in I and len(ps) > 1})
    # (i): the left hull at each cycle vertex is a single chain of walks
    checks["almost_finite"] = not bad
    if bad:
        v = bad[0]
        dims = verify_witness(s, v, LEFT, truncations)
        paths = [p.label for p in _backward_walks(s, v, max(truncations))]
        return SplitDecision(
            LEFT, NO, witness={"vertex": v, "paths": paths, "dims": dims}, ab=ab, checks=checks,
            reason=f"the injective hull at {v} has an infinite proper subcomodule",
        )
    if status != "valid":
        return SplitDecision(LEFT, UNDECIDABLE, ab=ab, checks=checks, reason="overlapping cycles without a witness")
    D, E, M = pieces(s)
    # (ii): paths ending in I start in I, so Hom(C_I, C_F) = 0 since the
    # quotients of the infinite uniserial hulls are infinite and C_F is finite
    checks["hom_infinite_to_finite_zero"] = all(
        p.start in I for p in s.basis_paths(depth) if p.end in I
    )
    # (iii): the cycle part is serial with an Ext-quiver of disjoint cycles
    if D.quiver.vertices:
        checks["D_serial"] = bool(spec_is_serial(D, LEFT)) and bool(spec_is_serial(D, RIGHT))
        checks["D_ext_disjoint_cycles"] = ext_quiver_spec(D).is_disjoint_cycles()
    else:
        checks["D_serial"] = checks["D_ext_disjoint_cycles"] = True
    # (iv): E and M are finite
    checks["E_finite"] = E.is_finite()
    checks["M_finite"] = True  # subsets of the finite extra closure
    cert = SplitCertificate(D, E, M, {})
    for d in truncations[:2]:
        checks[f"reassembles_at_{d}"] = cert.reassemble(s, d)
    cert.checks = dict(checks)
    if not all(checks.values()):
        failed = sorted(k for k, v in checks.items() if not v)
        raise StructureError(f"splitting certificate failed: {failed}", failed[0])
    return SplitDecision(LEFT, YES, certificate=cert, ab=ab, checks=checks)


def decide_right_splitting(s: MonomialSpec, truncations=(4, 6, 8)) -> SplitDecision:
    """Right splitting of ``C`` is left splitting of the co-opposite coalgebra."""
    dec = decide_left_splitting(opposite(s), truncations)
    dec.side = RIGHT
    if dec.witness is not None:
        v = dec.witness["vertex"]
        dims = verify_witness(s, v, RIGHT, truncations)
        paths = [p.reversed() for p in _backward_walks(opposite(s), v, max(truncations))]
        dec.witness = {"vertex": v, "paths": [p.label for p in paths], "dims": dims}
    return dec


def decide_splitting(s: MonomialSpec, side: str = LEFT, **kw) -> SplitDecision:
    if side == LEFT:
        return decide_left_splitting(s, **kw)
    if side == RIGHT:
        return decide_right_splitting(s, **kw)
    raise ValueError(f"side must be {LEFT!r} or {RIGHT!r}")


# ---------------------------------------------------------------------------
# triangular comatrix modules
#
# A left module over the dual algebra of a triangular comatrix coalgebra is
# ``H = (X, Y)`` with ``X`` an ``A = D*``-module, ``Y`` a ``B = E*``-module and
# an action ``P x Y -> X`` of ``P = M*``.  Its rational part is
# ``(Rat_A(X), Rat_B(Y) & Rat_P(Y))``.  Here ``E`` is finite, so ``Rat_B(Y) = Y``.

@dataclass
class Undecided:
    """Returned instead of an answer when a configured bound is too small."""

    reason: str

    def __bool__(self):
        return False


@dataclass
class FiniteP:
    """``M`` finite: ``images[k][j]`` is ``p_k . y_j`` as an element of ``X``."""

    images: list


@dataclass
class RegularP:
    """``M = D`` as a left ``D``-comodule, so ``P = A`` and ``p . y = p . phi(y)``."""

    phi: list


@dataclass
class TriangularModule:
    """``X`` is an int (a finite-dimensional ``A``-module), a
    :class:`~tricoalg.series.SeriesPresentation` or an
    :class:`~tricoalg.series.FgPresentation`.  Elements of a presented ``X`` are
    rows over the (restricted) generators."""

    X: Any
    y_dim: int
    P: Any = None


def _series_view(X):
    from .series import FgPresentation, restrict_scalars

    if isinstance(X, FgPresentation):
        return restrict_scalars(X)
    return X


def _poly_coeffs(x) -> dict:
    from .series import PowerSeries

    x = PowerSeries.coerce(x)
    return {i: c for i, c in enumerate(x.coeffs) if c}


def _flatten(row, W: int) -> dict:
    """Row of series over ``g`` generators -> vector in ``K^{g W}`` (mod ``z^W``)."""
    out = {}
    for col, x in enumerate(row):
        for t, c in _poly_coeffs(x).items():
            if t < W:
                out[col * W + t] = Fraction(c)
    return out


def _relation_space(sp, W: int) -> Subspace:
    from .series import PowerSeries

    vecs = []
    for r in sp.relations:
        for j in range(W):
            vecs.append(_flatten([PowerSeries.z(j) * x for x in r], W))
    return Subspace(sp.ngens * W, vecs, QQ)


@dataclass
class RatTriangular:
    """Rational part of a triangular module.

    ``x_part`` is the image of ``Rat_A(X)`` in ``X / z^W X`` as a subspace of
    ``K^{g W}`` (all of ``K^{dim X}`` when ``X`` is finite); ``y_part`` is a
    subspace of ``K^{dim Y}``.
    """

    x_part: Subspace
    y_part: Subspace
    window: int | None
    torsion: list = dc_field(default_factory=list)
    free_rank: int = 0

    def as_dict(self) -> dict:
        return {
            "rat_X_dim_in_window": self.x_part.dim,
            "rat_Y_dim": self.y_part.dim,
            "window": self.window,
            "torsion": list(self.torsion),
            "free_rank": self.free_rank,
        }


def rat_P(H: TriangularModule, precision: int = 16, slack: int = 4):
    """``Rat_P(Y)``: the ``y`` whose map ``p -> p . y`` factors through finitely
    many evaluations.  All of ``Y`` when ``M`` is finite."""
    from .series import INF, rat_part_fg

    Y = Subspace(H.y_dim, [{j: 1} for j in range(H.y_dim)], QQ)
    if H.P is None or isinstance(H.P, FiniteP) or isinstance(H.X, int):
        return Y
    if not isinstance(H.P, RegularP):
        raise TypeError("unknown P-action")
    sp = _series_view(H.X)
    res = rat_part_fg(sp, precision, slack)
    free_idx = [i for i, v in enumerate(res.valuations) if v is INF]
    wm = res.watermark if res.watermark is not None else precision
    from .series import s_matmul

    # y is rational iff phi(y) has zero free coordinates; one equation per
    # free coordinate and degree below the watermark
    eqs: dict = {}
    for j, row in enumerate(H.P.phi):
        img = s_matmul([list(row)], res.snf.V)[0]
        for i in free_idx:
            for t in range(wm):
                c = img[i][t]
                if c:
                    eqs.setdefault((i, t), {})[j] = c
    from .exactla import Matrix, kernel

    if not eqs:
        return Y
    A = Matrix.from_rows([[e.get(j, 0) for j in range(H.y_dim)] for _, e in sorted(eqs.items())], QQ)
    return Subspace(H.y_dim, kernel(A), QQ)


def rat_triangular(H: TriangularModule, window: int | None = None, precision: int = 16, slack: int = 4):
    """Rational part through the SNF torsion of ``X`` and ``rat_P``."""
    from .series import PowerSeries, rat_part_fg

    yp = rat_P(H, precision, slack)
    if isinstance(H.X, int):
        return RatTriangular(Subspace(H.X, [{i: 1} for i in range(H.X)], QQ), yp, None)
    sp = _series_view(H.X)
    res = rat_part_fg(sp, precision, slack)
    W = window if window is not None else max(res.torsion, default=0) + 1
    if res.watermark is not None and W > res.watermark:
        return Undecided(f"window {W} exceeds the watermark {res.watermark}")
    vecs = []
    for row in res.inclusion:
        for j in range(W):
            vecs.append(_flatten([PowerSeries.z(j) * x for x in row], W))
    x_part = Subspace(sp.ngens * W, vecs, QQ) + _relation_space(sp, W)
    return RatTriangular(x_part, yp, W, list(res.torsion), res.free_rank)


# -- brute-force oracle -----------------------------------------------------

def _right_kernel(sp) -> list:
    """Polynomial columns spanning the kernel of the relation matrix over K(z)."""
    import sympy

    z = sympy.Symbol("z")
    g = sp.ngens
    if not sp.relations:
        return [[sympy.Integer(int(i == j)) for i in range(g)] for j in range(g)]
    rows = []
    for r in sp.relations:
        rows.append([sum(sympy.Rational(c.numerator, c.denominator) * z**t for t, c in _poly_coeffs(x).items()) for x in r])
    M = sympy.Matrix(rows)
    out = []
    for v in M.nullspace():
        v = [sympy.cancel(e) for e in v]
        den = sympy.lcm([sympy.fraction(e)[1] for e in v])
        out.append([sympy.expand(sympy.cancel(e * den)) for e in v])
    return out


def _kernel_conditions(elements_by_y, K, y_dim):
    """Subspace of ``y`` with ``(sum_j y_j e_j) . k = 0`` for every kernel column ``k``."""
    import sympy

    from .exactla import Matrix, kernel

    z = sympy.Symbol("z")
    eqs: dict = {}
    for j, row in elements_by_y:
        for a, col in enumerate(K):
            expr = 0
            for x, kv in zip(row, col):
                cs = _poly_coeffs(x)
                if cs:
                    expr += sum(sympy.Rational(c.numerator, c.denominator) * z**t for t, c in cs.items()) * kv
            poly = sympy.Poly(sympy.expand(expr), z)
            for (t,), c in poly.terms():
                if c:
                    eqs.setdefault((a, t), {})[j] = eqs.get((a, t), {}).get(j, 0) + Fraction(int(c.p), int(c.q))
    eqs = {k: e for k, e in eqs.items() if any(e.values())}
    if not eqs:
        return Subspace(y_dim, [{j: 1} for j in range(y_dim)], QQ)
    A = Matrix.from_rows([[e.get(j, 0) for j in range(y_dim)] for _, e in sorted(eqs.items())], QQ)
    return Subspace(y_dim, kernel(A), QQ)


def nilpotency_bound(sp, bound: int):
    """Least ``W`` with ``z^(W-1)`` killing the torsion of ``X``, certified from
    the growth of ``dim X / z^W X``; :class:`Undecided` past ``bound``."""
    g = sp.ngens
    free = len(_right_kernel(sp))
    prev = 0
    for W in range(1, bound + 1):
        f = g * W - _relation_space(sp, W).dim
        if f - prev == free:
            return W
        prev = f
    return Undecided(f"torsion exponents not bounded below {bound}; raise the bound")


def rat_oracle(H: TriangularModule, bound: int | None = None, window: int | None = None):
    """Rational part from the definitions: ``x`` is rational when some power of
    ``z`` kills it; ``y`` when ``p -> p . y`` is a finite sum of evaluations.
    Independent of the Smith form."""
    all_y = Subspace(H.y_dim, [{j: 1} for j in range(H.y_dim)], QQ)
    if isinstance(H.X, int):
        return RatTriangular(Subspace(H.X, [{i: 1} for i in range(H.X)], QQ), all_y, None)
    sp = _series_view(H.X)
    if bound is None:
        bound = default_bound(H)
    Wstar = nilpotency_bound(sp, bound)
    if isinstance(Wstar, Undecided):
        return Wstar
    N = Wstar - 1
    W = window if window is not None else Wstar
    g = sp.ngens
    # x (degree < W) lies in the torsion modulo z^W iff z^N x lies in R + z^(W+N)
    from .exactla import Matrix, preimage

    shift = Matrix(g * (W + N), g * W, {(c * (W + N) + t + N, c * W + t): 1 for c in range(g) for t in range(W)}, QQ)
    x_part = preimage(shift, _relation_space(sp, W + N))
    K = _right_kernel(sp)
    if isinstance(H.P, RegularP):
        # p . y = p . phi(y) is a finite sum of evaluations iff phi(y) is torsion
        y_part = _kernel_conditions(list(enumerate(H.P.phi)), K, H.y_dim)
    else:
        # with a finite basis p_k of P, p . y = sum p(m_k) (p_k . y) for every y;
        # the z_k = p_k . y need not be rational
        y_part = all_y
    free = len(K)
    return RatTriangular(x_part, y_part, W, [], free)


def default_bound(H) -> int:
    """``4 * (longest cycle) * (dim Y + number of X generators)``."""
    from .series import FgPresentation

    X = H.X
    if isinstance(X, FgPresentation):
        L = max(X.algebra.cycle_length(v) for v in X.algebra.vertices)
        gens = len(X.generators)
    elif isinstance(X, int):
        L, gens = 1, X
    else:
        L, gens = 1, X.ngens
    return 4 * L * (H.y_dim + gens + 1)


# -- complements ------------------------------------------------------------

@dataclass
class ComplementWitness:
    """``X = T(X) + A m'_1 + ... + A m'_k`` with the sum direct and each
    ``A m'_i`` free over its vertex.

    ``generators`` are ``(vertex, row)`` pairs in restricted coordinates;
    ``matrices[w]`` is the constant term of the free coordinates at ``w`` of
    the elements ``p' m'_i``, which must be square and invertible.
    """

    generators: list
    matrices: dict
    torsion: dict
    verified: bool

    def as_dict(self) -> dict:
        return {
            "complement_generators": [v for v, _ in self.generators],
            "torsion_by_vertex": {w: list(t) for w, t in sorted(self.torsion.items())},
            "verified": self.verified,
        }


def _vertex_snf(sp, w, precision):
    from .series import INF, SNFResult, s_identity, snf_dvr

    cols = [c for c, v in enumerate(sp.col_vertices) if v == w]
    rows = [r for r, v in enumerate(sp.row_vertices) if v == w]
    for r in rows:
        for c, x in enumerate(sp.relations[r]):
            if c not in cols and not x.is_zero_to_watermark():
                raise StructureError("relation mixes vertices", sp.labels[c])
    A = [[sp.relations[r][c] for c in cols] for r in rows]
    if A:
        snf = snf_dvr(A, precision)
    else:
        snf = SNFResult([INF] * len(cols), [], s_identity(len(cols)), s_identity(len(cols)), [], None, 0)
    free = [i for i, v in enumerate(snf.valuations) if v is INF]
    return cols, snf, free


def split_presentation(p, precision: int = 16) -> ComplementWitness:
    """An ``A``-linear complement of the torsion of a finitely presented module
    over a complete cycle algebra (or over ``K[[z]]``)."""
    from .exactla import Matrix, rank
    from .series import INF, ZERO, FgPresentation, arrow_action, restrict_scalars, s_matmul

    if not isinstance(p, FgPresentation):
        from .series import rat_part_fg

        res = rat_part_fg(p, precision)
        gens = [("o", row) for row in res.free_basis]
        return ComplementWitness(gens, {}, {"o": list(res.torsion)}, res.verified)
    A = p.algebra
    sp = restrict_scalars(p)
    g = sp.ngens
    data = {w: _vertex_snf(sp, w, precision) for w in A.vertices}
    acts = {a.label: arrow_action(p, a.label) for a in A.quiver.arrows}

    def embed(w, local):
        cols = data[w][0]
        row = [ZERO] * g
        for c, x in zip(cols, local):
            row[c] = x
        return row

    def free_coords(w, row):
        cols, snf, free = data[w]
        img = s_matmul([[row[c] for c in cols]], snf.V)[0] if cols else []
        return [img[i] for i in free]

    def act(arrow, row):
        M = acts[arrow]
        return [sum((M[t][s] * row[s] for s in range(g) if not M[t][s].is_zero_to_watermark()), ZERO) for t in range(g)]

    gens = []
    for v in A.vertices:
        cols, snf, free = data[v]
        alpha = A._cycle_at[v][0]
        t = A.quiver.arrow(alpha).target
        tcols, tsnf, tfree = data[t]
        images = []
        for i in tfree:
            b = embed(t, tsnf.Vinv[i])
            images.append({k: x[0] for k, x in enumerate(free_coords(v, act(alpha, b))) if x[0]})
        top = Subspace(len(free), images, QQ)
        for k in top.complement_coordinates():
            gens.append((v, embed(v, snf.Vinv[free[k]])))
    matrices = {}
    ok = True
    for w in A.vertices:
        cols, snf, free = data[w]
        columns = []
        for v, row in gens:
            if v not in [A.walk(w, r).end for r in range(A.cycle_length(w))]:
                continue
            r = next(r for r in range(A.cycle_length(w)) if A.walk(w, r).end == v)
            path = A.walk(w, r)
            x = row
            for arrow in reversed(path.arrows):
                x = act(arrow, x)
            columns.append([c[0] for c in free_coords(w, x)])
        n = len(free)
        M = Matrix.from_rows([[columns[j][i] for j in range(len(columns))] for i in range(n)], QQ) if n else Matrix(0, len(columns))
        matrices[w] = M
        ok &= M.rows == M.cols and rank(M) == n
    torsion = {w: [v for v in data[w][1].valuations if v is not INF and v > 0] for w in A.vertices}
    return ComplementWitness(gens, matrices, torsion, ok)
