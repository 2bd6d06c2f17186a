"""Finite-dimensional coalgebras, comodules and their dual algebras/modules.

A coalgebra is stored by structure constants: ``delta[k]`` maps ``(i, j)``
to the coefficient of ``b_i (x) b_j`` in ``Delta(b_k)``.  Comodules use one
key shape for both sides, ``(c, m)``: a left coaction reads ``c (x) m`` and
a right coaction reads ``m (x) c``.

For a functional ``f`` on C the operator ``T_f`` on a comodule ``M`` is
``m -> sum f(c) m'``.  Subcomodules are exactly the subspaces stable under
every ``T_f``; the socle is the common kernel of ``T_f`` over ``f`` in the
Jacobson radical of ``C*`` (equivalently ``rho^{-1}(C_0 (x) M)``).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from .errors import SideMismatch, StructureError, UnsupportedConfiguration
from .exactla import (
    QQ,
    Field,
    Matrix,
    Subspace,
    kernel,
    preimage,
    rank,
    solve,
    vec_add,
    vec_scale,
)

LEFT, RIGHT = "left", "right"


def _acc(d: dict, key, val):
    v = d.get(key, 0) + val
    if v:
        d[key] = v
    else:
        d.pop(key, None)


def _check_side(side: str):
    if side not in (LEFT, RIGHT):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")


class FiniteCoalgebra:
    """A based finite-dimensional coalgebra over ``QQ`` or ``GF(p)``.

    ``grading`` is an optional list of nonnegative degrees (path length for
    monomial coalgebras).  When present it must be a coalgebra grading whose
    degree-zero part is spanned by grouplikes; it is then used for the
    coradical.
    """

    def __init__(
        self,
        basis: Sequence[str],
        delta: Sequence[dict],
        counit: Sequence,
        field: Field = QQ,
        grading: Sequence[int] | None = None,
        name: str | None = None,
    ):
        self.basis = list(basis)
        n = len(self.basis)
        if len(set(self.basis)) != n:
            raise StructureError("basis names must be unique")
        if len(delta) != n or len(counit) != n:
            raise StructureError("delta/counit length does not match the basis")
        self.field = field
        self.delta = []
        for k, d in enumerate(delta):
            clean = {}
            for (i, j), x in d.items():
                if not (0 <= i < n and 0 <= j < n):
                    raise StructureError(f"delta({self.basis[k]}) references index outside basis", k)
                x = field(x)
                if x:
                    clean[i, j] = x
            self.delta.append(clean)
        self.counit = [field(x) for x in counit]
        if grading is not None and len(grading) != n:
            raise StructureError("grading length does not match the basis")
        self.grading = list(grading) if grading is not None else None
        self.name = name
        self._index = {b: i for i, b in enumerate(self.basis)}
        self._cache: dict = {}

    @classmethod
    def from_names(cls, basis, delta: dict, counit: dict, field: Field = QQ, grading=None, name=None):
        """Build from ``delta = {name: [(left, right, coef), ...]}`` and ``counit = {name: coef}``."""
        idx = {b: i for i, b in enumerate(basis)}
        try:
            d = []
            for b in basis:
                terms = {}
                for l, r, c in delta.get(b, []):
                    _acc(terms, (idx[l], idx[r]), field(c))
                d.append(terms)
        except KeyError as exc:
            raise StructureError(f"unknown basis label {exc.args[0]!r} in delta", exc.args[0]) from None
        eps = [counit.get(b, 0) for b in basis]
        if isinstance(grading, dict):
            grading = [grading[b] for b in basis]
        return cls(basis, d, eps, field, grading, name)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self, name: str) -> int:
        return self._index[name]

    def vector(self, name: str) -> dict:
        return {self._index[name]: self.field.one}

    def delta_terms(self, name: str) -> list:
        """``Delta`` of a basis element as sorted ``(left, right, coef)`` name triples."""
        k = self._index[name]
        return [(self.basis[i], self.basis[j], c) for (i, j), c in sorted(self.delta[k].items())]

    def delta_vector(self, v: dict) -> dict:
        out: dict = {}
        for k, a in v.items():
            for key, b in self.delta[k].items():
                _acc(out, key, a * b)
        return out

    def counit_of(self, v: dict):
        return sum((self.counit[k] * a for k, a in v.items()), self.field.zero)

    def delta_matrix(self) -> Matrix:
        n = self.dim
        return Matrix(n * n, n, {(i * n + j, k): x for k, d in enumerate(self.delta) for (i, j), x in d.items()}, self.field)

    def co_opposite(self) -> "FiniteCoalgebra":
        d = [{(j, i): x for (i, j), x in dk.items()} for dk in self.delta]
        return FiniteCoalgebra(self.basis, d, self.counit, self.field, self.grading, self.name and self.name + "^cop")

    def regular(self, side: str = LEFT) -> "Comodule":
        _check_side(side)
        if side == LEFT:
            coaction = [{(i, j): x for (i, j), x in d.items()} for d in self.delta]
        else:
            coaction = [{(j, i): x for (i, j), x in d.items()} for d in self.delta]
        return Comodule(self, coaction, side, list(self.basis))

    def convolve(self, f: dict, g: dict) -> dict:
        """Product ``(f*g)(c) = f(c_1) g(c_2)`` of functionals given on the dual basis."""
        out = {}
        for k, d in enumerate(self.delta):
            s = 0
            for (i, j), x in d.items():
                a = f.get(i)
                if a:
                    b = g.get(j)
                    if b:
                        s += x * a * b
            if s:
                out[k] = self.field(s)
        return out

    def hit_left(self, e: dict) -> Matrix:
        """Matrix of ``c -> c_1 e(c_2)``; left-colinear for the regular left comodule."""
        out: dict = {}
        for k, d in enumerate(self.delta):
            for (i, j), x in d.items():
                a = e.get(j)
                if a:
                    _acc(out, (i, k), x * a)
        return Matrix(self.dim, self.dim, out, self.field)

    def hit_right(self, e: dict) -> Matrix:
        """Matrix of ``c -> e(c_1) c_2``; right-colinear for the regular right comodule."""
        out: dict = {}
        for k, d in enumerate(self.delta):
            for (i, j), x in d.items():
                a = e.get(i)
                if a:
                    _acc(out, (j, k), x * a)
        return Matrix(self.dim, self.dim, out, self.field)

    def counit_functional(self) -> dict:
        return {k: x for k, x in enumerate(self.counit) if x}

    def __eq__(self, other):
        return (
            isinstance(other, FiniteCoalgebra)
            and self.basis == other.basis
            and self.field == other.field
            and self.delta == other.delta
            and self.counit == other.counit
        )

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<FiniteCoalgebra{label} dim={self.dim} over {self.field}>"


def _basis_change_equal(C: FiniteCoalgebra, D: FiniteCoalgebra, perm: dict) -> bool:
    """``True`` iff the bijection ``perm: C-name -> D-name`` is a coalgebra isomorphism."""
    if C.dim != D.dim or set(perm) != set(C.basis) or set(perm.values()) != set(D.basis):
        return False
    for b in C.basis:
        mapped = sorted((perm[l], perm[r], c) for l, r, c in C.delta_terms(b))
        if mapped != sorted(D.delta_terms(perm[b])):
            return False
        if C.counit[C.index(b)] != D.counit[D.index(perm[b])]:
            return False
    return True


def isomorphic_by_names(C: FiniteCoalgebra, D: FiniteCoalgebra, perm: dict | None = None) -> bool:
    """Bit-exact structure-constant comparison under a basis-name bijection (identity by default)."""
    if perm is None:
        perm = {b: b for b in C.basis}
    return _basis_change_equal(C, D, perm)


# ---------------------------------------------------------------------------
# verification

@dataclass
class CoalgebraReport:
    coassociative: bool
    counital: bool
    witness: str | None = None
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.coassociative and self.counital

    def __bool__(self):
        return self.ok


def _coassoc_defect(C: FiniteCoalgebra, k: int) -> dict:
    diff: dict = {}
    for (i, j), a in C.delta[k].items():
        for (p, q), b in C.delta[i].items():
            _acc(diff, (p, q, j), a * b)
        for (p, q), b in C.delta[j].items():
            _acc(diff, (i, p, q), -a * b)
    return diff


def verify_coalgebra(C: FiniteCoalgebra) -> CoalgebraReport:
    """Check ``(Delta (x) id) Delta = (id (x) Delta) Delta`` and both counit laws on every basis element."""
    coassoc_witness = None
    for k in range(C.dim):
        if _coassoc_defect(C, k):
            coassoc_witness = C.basis[k]
            break
    counit_witness = None
    for k in range(C.dim):
        left: dict = {}
        right: dict = {}
        for (i, j), a in C.delta[k].items():
            _acc(left, j, a * C.counit[i])
            _acc(right, i, a * C.counit[j])
        unit = {k: C.field.one}
        if left != unit or right != unit:
            counit_witness = C.basis[k]
            break
    witness = coassoc_witness or counit_witness
    detail = ""
    if coassoc_witness:
        detail = f"coassociativity fails at {coassoc_witness}"
    elif counit_witness:
        detail = f"counit law fails at {counit_witness}"
    return CoalgebraReport(coassoc_witness is None, counit_witness is None, witness, detail)


# ---------------------------------------------------------------------------
# dual algebra and modules

class FiniteAlgebra:
    """Finite-dimensional algebra by structure constants ``mult[(i, j)] = {k: coef}``."""

    def __init__(self, basis, mult: dict, unit: dict, field: Field = QQ):
        self.basis = list(basis)
        self.field = field
        self.mult = {key: {k: field(x) for k, x in v.items() if x} for key, v in mult.items()}
        self.mult = {key: v for key, v in self.mult.items() if v}
        self.unit = {k: field(x) for k, x in unit.items() if x}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def product(self, a: dict, b: dict) -> dict:
        out: dict = {}
        for i, x in a.items():
            for j, y in b.items():
                for k, c in self.mult.get((i, j), {}).items():
                    _acc(out, k, x * y * c)
        return out

    def left_mult_matrix(self, a: dict) -> Matrix:
        cols = [self.product(a, {j: self.field.one}) for j in range(self.dim)]
        return Matrix.from_columns(cols, self.dim, self.field)

    def verify(self) -> bool:
        n = self.dim
        one = self.field.one
        for i in range(n):
            for j in range(n):
                ij = self.mult.get((i, j), {})
                for k in range(n):
                    lhs = self.product(ij, {k: one})
                    rhs = self.product({i: one}, self.mult.get((j, k), {}))
                    if lhs != rhs:
                        return False
        for i in range(n):
            e = {i: one}
            if self.product(self.unit, e) != e or self.product(e, self.unit) != e:
                return False
        return True

    def __repr__(self):
        return f"<FiniteAlgebra dim={self.dim} over {self.field}>"


def dual_algebra(C: FiniteCoalgebra) -> FiniteAlgebra:
    """Convolution algebra ``C*`` on the dual basis; the unit is the counit."""
    mult: dict = {}
    for k, d in enumerate(C.delta):
        for (i, j), x in d.items():
            mult.setdefault((i, j), {})[k] = x
    return FiniteAlgebra([b + "*" for b in C.basis], mult, C.counit_functional(), C.field)


@dataclass
class FiniteModule:
    """Module over a :class:`FiniteAlgebra`; ``action[k]`` is the matrix of basis element ``k``."""

    algebra: FiniteAlgebra
    dim: int
    side: str
    action: list

    def act(self, a: dict) -> Matrix:
        out = Matrix.zeros(self.dim, self.dim, self.algebra.field)
        for k, x in a.items():
            out = out + self.action[k].scale(x)
        return out

    def verify(self) -> bool:
        A = self.algebra
        one = A.field.one
        if self.act(A.unit) != Matrix.identity(self.dim, A.field):
            return False
        for i in range(A.dim):
            for j in range(A.dim):
                ab = self.act(A.product({i: one}, {j: one}))
                if self.side == LEFT:
                    comp = self.action[i] @ self.action[j]
                else:
                    comp = self.action[j] @ self.action[i]
                if comp != ab:
                    return False
        return True


# ---------------------------------------------------------------------------
# comodules

class Comodule:
    """A finite-dimensional left or right comodule over a :class:`FiniteCoalgebra`."""

    def __init__(self, coalgebra: FiniteCoalgebra, coaction: Sequence[dict], side: str, names=None):
        _check_side(side)
        self.coalgebra = coalgebra
        self.side = side
        f = coalgebra.field
        self.coaction = [{key: f(x) for key, x in d.items() if x} for d in coaction]
        self.dim = len(self.coaction)
        self.names = list(names) if names is not None else [f"m{i}" for i in range(self.dim)]

    @property
    def field(self) -> Field:
        return self.coalgebra.field

    def coact(self, v: dict) -> dict:
        out: dict = {}
        for m, a in v.items():
            for key, b in self.coaction[m].items():
                _acc(out, key, a * b)
        return out

    def operator(self, f: dict) -> Matrix:
        """``T_f : m -> sum f(c) m'`` where the coaction of ``m`` is ``sum c, m'``."""
        out: dict = {}
        for m, d in enumerate(self.coaction):
            for (c, mp), x in d.items():
                a = f.get(c)
                if a:
                    _acc(out, (mp, m), x * a)
        return Matrix(self.dim, self.dim, out, self.field)

    def basis_operators(self) -> list[Matrix]:
        """``T_k`` for each dual basis functional ``c_k*``, built in one pass."""
        n = self.coalgebra.dim
        buckets: list[dict] = [dict() for _ in range(n)]
        for m, d in enumerate(self.coaction):
            for (c, mp), x in d.items():
                buckets[c][mp, m] = x
        return [Matrix(self.dim, self.dim, b, self.field) for b in buckets]

    def verify(self) -> CoalgebraReport:
        C = self.coalgebra
        for m in range(self.dim):
            diff: dict = {}
            for (c, mp), a in self.coaction[m].items():
                if self.side == LEFT:
                    for (p, q), b in C.delta[c].items():
                        _acc(diff, (p, q, mp), a * b)
                    for (c2, m2), b in self.coaction[mp].items():
                        _acc(diff, (c, c2, m2), -a * b)
                else:
                    for (c2, m2), b in self.coaction[mp].items():
                        _acc(diff, (m2, c2, c), a * b)
                    for (p, q), b in C.delta[c].items():
                        _acc(diff, (mp, p, q), -a * b)
            if diff:
                return CoalgebraReport(False, True, self.names[m], f"coassociativity fails at {self.names[m]}")
        for m in range(self.dim):
            back: dict = {}
            for (c, mp), a in self.coaction[m].items():
                _acc(back, mp, a * C.counit[c])
            if back != {m: self.field.one}:
                return CoalgebraReport(True, False, self.names[m], f"counit law fails at {self.names[m]}")
        return CoalgebraReport(True, True)

    def submodule(self, vectors) -> tuple["Comodule", Matrix]:
        """Subcomodule spanned by ``vectors`` and its inclusion matrix.

        Raises :class:`StructureError` if the span is not stable under the coaction.
        """
        S = vectors if isinstance(vectors, Subspace) else Subspace(self.dim, vectors, self.field)
        basis = S.basis()
        coaction = []
        for v in basis:
            rho = self.coact(v)
            by_c: dict = {}
            for (c, m), x in rho.items():
                by_c.setdefault(c, {})[m] = x
            out = {}
            for c, w in by_c.items():
                if not S.contains(w):
                    raise StructureError("span is not a subcomodule", c)
                for k, x in S.coordinates(w).items():
                    out[c, k] = x
            coaction.append(out)
        names = [self._vec_name(v) for v in basis]
        return Comodule(self.coalgebra, coaction, self.side, names), Matrix.from_columns(basis, self.dim, self.field)

    def quotient(self, sub) -> tuple["Comodule", Matrix]:
        """Quotient by a subcomodule; returns ``(M/N, projection matrix)``."""
        S = sub if isinstance(sub, Subspace) else Subspace(self.dim, sub, self.field)
        comp = S.complement_coordinates()
        pos = {i: a for a, i in enumerate(comp)}

        def proj(v):
            return {pos[i]: x for i, x in S.reduce(v).items()}

        coaction = []
        for i in comp:
            out: dict = {}
            for (c, m), x in self.coaction[i].items():
                for k, y in proj({m: self.field.one}).items():
                    _acc(out, (c, k), x * y)
            coaction.append(out)
        P = Matrix.from_columns([proj({j: self.field.one}) for j in range(self.dim)], len(comp), self.field)
        Q = Comodule(self.coalgebra, coaction, self.side, [self.names[i] + "~" for i in comp])
        return Q, P

    def direct_sum(self, other: "Comodule") -> "Comodule":
        if other.side != self.side or other.coalgebra is not self.coalgebra:
            raise SideMismatch("direct sum needs same side and coalgebra")
        n = self.dim
        shifted = [{(c, m + n): x for (c, m), x in d.items()} for d in other.coaction]
        return Comodule(self.coalgebra, self.coaction + shifted, self.side, self.names + other.names)

    def _vec_name(self, v: dict) -> str:
        if len(v) == 1:
            (i, x), = v.items()
            if x == 1:
                return self.names[i]
        return "+".join(f"{x}*{self.names[i]}" for i, x in sorted(v.items()))

    def __repr__(self):
        return f"<{self.side} Comodule dim={self.dim} over {self.coalgebra!r}>"


# ---------------------------------------------------------------------------
# radical / coradical

def radical_functionals_trace(C: FiniteCoalgebra) -> list[dict]:
    """Jacobson radical of ``C*`` as the radical of the trace form (characteristic 0 only)."""
    if not C.field.is_rational:
        raise UnsupportedConfiguration("trace-form radical requires characteristic 0")
    n = C.dim
    traces = [C.field.zero] * n
    for k, d in enumerate(C.delta):
        for (i, j), x in d.items():
            if j == k:
                traces[i] += x
    gram: dict = {}
    for k, d in enumerate(C.delta):
        t = traces[k]
        if t:
            for (i, j), x in d.items():
                _acc(gram, (i, j), x * t)
    return kernel(Matrix(n, n, gram, C.field))


def radical_functionals(C: FiniteCoalgebra) -> list[dict]:
    """A basis of ``J(C*)``: positive-degree dual basis when graded, else the trace-form route."""
    cached = C._cache.get("radical")
    if cached is not None:
        return cached
    if C.grading is not None:
        J = [{k: C.field.one} for k, g in enumerate(C.grading) if g > 0]
    elif C.field.is_rational:
        J = radical_functionals_trace(C)
    else:
        raise UnsupportedConfiguration(
            "coradical over GF(p) is only available for graded (monomial) coalgebras"
        )
    C._cache["radical"] = J
    return J


def coradical(C: FiniteCoalgebra) -> Subspace:
    """The coradical ``C_0 = J(C*)^perp``."""
    J = radical_functionals(C)
    if not J:
        return Subspace(C.dim, [{k: C.field.one} for k in range(C.dim)], C.field)
    return Subspace(C.dim, kernel(Matrix.from_rows([[f.get(k, 0) for k in range(C.dim)] for f in J], C.field)), C.field)


# ---------------------------------------------------------------------------
# socle and Loewy series

def socle(M: Comodule) -> Subspace:
    """Largest semisimple subcomodule ``L_0(M)``."""
    J = radical_functionals(M.coalgebra)
    if not J:
        return Subspace(M.dim, [{i: M.field.one} for i in range(M.dim)], M.field)
    stacked = M.operator(J[0])
    for f in J[1:]:
        stacked = stacked.vstack(M.operator(f))
    return Subspace(M.dim, kernel(stacked), M.field)


def loewy(M: Comodule) -> list[Subspace]:
    """Loewy series ``L_0 <= L_1 <= ... = M`` with ``L_{n+1}/L_n = soc(M/L_n)``."""
    J = radical_functionals(M.coalgebra)
    ops = [M.operator(f) for f in J]
    chain = [socle(M)]
    while chain[-1].dim < M.dim:
        prev = chain[-1]
        nxt = Subspace(M.dim, [{i: M.field.one} for i in range(M.dim)], M.field)
        for T in ops:
            nxt = nxt.intersect(preimage(T, prev))
        if nxt.dim == prev.dim:
            raise StructureError("Loewy series stalled; coaction is not a comodule")
        chain.append(nxt)
    return chain


# ---------------------------------------------------------------------------
# grouplikes and idempotents

def grouplikes(C: FiniteCoalgebra) -> list[dict]:
    """Grouplike elements of ``C``; raises if ``C`` is not pointed."""
    cached = C._cache.get("grouplikes")
    if cached is not None:
        return cached
    C0 = coradical(C)
    one = C.field.one
    found = [
        {k: one}
        for k in range(C.dim)
        if C.delta[k] == {(k, k): one} and C.counit[k] == one
    ]
    if len(found) != C0.dim:
        found = _grouplikes_by_eigenvectors(C, C0)
    C._cache["grouplikes"] = found
    return found


def _grouplikes_by_eigenvectors(C: FiniteCoalgebra, C0: Subspace) -> list[dict]:
    # grouplikes are the joint eigenvectors of the operators T_f on the
    # left comodule C_0; a generic T_f separates them when C is pointed
    if not C.field.is_rational:
        raise UnsupportedConfiguration("non-basis grouplikes are only searched over QQ")
    import sympy

    R = C.regular(LEFT)
    sub, incl = R.submodule(C0)
    ops = sub.basis_operators()
    rng = random.Random(12345)
    n = sub.dim
    for _ in range(8):
        coeffs = [rng.randint(-5, 5) for _ in ops]
        T = Matrix.zeros(n, n, C.field)
        for a, op in zip(coeffs, ops):
            T = T + op.scale(a)
        S = sympy.Matrix(n, n, lambda i, j: sympy.Rational(T[i, j].numerator, T[i, j].denominator))
        eig = S.eigenvals()
        if len(eig) == n and all(ev.is_rational for ev in eig):
            out = []
            for ev in eig:
                shifted = T - Matrix.identity(n, C.field).scale(Fraction(int(ev.p), int(ev.q)))
                (v,) = kernel(shifted)
                w = incl.apply(v)
                s = C.counit_of(w)
                if not s:
                    break
                out.append(vec_scale(w, 1 / s))
            else:
                return out
    raise UnsupportedConfiguration("coalgebra is not pointed over the ground field")


def is_pointed(C: FiniteCoalgebra) -> bool:
    try:
        grouplikes(C)
    except UnsupportedConfiguration:
        return False
    return True


def _lift_idempotent(C: FiniteCoalgebra, a: dict) -> dict:
    # the defect e^2 - e lies in J^(2^t) after t steps and J^dim = 0
    e = a
    for _ in range(C.dim.bit_length() + 2):
        e2 = C.convolve(e, e)
        if e2 == e:
            return e
        e3 = C.convolve(e2, e)
        e = vec_add(vec_scale(e2, C.field(3)), e3, C.field(-2))
    raise StructureError("idempotent lifting did not converge")


def primitive_idempotents(C: FiniteCoalgebra) -> list[tuple[dict, dict]]:
    """Complete orthogonal idempotents of ``C*`` lifting the grouplikes of a pointed ``C``.

    Returns ``[(g, e_g), ...]`` with ``e_g(h) = delta_{g,h}`` on grouplikes.
    """
    cached = C._cache.get("idempotents")
    if cached is not None:
        return cached
    G = grouplikes(C)
    n = C.dim
    # initial lifts: functionals dual to the grouplikes
    if all(len(g) == 1 for g in G):
        initial = [{next(iter(g)): C.field.one} for g in G]
    else:
        Gmat = Matrix.from_columns(G, n, C.field).transpose()
        initial = []
        for t in range(len(G)):
            sol = solve(Gmat, {t: C.field.one})
            initial.append(sol.particular)
    eps = C.counit_functional()
    taken: dict = {}
    out = []
    for t, (g, a) in enumerate(zip(G, initial)):
        rest = vec_add(eps, taken, -1)
        if t == len(G) - 1:
            e = rest
        else:
            x = C.convolve(C.convolve(rest, a), rest)
            e = _lift_idempotent(C, x)
        taken = vec_add(taken, e)
        out.append((g, e))
    C._cache["idempotents"] = out
    return out


# ---------------------------------------------------------------------------
# injective decomposition

@dataclass
class InjectiveSummand:
    label: str
    socle_vector: dict
    space: Subspace
    comodule: Comodule
    multiplicity: int = 1

    @property
    def dim(self) -> int:
        return self.space.dim


@dataclass
class InjectiveDecomposition:
    side: str
    summands: list = dc_field(default_factory=list)

    def by_label(self) -> dict:
        return {s.label: s for s in self.summands}

    def reconstitutes(self, C: FiniteCoalgebra) -> bool:
        total = Subspace(C.dim, [], C.field)
        for s in self.summands:
            total = total + s.space
        return total.dim == C.dim and sum(s.dim * s.multiplicity for s in self.summands) == C.dim


def _label(C: FiniteCoalgebra, v: dict) -> str:
    if len(v) == 1:
        (k, x), = v.items()
        if x == 1:
            return C.basis[k]
    return "+".join(f"{x}*{C.basis[k]}" for k, x in sorted(v.items()))


def injectives(C: FiniteCoalgebra, side: str = LEFT) -> InjectiveDecomposition:
    """``C = (+) E(S)`` as left (or right) comodules, for pointed ``C``.

    ``E_l(g)`` is the image of ``c -> c_1 e_g(c_2)`` and ``E_r(g)`` the image of
    ``c -> e_g(c_1) c_2`` for the lifted idempotent ``e_g``.
    """
    _check_side(side)
    R = C.regular(side)
    dec = InjectiveDecomposition(side)
    for g, e in primitive_idempotents(C):
        P = C.hit_left(e) if side == LEFT else C.hit_right(e)
        space = Subspace(C.dim, P.col_dicts(), C.field)
        sub, _ = R.submodule(space)
        dec.summands.append(InjectiveSummand(_label(C, g), g, space, sub))
    return dec


# ---------------------------------------------------------------------------
# Hom spaces, duality

def hom_comodules(M: Comodule, N: Comodule) -> list[Matrix]:
    """Basis of the colinear maps ``M -> N`` as ``N.dim x M.dim`` matrices."""
    if M.side != N.side:
        raise SideMismatch(f"cannot compare a {M.side} and a {N.side} comodule")
    if M.coalgebra is not N.coalgebra and M.coalgebra != N.coalgebra:
        raise SideMismatch("comodules over different coalgebras")
    m, n = M.dim, N.dim
    if m == 0 or n == 0:
        return []
    TM = M.basis_operators()
    TN = N.basis_operators()
    eqs: dict = {}
    # T^N_k H - H T^M_k = 0, unknowns H[a, b] at index a * m + b
    for k, (tm, tn) in enumerate(zip(TM, TN)):
        for (a, c), x in tn.items():
            for b in range(m):
                _acc(eqs.setdefault((k, a, b), {}), c * m + b, x)
        for (c, b), x in tm.items():
            for a in range(n):
                _acc(eqs.setdefault((k, a, b), {}), a * m + c, -x)
    rows = [r for r in eqs.values() if r]
    A = Matrix(len(rows), n * m, {(r, j): x for r, row in enumerate(rows) for j, x in row.items()}, M.field)
    out = []
    for v in kernel(A):
        out.append(Matrix(n, m, {(k // m, k % m): x for k, x in v.items()}, M.field))
    return out


def is_colinear(h: Matrix, M: Comodule, N: Comodule) -> bool:
    return all(tn @ h == h @ tm for tm, tn in zip(M.basis_operators(), N.basis_operators()))


def dualize(M: Comodule) -> FiniteModule:
    """``M*`` as a module over ``C*``: left comodules give left modules, right give right.

    The action is ``(c*.f)(m) = c*(m_{-1}) f(m_0)`` (left) or ``f(m_0) c*(m_1)`` (right);
    in the dual basis the matrix of ``c_k*`` is the transpose of ``T_k``.
    """
    A = dual_algebra(M.coalgebra)
    return FiniteModule(A, M.dim, M.side, [T.transpose() for T in M.basis_operators()])


def dualize_map(h: Matrix) -> Matrix:
    """Contravariant on maps: ``h: M -> N`` becomes ``h*: N* -> M*``."""
    return h.transpose()


# ---------------------------------------------------------------------------
# finitely cogenerated embeddings

@dataclass
class PowerEmbedding:
    n: int
    matrix: Matrix  # (n * dim C) x dim M, block i is u_i
    functionals: list

    def is_injective(self) -> bool:
        return rank(self.matrix) == self.matrix.cols


def _u_map(M: Comodule, f: dict) -> Matrix:
    """``u_f(m) = m_{-1} f(m_0)`` (left) or ``f(m_0) m_1`` (right); colinear ``M -> C``."""
    out: dict = {}
    for m, d in enumerate(M.coaction):
        for (c, mp), x in d.items():
            a = f.get(mp)
            if a:
                _acc(out, (c, m), x * a)
    return Matrix(M.coalgebra.dim, M.dim, out, M.field)


def _socle_isotypic(M: Comodule) -> list[list[dict]]:
    soc = socle(M)
    comps = []
    for g, e in primitive_idempotents(M.coalgebra):
        T = M.operator(e)
        imgs = Subspace(M.dim, [T.apply(v) for v in soc.basis()], M.field)
        comps.append(imgs.basis())
    return comps


def embed_in_power(M: Comodule) -> PowerEmbedding:
    """Monomorphism ``M -> C^n`` assembled from maps ``u_i(m) = f_i(m_0) m_1``.

    For pointed ``C`` the functionals separate each isotypic part of the socle,
    giving ``n`` = the largest socle multiplicity.  Otherwise a greedy generating
    set of ``M*`` is used.
    """
    C = M.coalgebra
    if M.dim == 0:
        return PowerEmbedding(0, Matrix.zeros(0, 0, M.field), [])
    if is_pointed(C):
        comps = _socle_isotypic(M)
        n = max((len(c) for c in comps), default=0)
        soc_vecs = [v for comp in comps for v in comp]
        comp_idx = Subspace(M.dim, soc_vecs, M.field).complement_coordinates()
        B = Matrix.from_columns(soc_vecs + [{i: M.field.one} for i in comp_idx], M.dim, M.field)
        functionals = []
        for i in range(n):
            target = {}
            pos = 0
            for comp in comps:
                for k in range(len(comp)):
                    if k == i:
                        target[pos] = M.field.one
                    pos += 1
            sol = solve(B.transpose(), target)
            functionals.append(sol.particular)
    else:
        functionals = _greedy_generators(M)
        n = len(functionals)
    blocks = None
    for f in functionals:
        u = _u_map(M, f)
        blocks = u if blocks is None else blocks.vstack(u)
    emb = PowerEmbedding(n, blocks, functionals)
    if not emb.is_injective():
        raise StructureError("assembled map is not injective")
    return emb


def _greedy_generators(M: Comodule) -> list[dict]:
    ops = [T.transpose() for T in M.basis_operators()]
    span = Subspace(M.dim, [], M.field)
    gens = []
    for i in range(M.dim):
        f = {i: M.field.one}
        if span.contains(f):
            continue
        gens.append(f)
        frontier = [f]
        vecs = span.basis() + [f]
        span = Subspace(M.dim, vecs, M.field)
        while frontier:
            nxt = []
            for v in frontier:
                for T in ops:
                    w = T.apply(v)
                    if w and not span.contains(w):
                        span = Subspace(M.dim, span.basis() + [w], M.field)
                        nxt.append(w)
            frontier = nxt
        if span.dim == M.dim:
            break
    return gens


def socle_multiplicities(M: Comodule) -> dict:
    C = M.coalgebra
    return {_label(C, g): len(comp) for (g, _), comp in zip(primitive_idempotents(C), _socle_isotypic(M))}


def is_injective(M: Comodule) -> bool:
    """``M`` is injective iff it fills its injective hull ``(+) E(S)^{m_S}`` (dimension test)."""
    dec = injectives(M.coalgebra, M.side).by_label()
    mult = socle_multiplicities(M)
    return M.dim == sum(k * dec[label].dim for label, k in mult.items())


def is_serial(C: FiniteCoalgebra, side: str = LEFT) -> tuple[bool, dict]:
    """Every indecomposable injective is uniserial: each Loewy layer is one-dimensional.

    Returns the verdict and the Loewy layer dimensions per summand.
    """
    cert = {}
    ok = True
    for s in injectives(C, side).summands:
        chain = loewy(s.comodule)
        dims = [chain[0].dim] + [b.dim - a.dim for a, b in zip(chain, chain[1:])]
        cert[s.label] = dims
        if any(d != 1 for d in dims):
            ok = False
    return ok, cert
