"""Truncated power series over QQ, Smith normal form over K[[z]], and torsion
splitting for modules over complete path algebras of disjoint cycles.

A :class:`PowerSeries` knows its coefficients below a watermark ``prec``;
``prec = None`` marks an exact polynomial.  Arithmetic never reports digits
at or above the watermark.

Modules are presented by relation rows: ``M = K[[z]]^g / (row space of A)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import permutations
from typing import Sequence

from .errors import InsufficientPrecision, StructureError
from .exactla import QQ, Matrix, rank


class _Infinity:
    """Valuation of zero; larger than every integer."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("inf")

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if other is self:
            raise ValueError("inf - inf")
        return self

    def __repr__(self):
        return "inf"


INF = _Infinity()


def _min_prec(*ps):
    vals = [p for p in ps if p is not None]
    return min(vals) if vals else None


class PowerSeries:
    """Element of K[[z]] known modulo ``z^prec`` (exact when ``prec`` is ``None``)."""

    __slots__ = ("coeffs", "prec")

    def __init__(self, coeffs: Sequence = (), prec: int | None = None):
        cs = [Fraction(c) for c in coeffs]
        if prec is not None:
            if prec < 0:
                raise ValueError("negative precision")
            cs = cs[:prec]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.prec = prec

    # -- constructors ------------------------------------------------------
    @classmethod
    def z(cls, k: int = 1, c=1) -> "PowerSeries":
        return cls([0] * k + [c])

    @classmethod
    def const(cls, c) -> "PowerSeries":
        return cls([c])

    @classmethod
    def zero(cls, prec: int | None = None) -> "PowerSeries":
        return cls([], prec)

    @classmethod
    def coerce(cls, x) -> "PowerSeries":
        if isinstance(x, PowerSeries):
            return x
        if isinstance(x, (list, tuple)):
            return cls(x)
        return cls([x])

    # -- inspection ---------------------------------------------------------
    @property
    def exact(self) -> bool:
        return self.prec is None

    def __getitem__(self, k: int):
        if self.prec is not None and k >= self.prec:
            raise InsufficientPrecision(f"coefficient {k} is beyond the watermark {self.prec}")
        return self.coeffs[k] if k < len(self.coeffs) else Fraction(0)

    def valuation(self):
        """Index of the first nonzero coefficient, or ``INF`` if none is known."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return INF

    def certified_zero(self) -> bool:
        return self.exact and not self.coeffs

    def is_zero_to_watermark(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        if not self.exact:
            raise ValueError("degree of a truncated series")
        return len(self.coeffs) - 1

    def evaluate(self, t):
        if not self.exact:
            raise ValueError("cannot evaluate a truncated series")
        s = Fraction(0)
        for c in reversed(self.coeffs):
            s = s * t + c
        return s

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = PowerSeries.coerce(other)
        p = _min_prec(self.prec, other.prec)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return PowerSeries([x + y for x, y in zip(a, b)], p)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries([-c for c in self.coeffs], self.prec)

    def __sub__(self, other):
        return self + (-PowerSeries.coerce(other))

    def __rsub__(self, other):
        return PowerSeries.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            if isinstance(other, (int, Fraction)):
                return PowerSeries([c * other for c in self.coeffs], self.prec)
            other = PowerSeries.coerce(other)
        if self.certified_zero() or other.certified_zero():
            return ZERO
        va, vb = self.valuation(), other.valuation()
        cands = []
        if self.prec is not None:
            cands.append(self.prec + (vb if vb is not INF else other.prec if other.prec is not None else 0))
        if other.prec is not None:
            cands.append(other.prec + (va if va is not INF else self.prec if self.prec is not None else 0))
        p = min(cands) if cands else None
        a, b = self.coeffs, other.coeffs
        n = len(a) + len(b) - 1 if a and b else 0
        if p is not None:
            n = min(n, p)
        out = [Fraction(0)] * max(n, 0)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if i + j >= n:
                    break
                out[i + j] += x * y
        return PowerSeries(out, p)

    __rmul__ = __mul__

    def truncate(self, prec: int) -> "PowerSeries":
        return PowerSeries(self.coeffs, _min_prec(self.prec, prec))

    def shift_down(self, k: int) -> "PowerSeries":
        """Divide by ``z^k``; the first ``k`` known coefficients must vanish."""
        if k == 0:
            return self
        if any(self.coeffs[:k]):
            raise ValueError("series is not divisible by z^k")
        if self.prec is not None and self.prec < k:
            raise InsufficientPrecision("cannot divide below the watermark")
        return PowerSeries(self.coeffs[k:], None if self.prec is None else self.prec - k)

    def invert_unit(self, precision: int) -> "PowerSeries":
        """Inverse of a unit modulo ``z^min(precision, prec)``."""
        if not self.coeffs or not self.coeffs[0]:
            raise ValueError("only series of valuation 0 are invertible")
        p = _min_prec(self.prec, precision)
        a = self.coeffs
        inv0 = 1 / a[0]
        out = [inv0]
        for k in range(1, p):
            s = Fraction(0)
            for i in range(1, min(k, len(a) - 1) + 1):
                s += a[i] * out[k - i]
            out.append(-s * inv0)
        return PowerSeries(out, p)

    def agrees(self, other: "PowerSeries") -> bool:
        """Equal on every coefficient known to both."""
        other = PowerSeries.coerce(other)
        p = _min_prec(self.prec, other.prec)
        n = max(len(self.coeffs), len(other.coeffs))
        if p is not None:
            n = min(n, p)
        return all(self[i] == other[i] for i in range(n))

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            try:
                other = PowerSeries.coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.coeffs == other.coeffs and self.prec == other.prec

    def __hash__(self):
        return hash((self.coeffs, self.prec))

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mon = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if not mon:
                terms.append(str(c))
            elif c == 1:
                terms.append(mon)
            else:
                terms.append(f"{c}*{mon}")
        body = " + ".join(terms) if terms else "0"
        if self.prec is not None:
            body += f" + O(z^{self.prec})"
        return body

    def as_json(self) -> dict:
        return {"coeffs": [_frac_json(c) for c in self.coeffs], "prec": self.prec}


def _frac_json(c: Fraction):
    return c.numerator if c.denominator == 1 else {"num": c.numerator, "den": c.denominator}


ONE = PowerSeries.const(1)
ZERO = PowerSeries.zero()


# ---------------------------------------------------------------------------
# series matrices

def smat(rows) -> list[list[PowerSeries]]:
    return [[PowerSeries.coerce(x) for x in r] for r in rows]


def s_identity(n: int) -> list[list[PowerSeries]]:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def s_matmul(A, B) -> list[list[PowerSeries]]:
    if not A:
        return []
    m, k = len(A), len(A[0]) if A else 0
    n = len(B[0]) if B else 0
    out = []
    for i in range(m):
        row = []
        for j in range(n):
            s = ZERO
            for t in range(k):
                s = s + A[i][t] * B[t][j]
            row.append(s)
        out.append(row)
    return out


def s_min_prec(A) -> int | None:
    return _min_prec(*[x.prec for r in A for x in r])


def s_is_zero(A) -> bool:
    return all(x.is_zero_to_watermark() for r in A for x in r)


# ---------------------------------------------------------------------------
# Smith normal form over K[[z]]

@dataclass
class SNFResult:
    valuations: list  # one per column: ints ascending then INF
    U: list
    V: list
    Vinv: list
    diagonal: list  # U A V, to the watermark
    watermark: int | None
    rank: int

    @property
    def torsion(self) -> list:
        return [v for v in self.valuations if v is not INF and v > 0]

    @property
    def free_rank(self) -> int:
        return sum(1 for v in self.valuations if v is INF)

    @property
    def margin(self):
        finite = [v for v in self.valuations if v is not INF]
        if self.watermark is None:
            return INF
        return self.watermark - max(finite, default=0)


def _rank_over_fraction_field(A) -> int:
    """Rank over K(z) of a polynomial matrix by evaluation at enough points."""
    m = len(A)
    n = len(A[0]) if m else 0
    if not m or not n:
        return 0
    maxdeg = max((x.degree() for r in A for x in r if x.coeffs), default=0)
    bound = min(m, n) * max(maxdeg, 0) + 1
    best = 0
    for t in range(bound + 1):
        M = Matrix.from_rows([[x.evaluate(Fraction(t)) for x in r] for r in A], QQ)
        best = max(best, rank(M))
        if best == min(m, n):
            break
    return best


def snf_dvr(A, precision: int = 16) -> SNFResult:
    """Smith normal form over the DVR ``K[[z]]``.

    Pivots on the entry of least valuation, ties broken by lowest
    ``(row, col)``.  Units are inverted to ``precision``.  Entries that stay
    zero to the watermark are certified zero by comparing the number of
    pivots with the rank over ``K(z)`` of the (polynomial) input.
    """
    A = smat(A)
    m = len(A)
    n = len(A[0]) if m else 0
    if any(len(r) != n for r in A):
        raise ValueError("ragged matrix")
    W = [list(r) for r in A]
    U = s_identity(m)
    V = s_identity(n)
    Vinv = s_identity(n)
    vals: list = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = W[i][j].valuation()
                if v is not INF and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            break
        v, pi, pj = best
        if W[pi][pj].prec is not None and v >= W[pi][pj].prec:
            raise InsufficientPrecision("pivot valuation is not certified")
        W[t], W[pi] = W[pi], W[t]
        U[t], U[pi] = U[pi], U[t]
        for r in W:
            r[t], r[pj] = r[pj], r[t]
        for r in V:
            r[t], r[pj] = r[pj], r[t]
        Vinv[t], Vinv[pj] = Vinv[pj], Vinv[t]
        piv = W[t][t]
        unit_inv = piv.shift_down(v).invert_unit(precision)
        # normalize the pivot to z^v
        W[t] = [x * unit_inv for x in W[t]]
        U[t] = [x * unit_inv for x in U[t]]
        for i in range(m):
            if i == t or W[i][t].is_zero_to_watermark():
                continue
            c = W[i][t].shift_down(v)
            W[i] = [a - c * b for a, b in zip(W[i], W[t])]
            U[i] = [a - c * b for a, b in zip(U[i], U[t])]
        for j in range(n):
            if j == t or W[t][j].is_zero_to_watermark():
                continue
            c = W[t][j].shift_down(v)
            # column j -= c * column t; inverse adds c * row j to row t of Vinv
            for r in W:
                r[j] = r[j] - c * r[t]
            for r in V:
                r[j] = r[j] - c * r[t]
            Vinv[t] = [a + c * b for a, b in zip(Vinv[t], Vinv[j])]
        vals.append(v)
        t += 1
    found = len(vals)
    if any(not x.is_zero_to_watermark() for r in W[found:] for x in r[found:]):
        raise InsufficientPrecision("residual block not cleared")
    if found < min(m, n):
        if all(x.exact for r in A for x in r):
            r_true = _rank_over_fraction_field(A)
            if r_true != found:
                raise InsufficientPrecision(
                    f"only {found} pivots certified but the rank over K(z) is {r_true}"
                )
        else:
            raise InsufficientPrecision("cannot certify zero entries of a truncated matrix")
    valuations = vals + [INF] * (n - found)
    D = s_matmul(s_matmul(U, A), V)
    return SNFResult(valuations, U, V, Vinv, D, s_min_prec(D + U + V + Vinv), found)


# ---------------------------------------------------------------------------
# brute-force determinantal divisors

def _det(M) -> PowerSeries:
    n = len(M)
    total = ZERO
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = ONE
        for i in range(n):
            term = term * M[i][perm[i]]
        total = total + (term if sign > 0 else -term)
    return total


def determinantal_valuations(A) -> list:
    """``d_k`` = least valuation of a ``k x k`` minor, for ``k = 1..min(m, n)``."""
    from itertools import combinations

    A = smat(A)
    m = len(A)
    n = len(A[0]) if m else 0
    out = []
    for k in range(1, min(m, n) + 1):
        best = INF
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                v = _det([[A[i][j] for j in cols] for i in rows]).valuation()
                if v < best:
                    best = v
        out.append(best)
    return out


def invariant_factors_by_minors(A) -> list:
    """Invariant-factor valuations ``d_k - d_{k-1}`` per column, ``INF`` past the rank."""
    A = smat(A)
    n = len(A[0]) if A else 0
    ds = determinantal_valuations(A)
    out = []
    prev = 0
    for d in ds:
        if d is INF:
            break
        out.append(d - prev)
        prev = d
    return out + [INF] * (n - len(out))


# ---------------------------------------------------------------------------
# presentations over K[[z]]

@dataclass
class SeriesPresentation:
    """``K[[z]]^ngens / (row space of relations)``; rows are lists of PowerSeries."""

    ngens: int
    relations: list = dc_field(default_factory=list)
    labels: list | None = None
    col_vertices: list | None = None
    row_vertices: list | None = None

    def __post_init__(self):
        self.relations = [[PowerSeries.coerce(x) for x in r] for r in self.relations]
        for r in self.relations:
            if len(r) != self.ngens:
                raise StructureError("relation length does not match the generator count")
        if self.labels is None:
            self.labels = [f"g{i}" for i in range(self.ngens)]

    def matrix(self):
        return self.relations if self.relations else []


@dataclass
class RatPartResult:
    torsion: list  # valuations n_i > 0
    free_rank: int
    valuations: list
    inclusion: list  # torsion generator -> row vector in original coordinates
    projection: list  # original coordinates -> torsion coordinates (columns of V)
    free_basis: list  # rows of V^{-1} spanning a free complement
    residuals: dict
    watermark: int | None
    margin: object
    verified: bool
    snf: SNFResult | None = None
    restricted: SeriesPresentation | None = None

    def as_dict(self) -> dict:
        return {
            "torsion": list(self.torsion),
            "free_rank": self.free_rank,
            "rat_dimension": sum(self.torsion),
            "watermark": self.watermark,
            "margin": None if self.margin is INF else self.margin,
            "residuals_certified_zero": {k: v for k, v in sorted(self.residuals.items())},
            "verified": self.verified,
        }


def _row_times(row, M):
    return s_matmul([row], M)[0]


def rat_part_fg(p, precision: int = 16, slack: int = 4) -> RatPartResult:
    """Torsion part and splitting maps of a finitely generated module.

    ``p`` is a :class:`SeriesPresentation` or an :class:`FgPresentation` over
    a complete cycle algebra (restricted to ``K[[z]]`` first).  The torsion
    generators are the rows of ``V^{-1}`` with finite valuation; the
    projection is ``x -> (x V)_i mod z^{n_i}``.
    """
    restricted = None
    if isinstance(p, FgPresentation):
        restricted = restrict_scalars(p)
        p = restricted
    g = p.ngens
    A = p.relations
    if not A:
        snf = SNFResult([INF] * g, [], s_identity(g), s_identity(g), [], None, 0)
    else:
        snf = snf_dvr(A, precision)
    vals = snf.valuations
    if snf.margin is not INF and snf.margin < slack:
        raise InsufficientPrecision(
            f"certificate margin {snf.margin} is below the slack {slack}; raise the precision"
        )
    tors_idx = [i for i, v in enumerate(vals) if v is not INF and v > 0]
    free_idx = [i for i, v in enumerate(vals) if v is INF]
    inclusion = [snf.Vinv[i] for i in tors_idx]
    projection = [[snf.V[r][i] for r in range(g)] for i in tors_idx]
    free_basis = [snf.Vinv[i] for i in free_idx]
    residuals = {}
    # V^{-1} V = I
    VV = s_matmul(snf.Vinv, snf.V)
    residuals["Vinv*V - I"] = all(
        (VV[i][j] - (ONE if i == j else ZERO)).is_zero_to_watermark() for i in range(g) for j in range(g)
    )
    # z^{n_i} iota(e_i) is a relation: it equals row i of U A
    if A:
        UA = s_matmul(snf.U, A)
        ok = True
        for k, i in enumerate(tors_idx):
            zi = PowerSeries.z(vals[i])
            ok &= all((zi * a - b).is_zero_to_watermark() for a, b in zip(inclusion[k], UA[i]))
        residuals["z^n*iota - relation"] = ok
        # pi o iota = id on the torsion block
        ok = True
        for k, i in enumerate(tors_idx):
            img = _row_times(inclusion[k], snf.V)
            for k2, i2 in enumerate(tors_idx):
                want = ONE if i == i2 else ZERO
                diff = (img[i2] - want).truncate(vals[i2])
                ok &= diff.is_zero_to_watermark()
        residuals["pi*iota - id"] = ok
        # free rows map to zero torsion coordinates
        ok = True
        for row in free_basis:
            img = _row_times(row, snf.V)
            ok &= all(img[i].truncate(vals[i]).is_zero_to_watermark() for i in tors_idx)
        residuals["pi on free complement"] = ok
    verified = all(residuals.values())
    return RatPartResult(
        [vals[i] for i in tors_idx],
        len(free_idx),
        vals,
        inclusion,
        projection,
        free_basis,
        residuals,
        snf.watermark,
        snf.margin,
        verified,
        snf,
        restricted,
    )


# ---------------------------------------------------------------------------
# complete path algebras of disjoint cycles

class CompleteCycleAlgebra:
    """Dual of a monomial coalgebra whose basis is the walks on disjoint cycles.

    Finite elements are dicts ``path -> coefficient`` with ``delta_p delta_q =
    delta_{pq}`` (``p`` traversed first).  ``z`` is the sum of the full
    cycles at every vertex and is central.
    """

    def __init__(self, spec):
        from .quiver import MonomialSpec

        if not isinstance(spec, MonomialSpec):
            raise TypeError("expected a MonomialSpec")
        rep = spec.validate()
        if not rep.ok:
            raise StructureError(f"invalid spec: {rep.violations[0]}", rep.violations[0][1])
        if spec.extras or not spec.cycles:
            raise StructureError("complete cycle algebras need cycles and no extra paths")
        cov = set()
        for k in range(len(spec.cycles)):
            cov.update(spec.cycle_vertices(k))
        if cov != set(spec.quiver.vertices):
            raise StructureError("every vertex must lie on a designated cycle")
        self.spec = spec
        self.quiver = spec.quiver
        self._cycle_at = {}  # vertex -> (cycle arrows rotated to start there)
        for c in spec.cycles:
            L = len(c)
            for i in range(L):
                v = self.quiver.arrow(c[i]).source
                self._cycle_at[v] = tuple(c[(i + t) % L] for t in range(L))
        self._in_arrow = {}
        for v, cyc in self._cycle_at.items():
            self._in_arrow[v] = cyc[-1]

    @classmethod
    def power_series(cls, vertex: str = "o", loop: str = "z") -> "CompleteCycleAlgebra":
        from .quiver import MonomialSpec, Quiver

        return cls(MonomialSpec(Quiver([vertex], [(loop, vertex, vertex)]), [(loop,)]))

    @property
    def vertices(self) -> list:
        return list(self.quiver.vertices)

    def cycle_length(self, v: str) -> int:
        return len(self._cycle_at[v])

    def walk(self, start: str, length: int):
        """The unique basis path of the given length starting at ``start``."""
        from .quiver import Path

        if length == 0:
            return Path.trivial(start)
        cyc = self._cycle_at[start]
        L = len(cyc)
        return Path.of(self.quiver, [cyc[t % L] for t in range(length)])

    def walk_ending(self, end: str, length: int):
        """The unique basis path of the given length ending at ``end``."""
        from .quiver import Path

        if length == 0:
            return Path.trivial(end)
        arrows = []
        v = end
        for _ in range(length):
            a = self.quiver.arrow(self._in_arrow[v])
            arrows.append(a.label)
            v = a.source
        return Path.of(self.quiver, list(reversed(arrows)))

    def path(self, label: str):
        from .quiver import Path

        if label in self.quiver.vertices:
            return Path.trivial(label)
        p = Path.of(self.quiver, label)
        if p.length and not self.spec.on_cycle(p):
            raise StructureError(f"{label} is not a basis path", label)
        return p

    def multiply_paths(self, p, q):
        """``p q`` (``p`` first) or ``None`` when the endpoints do not match."""
        from .quiver import Path

        if p.end != q.start:
            return None
        if not p.arrows:
            return q
        if not q.arrows:
            return p
        return Path(p.start, q.end, p.arrows + q.arrows)

    def multiply(self, a: dict, b: dict) -> dict:
        out: dict = {}
        for p, x in a.items():
            for q, y in b.items():
                r = self.multiply_paths(p, q)
                if r is not None:
                    out[r] = out.get(r, 0) + x * y
                    if not out[r]:
                        del out[r]
        return out

    def z_truncated(self, max_len: int) -> dict:
        """``z`` as a finite element; only exact on paths shorter than ``max_len``."""
        return {self.walk(v, self.cycle_length(v)): 1 for v in self.vertices}

    def check_central(self, max_len: int) -> bool:
        zed = self.z_truncated(max_len)
        for v in self.vertices:
            for ell in range(max_len + 1):
                p = {self.walk(v, ell): 1}
                if self.multiply(zed, p) != self.multiply(p, zed):
                    return False
        return True

    def z_power_split(self, p) -> tuple[int, object]:
        """``p = z^k p'`` with ``p'`` of length ``len(p) mod L`` ending at the same vertex."""
        L = self.cycle_length(p.end)
        k, r = divmod(p.length, L)
        return k, self.walk_ending(p.end, r)

    def __repr__(self):
        return f"<CompleteCycleAlgebra on {len(self.vertices)} vertices>"


@dataclass
class FgPresentation:
    """Finitely presented left module over a :class:`CompleteCycleAlgebra`.

    ``generators[j]`` is the vertex of generator ``j`` (``g_j = e_v g_j``).
    Each relation is a dict ``j -> {path label: coefficient}``; the paths in
    the entry for ``j`` end at the vertex of ``g_j`` and all start at one
    common vertex (the vertex of the relation).
    """

    algebra: CompleteCycleAlgebra
    generators: list
    relations: list = dc_field(default_factory=list)

    def __post_init__(self):
        A = self.algebra
        for v in self.generators:
            if v not in A.vertices:
                raise StructureError(f"generator vertex {v!r} is not in the quiver", v)
        parsed = []
        for r in self.relations:
            row = {}
            for j, entry in r.items():
                j = int(j)
                if not 0 <= j < len(self.generators):
                    raise StructureError(f"relation references generator {j}", j)
                poly = {}
                for lab, c in entry.items():
                    p = A.path(lab) if isinstance(lab, str) else lab
                    if p.end != self.generators[j]:
                        raise StructureError(
                            f"path {p.label} does not end at the vertex of generator {j}", p.label
                        )
                    c = Fraction(c)
                    if c:
                        poly[p] = poly.get(p, 0) + c
                if poly:
                    row[j] = poly
            starts = {p.start for poly in row.values() for p in poly}
            if len(starts) > 1:
                raise StructureError(f"relation mixes start vertices {sorted(starts)}", sorted(starts)[0])
            parsed.append(row)
        self.relations = parsed

    def relation_vertex(self, r: dict):
        for poly in r.values():
            for p in poly:
                return p.start
        return None


def restrict_scalars(p: FgPresentation) -> SeriesPresentation:
    """Restrict a cycle-algebra presentation to ``K[[z]]``.

    Generator ``g_j`` at ``v`` gives ``K[[z]]``-generators ``p' g_j`` for the
    paths ``p'`` of length ``< L`` ending at ``v``; a relation ``rho`` at ``w``
    gives the rows ``q rho`` for paths ``q`` of length ``< L`` ending at ``w``.
    """
    A = p.algebra
    cols = {}
    labels = []
    col_vertices = []
    for j, v in enumerate(p.generators):
        for r in range(A.cycle_length(v)):
            pp = A.walk_ending(v, r)
            cols[j, pp] = len(labels)
            labels.append(f"{pp.label}*g{j}")
            col_vertices.append(pp.start)
    n = len(labels)
    rows = []
    row_vertices = []
    for rel in p.relations:
        w = p.relation_vertex(rel)
        if w is None:
            continue
        for r in range(A.cycle_length(w)):
            q = A.walk_ending(w, r)
            row: dict = {}
            for j, poly in rel.items():
                for path, c in poly.items():
                    full = A.multiply_paths(q, path)
                    k, rest = A.z_power_split(full)
                    col = cols[j, rest]
                    row.setdefault(col, {})
                    row[col][k] = row[col].get(k, 0) + c
            dense = []
            for col in range(n):
                coeffs = row.get(col, {})
                deg = max(coeffs, default=-1)
                dense.append(PowerSeries([coeffs.get(i, 0) for i in range(deg + 1)]))
            rows.append(dense)
            row_vertices.append(q.start)
    return SeriesPresentation(n, rows, labels, col_vertices, row_vertices)


def arrow_action(p: FgPresentation, arrow: str) -> list[list[PowerSeries]]:
    """Matrix of left multiplication by an arrow on the restricted generators.

    Entry ``[target][source]``: ``arrow * (p' g_j) = z^e (p'' g_j)`` with
    ``e`` in ``{0, 1}``.
    """
    A = p.algebra
    a = A.quiver.arrow(arrow)
    labels = []
    cols = {}
    for j, v in enumerate(p.generators):
        for r in range(A.cycle_length(v)):
            pp = A.walk_ending(v, r)
            cols[j, pp] = len(labels)
            labels.append((j, pp))
    n = len(labels)
    M = [[ZERO] * n for _ in range(n)]
    from .quiver import Path

    ap = Path.of(A.quiver, [arrow])
    for (j, pp), c in cols.items():
        prod = A.multiply_paths(ap, pp)
        if prod is None:
            continue
        k, rest = A.z_power_split(prod)
        M[cols[j, rest]][c] = PowerSeries.z(k)
    return M
