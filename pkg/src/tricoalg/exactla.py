"""Exact sparse linear algebra over the rationals and prime fields.

Scalars are :class:`fractions.Fraction` for ``QQ`` and :class:`GFElement`
for ``GF(p)``.  Matrices are sparse maps ``(row, col) -> scalar`` with no
stored zeros, so two matrices are equal exactly when their entry maps are.
Tensor products use the lexicographic basis ``(i, j) -> i * dim2 + j``
(left factor major).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence


class GFElement:
    """Residue modulo a prime ``p``, always stored in ``[0, p)``."""

    __slots__ = ("val", "p")

    def __init__(self, val: int, p: int):
        self.p = p
        self.val = val % p

    def _coerce(self, other):
        if isinstance(other, GFElement):
            if other.p != self.p:
                raise ValueError(f"mixed moduli {self.p} and {other.p}")
            return other.val
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p) % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GFElement(self.val + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GFElement(self.val - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GFElement(o - self.val, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GFElement(self.val * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return GFElement(-self.val, self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return GFElement(self.val * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GFElement(o, self.p) / self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.val == o

    def __hash__(self):
        return hash((self.val, self.p))

    def __bool__(self):
        return self.val != 0

    def __repr__(self):
        return f"{self.val} mod {self.p}"


class Field:
    """Ground field tag: ``Field()`` is QQ, ``Field(p)`` is GF(p)."""

    def __init__(self, p: int | None = None):
        if p is not None and (p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1))):
            raise ValueError(f"{p} is not prime")
        self.p = p

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, x):
        if self.p is None:
            if isinstance(x, GFElement):
                raise TypeError("cannot coerce a residue into QQ")
            return Fraction(x)
        if isinstance(x, GFElement):
            if x.p != self.p:
                raise ValueError(f"residue mod {x.p} in GF({self.p})")
            return x
        x = Fraction(x)
        return GFElement(x.numerator * pow(x.denominator, -1, self.p), self.p)

    def random(self, rng: random.Random, lo: int = -3, hi: int = 3):
        return self(rng.randint(lo, hi))

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"


QQ = Field()


def GF(p: int) -> Field:
    return Field(p)


Vector = dict  # sparse vector: index -> nonzero scalar


def vec_add(u: dict, v: dict, scale=1) -> dict:
    out = dict(u)
    for k, x in v.items():
        y = out.get(k, 0) + scale * x
        if y:
            out[k] = y
        else:
            out.pop(k, None)
    return out


def vec_scale(v: dict, s) -> dict:
    if not s:
        return {}
    return {k: s * x for k, x in v.items()}


class Matrix:
    """Sparse exact matrix.

    ``entries`` maps ``(row, col)`` to a nonzero field element.  Instances are
    treated as immutable values.
    """

    __slots__ = ("rows", "cols", "field", "_entries")

    def __init__(self, rows: int, cols: int, entries=None, field: Field = QQ):
        if rows < 0 or cols < 0:
            raise ValueError("negative dimension")
        self.rows = rows
        self.cols = cols
        self.field = field
        clean = {}
        if entries:
            for (i, j), x in entries.items():
                if not (0 <= i < rows and 0 <= j < cols):
                    raise IndexError(f"entry ({i}, {j}) outside {rows}x{cols}")
                x = field(x)
                if x:
                    clean[i, j] = x
        self._entries = clean

    # construction -------------------------------------------------------
    @classmethod
    def _raw(cls, rows, cols, entries, field):
        m = cls.__new__(cls)
        m.rows, m.cols, m.field, m._entries = rows, cols, field, entries
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int, field: Field = QQ) -> "Matrix":
        return cls._raw(rows, cols, {}, field)

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "Matrix":
        return cls._raw(n, n, {(i, i): field.one for i in range(n)}, field)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field: Field = QQ) -> "Matrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        return cls(r, c, {(i, j): x for i, row in enumerate(rows) for j, x in enumerate(row) if x}, field)

    @classmethod
    def from_columns(cls, columns: Sequence[dict], nrows: int, field: Field = QQ) -> "Matrix":
        return cls(nrows, len(columns), {(i, j): x for j, col in enumerate(columns) for i, x in col.items()}, field)

    # access -------------------------------------------------------------
    @property
    def entries(self) -> dict:
        return dict(self._entries)

    def items(self) -> list:
        """Entries in canonical (sorted) order."""
        return sorted(self._entries.items())

    def __getitem__(self, key):
        return self._entries.get(key, self.field.zero)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def nnz(self) -> int:
        return len(self._entries)

    def is_zero(self) -> bool:
        return not self._entries

    def row_dicts(self) -> list[dict]:
        out = [dict() for _ in range(self.rows)]
        for (i, j), x in self._entries.items():
            out[i][j] = x
        return out

    def col_dicts(self) -> list[dict]:
        out = [dict() for _ in range(self.cols)]
        for (i, j), x in self._entries.items():
            out[j][i] = x
        return out

    def column(self, j: int) -> dict:
        return {i: x for (i, jj), x in self._entries.items() if jj == j}

    def to_dense(self) -> list[list]:
        z = self.field.zero
        out = [[z] * self.cols for _ in range(self.rows)]
        for (i, j), x in self._entries.items():
            out[i][j] = x
        return out

    # arithmetic ---------------------------------------------------------
    def _check_same(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        out = dict(self._entries)
        for k, x in other._entries.items():
            y = out.get(k, 0) + x
            if y:
                out[k] = y
            else:
                out.pop(k, None)
        return Matrix._raw(self.rows, self.cols, out, self.field)

    def __neg__(self) -> "Matrix":
        return Matrix._raw(self.rows, self.cols, {k: -x for k, x in self._entries.items()}, self.field)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, s) -> "Matrix":
        s = self.field(s)
        if not s:
            return Matrix.zeros(self.rows, self.cols, self.field)
        return Matrix._raw(self.rows, self.cols, {k: s * x for k, x in self._entries.items()}, self.field)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        right = other.row_dicts()
        out: dict = {}
        for (i, k), x in self._entries.items():
            for j, y in right[k].items():
                key = (i, j)
                v = out.get(key, 0) + x * y
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return Matrix._raw(self.rows, other.cols, out, self.field)

    def apply(self, v: dict) -> dict:
        """Matrix times sparse column vector."""
        out: dict = {}
        for (i, j), x in self._entries.items():
            y = v.get(j)
            if y:
                out[i] = out.get(i, 0) + x * y
        return {i: x for i, x in out.items() if x}

    def transpose(self) -> "Matrix":
        return Matrix._raw(self.cols, self.rows, {(j, i): x for (i, j), x in self._entries.items()}, self.field)

    T = property(transpose)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise ValueError("row mismatch")
        out = dict(self._entries)
        out.update({(i, j + self.cols): x for (i, j), x in other._entries.items()})
        return Matrix._raw(self.rows, self.cols + other.cols, out, self.field)

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise ValueError("column mismatch")
        out = dict(self._entries)
        out.update({(i + self.rows, j): x for (i, j), x in other._entries.items()})
        return Matrix._raw(self.rows + other.rows, self.cols, out, self.field)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        rmap = {r: a for a, r in enumerate(rows)}
        cmap = {c: b for b, c in enumerate(cols)}
        out = {(rmap[i], cmap[j]): x for (i, j), x in self._entries.items() if i in rmap and j in cmap}
        return Matrix._raw(len(rows), len(cols), out, self.field)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.shape == other.shape
            and self.field == other.field
            and self._entries == other._entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(self.items())))

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols}, {self.field}, nnz={len(self._entries)})"


# ---------------------------------------------------------------------------
# elimination

def rref_rows(rows: Iterable[dict], field: Field = QQ) -> tuple[list[dict], list[int]]:
    """Reduced row echelon form of sparse rows.

    Returns ``(reduced, pivots)`` with ``reduced[k]`` having a 1 at column
    ``pivots[k]`` and zeros in every other pivot column.
    """
    pivot_rows: dict[int, dict] = {}
    for row in rows:
        r = {j: field(x) for j, x in row.items() if x}
        # pivot rows are fully reduced, so one pass clears every pivot column
        r = _reduce_against(r, pivot_rows)
        if not r:
            continue
        p = min(r)
        inv = field.one / r[p]
        r = {j: x * inv for j, x in r.items()}
        for q, prow in pivot_rows.items():
            c = prow.get(p)
            if c:
                pivot_rows[q] = vec_add(prow, r, -c)
        pivot_rows[p] = r
    pivots = sorted(pivot_rows)
    return [pivot_rows[p] for p in pivots], pivots


def _reduce_against(row: dict, pivot_rows: dict[int, dict]) -> dict:
    r = dict(row)
    for j in [j for j in r if j in pivot_rows]:
        c = r.get(j)
        if c:
            r = vec_add(r, pivot_rows[j], -c)
    return r


def rank(A: Matrix) -> int:
    return len(rref_rows(A.row_dicts(), A.field)[1])


def kernel(A: Matrix) -> list[dict]:
    """Basis of the null space of ``A`` as sparse column vectors."""
    reduced, pivots = rref_rows(A.row_dicts(), A.field)
    pivset = set(pivots)
    one = A.field.one
    basis = []
    for free in range(A.cols):
        if free in pivset:
            continue
        v = {free: one}
        for row, p in zip(reduced, pivots):
            c = row.get(free)
            if c:
                v[p] = -c
        basis.append(v)
    return basis


@dataclass(frozen=True)
class Inconsistent:
    """Marker result of :func:`solve` for a system with no solution."""

    reason: str = "inconsistent system"

    def __bool__(self):
        return False


@dataclass(frozen=True)
class Solution:
    particular: dict
    kernel: list


def solve(A: Matrix, b: dict | Sequence) -> Solution | Inconsistent:
    """Solve ``A x = b`` exactly.

    Returns a :class:`Solution` (one particular solution plus a kernel basis)
    or :class:`Inconsistent`.
    """
    if not isinstance(b, dict):
        if len(b) != A.rows:
            raise ValueError("right-hand side has wrong length")
        b = {i: x for i, x in enumerate(b) if x}
    aug = A.hstack(Matrix(A.rows, 1, {(i, 0): x for i, x in b.items()}, A.field))
    reduced, pivots = rref_rows(aug.row_dicts(), A.field)
    if A.cols in pivots:
        return Inconsistent()
    x = {}
    for row, p in zip(reduced, pivots):
        c = row.get(A.cols)
        if c:
            x[p] = c
    return Solution(x, kernel(A))


def tensor(f: Matrix, g: Matrix) -> Matrix:
    """Kronecker product ``f (x) g`` in the left-major lexicographic basis."""
    if f.field != g.field:
        raise ValueError("field mismatch")
    out = {}
    for (i, j), x in f._entries.items():
        for (k, l), y in g._entries.items():
            out[i * g.rows + k, j * g.cols + l] = x * y
    return Matrix._raw(f.rows * g.rows, f.cols * g.cols, out, f.field)


# ---------------------------------------------------------------------------
# subspaces

class Subspace:
    """A subspace of ``field^n`` with an echelon basis for fast membership."""

    def __init__(self, n: int, vectors: Iterable[dict] = (), field: Field = QQ):
        self.n = n
        self.field = field
        reduced, pivots = rref_rows(vectors, field)
        self._pivot_rows = dict(zip(pivots, reduced))

    @property
    def dim(self) -> int:
        return len(self._pivot_rows)

    def basis(self) -> list[dict]:
        return [self._pivot_rows[p] for p in sorted(self._pivot_rows)]

    def pivots(self) -> list[int]:
        return sorted(self._pivot_rows)

    def reduce(self, v: dict) -> dict:
        return _reduce_against(v, self._pivot_rows)

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    def __contains__(self, v):
        return self.contains(v)

    def coordinates(self, v: dict) -> dict:
        """Coordinates of ``v`` with respect to :meth:`basis` (``v`` must lie in the span)."""
        coords = {}
        for k, p in enumerate(sorted(self._pivot_rows)):
            c = v.get(p)
            if c:
                coords[k] = c
        if not self.contains(v):
            raise ValueError("vector not in subspace")
        return coords

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.n, self.basis() + other.basis(), self.field)

    def intersect(self, other: "Subspace") -> "Subspace":
        a, b = self.basis(), other.basis()
        if not a or not b:
            return Subspace(self.n, [], self.field)
        # solve sum x_i a_i - sum y_j b_j = 0
        cols = a + [vec_scale(v, -1) for v in b]
        M = Matrix.from_columns(cols, self.n, self.field)
        vecs = []
        for k in kernel(M):
            w = {}
            for i, c in k.items():
                if i < len(a):
                    w = vec_add(w, a[i], c)
            vecs.append(w)
        return Subspace(self.n, vecs, self.field)

    def complement_coordinates(self) -> list[int]:
        """Standard coordinates spanning a complement (the non-pivot indices)."""
        piv = set(self._pivot_rows)
        return [i for i in range(self.n) if i not in piv]

    def __eq__(self, other):
        if not isinstance(other, Subspace) or other.n != self.n:
            return False
        return self.dim == other.dim and all(self.contains(v) for v in other.basis())

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self.basis())

    def __repr__(self):
        return f"Subspace(dim={self.dim} in {self.field}^{self.n})"


def column_space(A: Matrix) -> Subspace:
    return Subspace(A.rows, A.col_dicts(), A.field)


def preimage(A: Matrix, target: Subspace) -> Subspace:
    """``{v : A v in target}``."""
    # v in preimage iff A v reduces to zero modulo target; build the linear
    # map v -> reduce(A v) through the reduced images of the unit vectors.
    cols = [target.reduce(c) for c in A.col_dicts()]
    R = Matrix.from_columns(cols, A.rows, A.field)
    return Subspace(A.cols, kernel(R), A.field)


def iter_unit(n: int, field: Field = QQ) -> Iterator[dict]:
    for i in range(n):
        yield {i: field.one}
