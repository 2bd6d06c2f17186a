"""Quivers, paths and monomial coalgebra specifications.

A path ``a1.a2...ak`` traverses ``a1`` first.  The monomial coalgebra on a
subpath-closed set of paths has

    Delta(p) = sum_i (a1...ai) (x) (a_{i+1}...ak)

with trivial paths at the ends, so the left injective hull of a vertex is
spanned by the basis paths ending there and the right one by those starting
there.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from .coalgebra import (
    LEFT,
    RIGHT,
    FiniteCoalgebra,
    _label,
    coradical,
    loewy,
    primitive_idempotents,
)
from .coalgebra import is_serial as _coalgebra_is_serial
from .errors import StructureError
from .exactla import QQ, Field, Subspace

SEP = "."


@dataclass(frozen=True)
class Arrow:
    label: str
    source: str
    target: str


class Quiver:
    """Finite quiver with labelled vertices and arrows."""

    def __init__(self, vertices: Sequence[str], arrows: Iterable):
        self.vertices = list(vertices)
        self.arrows = [a if isinstance(a, Arrow) else Arrow(*a) for a in arrows]
        if len(set(self.vertices)) != len(self.vertices):
            raise StructureError("vertex labels must be unique")
        labels = [a.label for a in self.arrows]
        if len(set(labels)) != len(labels):
            raise StructureError("arrow labels must be unique")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise StructureError(f"arrow {a.label} has an unknown endpoint", a.label)
            if SEP in a.label or not a.label:
                raise StructureError(f"arrow label {a.label!r} is empty or contains {SEP!r}", a.label)
        clash = vs & set(labels)
        if clash:
            raise StructureError(f"labels used for both a vertex and an arrow: {sorted(clash)}", sorted(clash)[0])
        self._arrow = {a.label: a for a in self.arrows}

    def arrow(self, label: str) -> Arrow:
        try:
            return self._arrow[label]
        except KeyError:
            raise StructureError(f"unknown arrow {label!r}", label) from None

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, [Arrow(a.label, a.target, a.source) for a in self.arrows])

    def to_dot(self, name: str = "Q") -> str:
        lines = [f"digraph {name} {{"]
        lines += [f'  "{v}";' for v in self.vertices]
        lines += [f'  "{a.source}" -> "{a.target}" [label="{a.label}"];' for a in self.arrows]
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __eq__(self, other):
        return isinstance(other, Quiver) and self.vertices == other.vertices and self.arrows == other.arrows

    def __repr__(self):
        return f"Quiver({len(self.vertices)} vertices, {len(self.arrows)} arrows)"


@dataclass(frozen=True, order=True)
class Path:
    """A path by its start vertex and arrow labels; the trivial path has no arrows."""

    start: str
    end: str
    arrows: tuple = ()

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def label(self) -> str:
        return SEP.join(self.arrows) if self.arrows else self.start

    @classmethod
    def trivial(cls, v: str) -> "Path":
        return cls(v, v, ())

    @classmethod
    def of(cls, Q: Quiver, arrows) -> "Path":
        if isinstance(arrows, str):
            arrows = tuple(arrows.split(SEP)) if arrows else ()
        arrows = tuple(arrows)
        if not arrows:
            raise StructureError("use Path.trivial for trivial paths")
        arr = [Q.arrow(a) for a in arrows]
        for a, b in zip(arr, arr[1:]):
            if a.target != b.source:
                raise StructureError(f"arrows {a.label} and {b.label} do not compose", SEP.join(arrows))
        return cls(arr[0].source, arr[-1].target, arrows)

    def split(self, i: int, Q: Quiver) -> tuple["Path", "Path"]:
        """``(a1..ai, a_{i+1}..ak)``."""
        if i == 0:
            mid = self.start
        else:
            mid = Q.arrow(self.arrows[i - 1]).target
        first = Path(self.start, mid, self.arrows[:i])
        second = Path(mid, self.end, self.arrows[i:])
        return first, second

    def subpaths(self, Q: Quiver) -> list["Path"]:
        """All nontrivial contiguous subpaths, including the path itself."""
        out = []
        k = self.length
        for i in range(k):
            for j in range(i + 1, k + 1):
                out.append(Path.of(Q, self.arrows[i:j]))
        return out

    def reversed(self) -> "Path":
        return Path(self.end, self.start, tuple(reversed(self.arrows)))


def _path_sort_key(p: Path):
    return (p.length, p.label)


@dataclass
class SpecReport:
    ok: bool
    violations: list = dc_field(default_factory=list)  # (kind, witness label)

    def __bool__(self):
        return self.ok


class MonomialSpec:
    """Finite description of a monomial coalgebra: designated cycles plus extra paths.

    The basis is every vertex, every walk along a designated cycle, and the
    subpath closure of the extra paths.
    """

    def __init__(self, quiver: Quiver, cycles: Iterable = (), extras: Iterable = (), field: Field = QQ, name: str | None = None):
        self.quiver = quiver
        self.field = field
        self.name = name
        self.cycles = []
        for c in cycles:
            arrows = tuple(c.split(SEP)) if isinstance(c, str) else tuple(c)
            if not arrows:
                raise StructureError("empty cycle")
            p = Path.of(quiver, arrows)
            if p.start != p.end:
                raise StructureError(f"cycle {p.label} is not closed", p.label)
            self.cycles.append(arrows)
        seen = set()
        self.extras = []
        for e in extras:
            p = e if isinstance(e, Path) else Path.of(quiver, e)
            if p.arrows not in seen:
                seen.add(p.arrows)
                self.extras.append(p)

    # -- structure ---------------------------------------------------------
    def cycle_vertices(self, k: int) -> list[str]:
        return [self.quiver.arrow(a).source for a in self.cycles[k]]

    def cycle_of_vertex(self) -> dict:
        out: dict = {}
        for k in range(len(self.cycles)):
            for v in self.cycle_vertices(k):
                out.setdefault(v, k)
        return out

    def on_cycle(self, p: Path) -> bool:
        """``p`` is a walk along one designated cycle."""
        if not p.arrows:
            return False
        for c in self.cycles:
            L = len(c)
            for i in range(L):
                if c[i] == p.arrows[0] and all(c[(i + t) % L] == a for t, a in enumerate(p.arrows)):
                    return True
        return False

    def cycle_walks(self, max_len: int) -> list[Path]:
        out = []
        for c in self.cycles:
            L = len(c)
            for i in range(L):
                for ell in range(1, max_len + 1):
                    out.append(Path.of(self.quiver, [c[(i + t) % L] for t in range(ell)]))
        return out

    def extra_closure(self) -> list[Path]:
        seen = {}
        for e in self.extras:
            for s in e.subpaths(self.quiver):
                seen.setdefault(s.arrows, s)
        return list(seen.values())

    def basis_paths(self, d: int) -> list[Path]:
        """Basis paths of length at most ``d`` in canonical order (length, then label)."""
        paths = {(v, ()): Path.trivial(v) for v in self.quiver.vertices}
        for p in self.cycle_walks(d) + [p for p in self.extra_closure() if p.length <= d]:
            paths.setdefault((p.start, p.arrows), p)
        triv = [paths[(v, ())] for v in self.quiver.vertices]
        rest = sorted((p for p in paths.values() if p.length > 0), key=_path_sort_key)
        return triv + rest

    def basis_arrows(self) -> list[Path]:
        """Length-one basis paths."""
        return [p for p in self.basis_paths(1) if p.length == 1]

    def max_extra_length(self) -> int:
        return max((p.length for p in self.extras), default=0)

    def is_finite(self) -> bool:
        return not self.cycles

    # -- invariants --------------------------------------------------------
    def validate(self) -> SpecReport:
        return validate_spec(self)

    def __eq__(self, other):
        return (
            isinstance(other, MonomialSpec)
            and self.quiver == other.quiver
            and self.cycles == other.cycles
            and [p.arrows for p in self.extras] == [p.arrows for p in other.extras]
            and self.field == other.field
        )

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<MonomialSpec{label}: {len(self.quiver.vertices)} vertices, {len(self.cycles)} cycles, {len(self.extras)} extras>"


def validate_spec(s: MonomialSpec) -> SpecReport:
    """Report every violated invariant with the offending cycle or path."""
    violations = []
    owner: dict = {}
    for k, c in enumerate(s.cycles):
        vs = s.cycle_vertices(k)
        if len(set(vs)) != len(vs):
            violations.append(("cycle repeats a vertex", SEP.join(c)))
        for v in vs:
            if v in owner and owner[v] != k:
                violations.append(("cycles share a vertex", v))
            owner.setdefault(v, k)
    extra_set = {p.arrows for p in s.extras}
    for p in s.extras:
        if s.on_cycle(p):
            violations.append(("extra path lies on a cycle", p.label))
        for q in p.subpaths(s.quiver):
            if q.arrows != p.arrows and q.arrows not in extra_set and not s.on_cycle(q):
                violations.append(("subpath missing from extras", q.label))
    seen = set()
    unique = []
    for v in violations:
        if v not in seen:
            seen.add(v)
            unique.append(v)
    return SpecReport(not unique, unique)


def instantiate(s: MonomialSpec, d: int, name: str | None = None) -> FiniteCoalgebra:
    """The subcoalgebra spanned by basis paths of length at most ``d``, graded by length."""
    if d < 0:
        raise ValueError("degree bound must be nonnegative")
    paths = s.basis_paths(d)
    index = {(p.start, p.arrows): i for i, p in enumerate(paths)}
    one = s.field.one
    delta = []
    for p in paths:
        terms = {}
        for i in range(p.length + 1):
            a, b = p.split(i, s.quiver)
            terms[index[(a.start, a.arrows)], index[(b.start, b.arrows)]] = one
        delta.append(terms)
    counit = [one if p.length == 0 else s.field.zero for p in paths]
    return FiniteCoalgebra(
        [p.label for p in paths], delta, counit, s.field, [p.length for p in paths], name or s.name
    )


def opposite(s: MonomialSpec) -> MonomialSpec:
    """Spec of the co-opposite coalgebra: arrows, paths and cycles reversed."""
    Qop = s.quiver.opposite()
    cycles = [tuple(reversed(c)) for c in s.cycles]
    extras = [tuple(reversed(p.arrows)) for p in s.extras]
    name = None
    if s.name:
        name = s.name[:-3] if s.name.endswith("^op") else s.name + "^op"
    return MonomialSpec(Qop, cycles, extras, s.field, name)


def infinite_vertices(s: MonomialSpec) -> set:
    """Vertices with infinite-dimensional left injective hull: exactly the cycle vertices."""
    out = set()
    for k in range(len(s.cycles)):
        out.update(s.cycle_vertices(k))
    return out


# ---------------------------------------------------------------------------
# Ext-quiver

@dataclass
class ExtQuiver:
    vertices: list
    arrows: dict  # (from, to) -> multiplicity

    @property
    def successor(self) -> dict:
        """``alpha(S)``: defined where ``S`` has a single out-arrow of multiplicity one."""
        out: dict = {}
        for v in self.vertices:
            outs = [(t, m) for (s, t), m in self.arrows.items() if s == v]
            if len(outs) == 1 and outs[0][1] == 1:
                out[v] = outs[0][0]
        return out

    def out_degree(self, v) -> int:
        return sum(m for (s, _), m in self.arrows.items() if s == v)

    def in_degree(self, v) -> int:
        return sum(m for (_, t), m in self.arrows.items() if t == v)

    def is_disjoint_cycles(self, vertices=None) -> bool:
        """Every vertex (of the given subset) has exactly one in- and one out-arrow, inside the subset."""
        vs = list(self.vertices if vertices is None else vertices)
        sub = set(vs)
        for v in vs:
            outs = sum(m for (s, t), m in self.arrows.items() if s == v and t in sub)
            ins = sum(m for (s, t), m in self.arrows.items() if t == v and s in sub)
            if outs != 1 or ins != 1 or self.out_degree(v) != 1 or self.in_degree(v) != 1:
                return False
        return True

    def cycle_lengths(self) -> list[int] | None:
        """Lengths of the cycles when the quiver is a disjoint union of cycles."""
        if not self.is_disjoint_cycles():
            return None
        succ = self.successor
        seen = set()
        lengths = []
        for v in self.vertices:
            if v in seen:
                continue
            n, w = 0, v
            while w not in seen:
                seen.add(w)
                w = succ[w]
                n += 1
            lengths.append(n)
        return sorted(lengths)

    def to_dot(self, name: str = "Ext") -> str:
        lines = [f"digraph {name} {{"]
        lines += [f'  "{v}";' for v in self.vertices]
        for (s, t), m in sorted(self.arrows.items()):
            for _ in range(m):
                lines.append(f'  "{s}" -> "{t}";')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def as_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arrows": [{"from": s, "to": t, "multiplicity": m} for (s, t), m in sorted(self.arrows.items())],
            "successor": dict(sorted(self.successor.items())),
            "cycle_lengths": self.cycle_lengths(),
        }


def ext_quiver(C: FiniteCoalgebra) -> ExtQuiver:
    """Ext-quiver of a pointed coalgebra from ``C_1 / C_0``.

    The arrow ``S -> T`` counts copies of ``T`` in ``soc(E_l(S)/S)``; these
    live in ``e_S C_1 e_T`` (the image of ``c -> e_T(c_1) c_2 e_S(c_3)``).
    """
    idem = primitive_idempotents(C)
    labels = [_label(C, g) for g, _ in idem]
    chain = loewy(C.regular(LEFT))
    C0 = chain[0]
    C1 = chain[1] if len(chain) > 1 else chain[0]
    arrows = {}
    L = [C.hit_left(e) for _, e in idem]
    R = [C.hit_right(e) for _, e in idem]
    for i, s in enumerate(labels):
        for j, t in enumerate(labels):
            P = L[i] @ R[j]
            d1 = Subspace(C.dim, [P.apply(v) for v in C1.basis()], C.field).dim
            d0 = Subspace(C.dim, [P.apply(v) for v in C0.basis()], C.field).dim
            if d1 - d0:
                arrows[s, t] = d1 - d0
    return ExtQuiver(labels, arrows)


def ext_quiver_spec(s: MonomialSpec, d: int = 2) -> ExtQuiver:
    return ext_quiver(instantiate(s, max(d, 1)))


# ---------------------------------------------------------------------------
# serial check

@dataclass
class SerialReport:
    serial: bool
    side: str
    witness: str | None = None
    offending: list = dc_field(default_factory=list)
    crosscheck: bool | None = None
    layers: dict = dc_field(default_factory=dict)

    def __bool__(self):
        return self.serial


def is_serial(s: MonomialSpec, side: str = LEFT, d: int | None = None) -> SerialReport:
    """Combinatorial serial test, cross-checked on the truncation at ``d``.

    Left: at most one basis arrow ends at each vertex.  Right: at most one
    starts at each vertex.  Then every injective hull is a chain of paths.
    """
    if side not in (LEFT, RIGHT):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    counts: dict = {v: [] for v in s.quiver.vertices}
    for p in s.basis_arrows():
        counts[p.end if side == LEFT else p.start].append(p.label)
    witness, offending = None, []
    for v in s.quiver.vertices:
        if len(counts[v]) > 1:
            witness, offending = v, sorted(counts[v])
            break
    rep = SerialReport(witness is None, side, witness, offending)
    if d is None:
        d = max(2, s.max_extra_length() + 1) + max((len(c) for c in s.cycles), default=0)
    C = instantiate(s, d)
    ok, layers = _coalgebra_is_serial(C, side)
    rep.crosscheck = ok
    rep.layers = layers
    if ok != rep.serial:
        raise StructureError(f"serial cross-check disagrees at truncation {d}")
    return rep


def coradical_is_vertex_span(s: MonomialSpec, d: int) -> bool:
    C = instantiate(s, d)
    verts = Subspace(C.dim, [C.vector(v) for v in s.quiver.vertices], C.field)
    return coradical(C) == verts
