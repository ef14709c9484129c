"""Quivers, paths, admissible relations and the bound quiver algebra container.

Path composition convention: ``a.b`` means traverse ``a`` first, then ``b``,
which requires head(a) = tail(b).  The same convention drives module actions
everywhere in the package (a path acts on the tail side first).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import AlgebraParseError, QuiverInvError


@dataclass(frozen=True)
class Arrow:
    name: str
    tail: str
    head: str


class Quiver:
    """Finite quiver with an ordered vertex list and named arrows."""

    def __init__(self, vertices, arrows):
        self.vertices = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverInvError("duplicate vertex ids")
        self.arrows = tuple(
            a if isinstance(a, Arrow) else Arrow(*a) for a in arrows
        )
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise QuiverInvError("duplicate arrow names")
        vset = set(self.vertices)
        for a in self.arrows:
            if a.tail not in vset or a.head not in vset:
                raise QuiverInvError(f"arrow {a.name} uses undeclared vertex")
        self._vindex = {v: i for i, v in enumerate(self.vertices)}
        self._by_name = {a.name: a for a in self.arrows}

    def vertex_index(self, v):
        return self._vindex[v]

    def arrow(self, name):
        try:
            return self._by_name[name]
        except KeyError:
            raise QuiverInvError(f"unknown arrow {name!r}") from None

    def arrows_from(self, v):
        return [a for a in self.arrows if a.tail == v]

    def arrows_into(self, v):
        return [a for a in self.arrows if a.head == v]

    def arrow_count_matrix(self):
        """n[i][j] = number of arrows from vertex i to vertex j."""
        n = len(self.vertices)
        m = [[0] * n for _ in range(n)]
        for a in self.arrows:
            m[self.vertex_index(a.tail)][self.vertex_index(a.head)] += 1
        return m

    def has_directed_cycle(self):
        color = {v: 0 for v in self.vertices}

        def visit(v):
            color[v] = 1
            for a in self.arrows_from(v):
                if color[a.head] == 1:
                    return True
                if color[a.head] == 0 and visit(a.head):
                    return True
            color[v] = 2
            return False

        return any(color[v] == 0 and visit(v) for v in self.vertices)

    def longest_path_length(self):
        """Length of the longest path; only meaningful for acyclic quivers."""
        if self.has_directed_cycle():
            raise QuiverInvError("longest path is unbounded on a cyclic quiver")
        memo = {}

        def depth(v):
            if v not in memo:
                memo[v] = max(
                    (1 + depth(a.head) for a in self.arrows_from(v)), default=0
                )
            return memo[v]

        return max((depth(v) for v in self.vertices), default=0)

    def __eq__(self, other):
        return (
            isinstance(other, Quiver)
            and self.vertices == other.vertices
            and self.arrows == other.arrows
        )


@dataclass(frozen=True)
class Path:
    """A path in a quiver; ``arrows`` is empty for a trivial path."""

    source: str
    target: str
    arrows: tuple

    @classmethod
    def trivial(cls, vertex):
        return cls(vertex, vertex, ())

    @classmethod
    def from_arrows(cls, quiver, names):
        names = tuple(names)
        if not names:
            raise QuiverInvError("a non-trivial path needs at least one arrow")
        first = quiver.arrow(names[0])
        prev = first
        for nm in names[1:]:
            nxt = quiver.arrow(nm)
            if prev.head != nxt.tail:
                raise QuiverInvError(
                    f"arrows {prev.name!r} and {nm!r} do not compose "
                    f"(head {prev.head!r} vs tail {nxt.tail!r})"
                )
            prev = nxt
        return cls(first.tail, prev.head, names)

    @property
    def length(self):
        return len(self.arrows)

    def compose(self, other):
        """self then other; requires target(self) = source(other)."""
        if self.target != other.source:
            raise QuiverInvError("paths do not compose")
        return Path(self.source, other.target, self.arrows + other.arrows)

    def label(self):
        return ".".join(self.arrows) if self.arrows else f"e_{self.source}"


class Relation:
    """Rational combination of parallel paths, each of length at least two."""

    def __init__(self, terms):
        clean = []
        for coeff, path in terms:
            c = coeff if isinstance(coeff, Fraction) else Fraction(coeff)
            if c != 0:
                clean.append((c, path))
        if not clean:
            raise AlgebraParseError("relation is zero")
        src = clean[0][1].source
        tgt = clean[0][1].target
        for _, p in clean:
            if p.length < 2:
                raise AlgebraParseError(
                    f"relation path {p.label()!r} has length {p.length} < 2"
                )
            if p.source != src or p.target != tgt:
                raise AlgebraParseError(
                    "relation mixes non-parallel paths "
                    f"({src}->{tgt} vs {p.source}->{p.target})"
                )
        # merge duplicate paths
        merged = {}
        order = []
        for c, p in clean:
            if p not in merged:
                merged[p] = Fraction(0)
                order.append(p)
            merged[p] += c
        self.terms = [(merged[p], p) for p in order if merged[p] != 0]
        if not self.terms:
            raise AlgebraParseError("relation is zero after collecting terms")
        self.source = src
        self.target = tgt

    def is_homogeneous(self):
        lengths = {p.length for _, p in self.terms}
        return len(lengths) == 1

    def min_length(self):
        return min(p.length for _, p in self.terms)

    def max_length(self):
        return max(p.length for _, p in self.terms)

    def __eq__(self, other):
        return isinstance(other, Relation) and self.terms == other.terms

    def __repr__(self):
        return " + ".join(f"{c}*{p.label()}" for c, p in self.terms)


class BoundQuiverAlgebra:
    """The algebra kQ/I given by a quiver and a list of admissible relations.

    Admissibility is not assumed at construction time; it is checked by
    :meth:`check_admissible`, and the path basis is built on demand once a
    nilpotency bound is certified.
    """

    def __init__(self, quiver: Quiver, relations, name="A"):
        self.quiver = quiver
        self.relations = list(relations)
        self.name = name
        self._admissibility = None
        self._basis = None

    @property
    def vertices(self):
        return self.quiver.vertices

    def vertex_index(self, v):
        return self.quiver.vertex_index(v)

    def check_admissible(self, l_max=12):
        from .basis import check_admissible

        if self._admissibility is None or (
            self._admissibility.status.value == "undecided"
            and self._admissibility.l_max_used < l_max
        ):
            self._admissibility = check_admissible(self, l_max)
        return self._admissibility

    def path_basis(self, l_max=12):
        from .basis import build_path_basis

        if self._basis is None:
            verdict = self.check_admissible(l_max)
            if verdict.status.value != "admissible":
                raise QuiverInvError(
                    f"algebra is not certified admissible: {verdict.status.value}"
                )
            self._basis = build_path_basis(self, verdict.bound)
        return self._basis

    @property
    def dimension(self):
        return self.path_basis().dimension

    def __eq__(self, other):
        return (
            isinstance(other, BoundQuiverAlgebra)
            and self.quiver == other.quiver
            and self.relations == other.relations
        )
