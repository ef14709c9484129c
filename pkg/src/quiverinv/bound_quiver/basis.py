"""Admissibility checking and the path basis of a bound quiver algebra.

Degree-by-degree linear algebra replaces noncommutative Groebner bases: once
R^L lies in the ideal, every computation happens in the finite-dimensional
truncation spanned by paths of length below L.

For relations whose paths all have one common length the ideal is graded and
the admissibility test is exact.  For mixed-length relations membership of
long paths in the ideal is certified from below (products up to a working
degree); failure to certify is reported as ``undecided``, never as a yes.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import QuiverInvError
from ..exactalg import RatMatrix
from .quiver import BoundQuiverAlgebra, Path, Quiver

QQ = Fraction

_GENERATOR_GUARD = 40000


class Admissibility(enum.Enum):
    ADMISSIBLE = "admissible"
    NOT_ADMISSIBLE = "not admissible"
    UNDECIDED = "undecided"


@dataclass
class AdmissibilityVerdict:
    status: Admissibility
    bound: int | None
    l_max_used: int
    notes: list = field(default_factory=list)


def paths_of_length(quiver: Quiver, length):
    """All paths of exactly the given length, in a deterministic order."""
    if length == 0:
        return [Path.trivial(v) for v in quiver.vertices]
    current = [Path(a.tail, a.head, (a.name,)) for a in quiver.arrows]
    for _ in range(length - 1):
        nxt = []
        for p in current:
            for a in quiver.arrows:
                if a.tail == p.target:
                    nxt.append(Path(p.source, a.head, p.arrows + (a.name,)))
        current = nxt
        if not current:
            break
    return sorted(current, key=lambda p: (quiver.vertex_index(p.source), p.arrows))


def paths_up_to(quiver: Quiver, max_length):
    """Dict length -> path list for all lengths 0..max_length."""
    return {l: paths_of_length(quiver, l) for l in range(max_length + 1)}


def _ideal_products(alg, total_cap, truncate_at=None):
    """Vectors (dict path->coeff) spanning products p*r*q of bounded degree.

    ``total_cap`` bounds the degree of every term kept; ``truncate_at`` drops
    terms of length >= that bound instead of rejecting the product (used when
    R^L is already known to lie in the ideal).
    """
    quiver = alg.quiver
    paths = paths_up_to(quiver, total_cap)
    into = {v: [] for v in quiver.vertices}
    out_of = {v: [] for v in quiver.vertices}
    for l in range(total_cap + 1):
        for p in paths[l]:
            into[p.target].append(p)
            out_of[p.source].append(p)

    vectors = []
    count = 0
    for rel in alg.relations:
        min_len = rel.min_length()
        max_len = rel.max_length()
        for p in into[rel.source]:
            if p.length + min_len > total_cap:
                continue
            for q in out_of[rel.target]:
                if p.length + min_len + q.length > total_cap:
                    continue
                if truncate_at is None and p.length + max_len + q.length > total_cap:
                    # dropping terms would enlarge the span; reject the product
                    continue
                vec = {}
                for coeff, mid in rel.terms:
                    full_len = p.length + mid.length + q.length
                    if truncate_at is not None and full_len >= truncate_at:
                        continue
                    composed = p.compose(mid).compose(q)
                    vec[composed] = vec.get(composed, QQ(0)) + coeff
                vec = {k: v for k, v in vec.items() if v != 0}
                if vec:
                    vectors.append(vec)
                    count += 1
                    if count > _GENERATOR_GUARD:
                        raise _GuardTripped
    return vectors


class _GuardTripped(Exception):
    pass


def _span_contains_all(vectors, targets, coordinates):
    """Whether every target vector lies in the span of ``vectors``."""
    index = {p: i for i, p in enumerate(coordinates)}
    rows = []
    for vec in vectors:
        row = [QQ(0)] * len(coordinates)
        for p, c in vec.items():
            row[index[p]] = c
        rows.append(row)
    if not rows:
        return all(not t for t in targets)
    m = RatMatrix(rows)
    base_rank = m.rank()
    for t in targets:
        row = [QQ(0)] * len(coordinates)
        for p, c in t.items():
            row[index[p]] = c
        if RatMatrix(rows + [row]).rank() != base_rank:
            return False
    return True


def check_admissible(alg: BoundQuiverAlgebra, l_max=12) -> AdmissibilityVerdict:
    """Find the least L <= l_max with R^L contained in the relation ideal."""
    if l_max < 2:
        raise QuiverInvError("l_max must be at least 2")
    quiver = alg.quiver
    homogeneous = all(rel.is_homogeneous() for rel in alg.relations)
    notes = []

    for bound in range(2, l_max + 1):
        long_paths = paths_of_length(quiver, bound)
        if not long_paths:
            return AdmissibilityVerdict(Admissibility.ADMISSIBLE, bound, l_max, notes)
        if homogeneous:
            gens = [
                vec
                for vec in _gen_homogeneous_degree(alg, bound)
            ]
            coords = long_paths
            targets = [{p: QQ(1)} for p in long_paths]
            if gens and _span_contains_all(gens, targets, coords):
                return AdmissibilityVerdict(
                    Admissibility.ADMISSIBLE, bound, l_max, notes
                )
        else:
            cap = min(l_max, bound) + max(r.max_length() for r in alg.relations)
            try:
                gens = _ideal_products(alg, cap)
            except _GuardTripped:
                notes.append("generator guard tripped; widen caps to retry")
                return AdmissibilityVerdict(Admissibility.UNDECIDED, None, l_max, notes)
            coords = [
                p for l in range(cap + 1) for p in paths_of_length(quiver, l)
            ]
            targets = [{p: QQ(1)} for p in long_paths]
            if _span_contains_all(gens, targets, coords):
                return AdmissibilityVerdict(
                    Admissibility.ADMISSIBLE, bound, l_max, notes
                )

    if not alg.relations and quiver.has_directed_cycle():
        notes.append("path algebra of a cyclic quiver is infinite-dimensional")
        return AdmissibilityVerdict(Admissibility.NOT_ADMISSIBLE, None, l_max, notes)
    notes.append(f"no nilpotency bound found up to {l_max}")
    return AdmissibilityVerdict(Admissibility.UNDECIDED, None, l_max, notes)


def _gen_homogeneous_degree(alg, degree):
    """Degree-``degree`` piece of the graded ideal, for homogeneous relations."""
    quiver = alg.quiver
    vectors = []
    for rel in alg.relations:
        rel_len = rel.min_length()
        rest = degree - rel_len
        if rest < 0:
            continue
        for left_len in range(rest + 1):
            right_len = rest - left_len
            for p in paths_of_length(quiver, left_len):
                if p.target != rel.source:
                    continue
                for q in paths_of_length(quiver, right_len):
                    if q.source != rel.target:
                        continue
                    vec = {}
                    for coeff, mid in rel.terms:
                        composed = p.compose(mid).compose(q)
                        vec[composed] = vec.get(composed, QQ(0)) + coeff
                    vec = {k: v for k, v in vec.items() if v != 0}
                    if vec:
                        vectors.append(vec)
    return vectors


class PathBasis:
    """Ordered basis of A = kQ/I by surviving paths, with multiplication table.

    ``basis`` lists paths of length < L in (length, lexicographic) order that
    remain independent modulo the ideal; ``reduce`` rewrites any path vector
    in terms of them.
    """

    def __init__(self, alg, bound, basis, reducer_rows, coord_index, coord_list):
        self.algebra = alg
        self.bound = bound
        self.basis = basis
        self.index = {p: i for i, p in enumerate(basis)}
        self._rows = reducer_rows  # pivot path -> dict(path -> coeff) tail
        self._coord_index = coord_index
        self._coord_list = coord_list
        self.dimension = len(basis)
        self.trivial_index = {
            v: self.index[Path.trivial(v)] for v in alg.quiver.vertices
        }
        self._table = None

    def reduce_path_vector(self, vec):
        """Reduce dict path->coeff to coordinates over the basis."""
        work = dict(vec)
        # eliminate pivot paths, longest first
        for pivot in self._pivot_order:
            c = work.get(pivot)
            if not c:
                continue
            del work[pivot]
            for p, t in self._rows[pivot].items():
                work[p] = work.get(p, QQ(0)) - c * t
                if work[p] == 0:
                    del work[p]
        out = {}
        for p, c in work.items():
            if c == 0:
                continue
            if p not in self.index:
                raise QuiverInvError(f"path {p.label()} escaped reduction")
            out[self.index[p]] = c
        return out

    @property
    def _pivot_order(self):
        return self._pivots

    def set_pivots(self, pivots):
        self._pivots = pivots

    def reduce_path(self, path: Path):
        """Coordinates of a single path's residue, as dict index->coeff."""
        if path.length >= self.bound:
            return {}
        return self.reduce_path_vector({path: QQ(1)})

    def multiply(self, i, j):
        """Structure constants of basis[i] * basis[j] as dict index->coeff."""
        table = self.multiplication_table()
        return table.get((i, j), {})

    def multiplication_table(self):
        if self._table is None:
            table = {}
            for i, p in enumerate(self.basis):
                for j, q in enumerate(self.basis):
                    if p.target != q.source:
                        continue
                    prod = p.compose(q)
                    coords = self.reduce_path(prod)
                    if coords:
                        table[(i, j)] = coords
            self._table = table
        return self._table

    def block_dimension(self, source, target):
        """dim of e_target * A * e_source style block: paths source -> target."""
        return sum(
            1 for p in self.basis if p.source == source and p.target == target
        )


def build_path_basis(alg: BoundQuiverAlgebra, bound) -> PathBasis:
    quiver = alg.quiver
    coord_list = [
        p for l in range(bound) for p in paths_of_length(quiver, l)
    ]
    coord_index = {p: i for i, p in enumerate(coord_list)}
    # reduction order: longest paths first so pivots sit on high degrees
    red_order = sorted(
        coord_list, key=lambda p: (-p.length, p.arrows)
    )

    gens = _ideal_products(alg, bound - 1, truncate_at=bound)
    rows = _full_reduce(gens)

    pivot_paths = [pivot for pivot, _ in rows]
    pivot_set = set(pivot_paths)
    basis = [p for p in coord_list if p not in pivot_set]
    pb = PathBasis(
        alg,
        bound,
        basis,
        {pivot: tail for pivot, tail in rows},
        coord_index,
        coord_list,
    )
    pb.set_pivots(sorted(pivot_paths, key=_red_key))
    return pb


def _red_key(p: Path):
    return (-p.length, p.arrows)


def _full_reduce(gens):
    """Reduced echelon rows (pivot path, tail dict) over path coordinates."""
    rows = []
    for vec in gens:
        work = dict(vec)
        changed = True
        while changed:
            changed = False
            for pivot, tail in rows:
                c = work.get(pivot)
                if c:
                    del work[pivot]
                    for p, t in tail.items():
                        work[p] = work.get(p, QQ(0)) - c * t
                        if work[p] == 0:
                            del work[p]
                    changed = True
        work = {p: c for p, c in work.items() if c != 0}
        if not work:
            continue
        pivot = min(work, key=_red_key)
        pc = work.pop(pivot)
        tail = {p: c / pc for p, c in work.items()}
        # eliminate the new pivot from existing tails
        for k in range(len(rows)):
            pv, tl = rows[k]
            c = tl.get(pivot)
            if c:
                del tl[pivot]
                for p, t in tail.items():
                    tl[p] = tl.get(p, QQ(0)) - c * t
                    if tl[p] == 0:
                        del tl[p]
        rows.append((pivot, tail))
    return rows
