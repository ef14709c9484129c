"""Euler/Ringel and Tits forms on the Grothendieck group, and weight building.

The Euler matrix C has entries C[i][j] = sum_l (-1)^l dim Ext^l(S_i, S_j),
so <d, e> = d^T C e.  Global dimension is certified only up to the caller's
bound; past it the computation errors instead of assuming finiteness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import QuiverInvError, ResolutionNotTerminatedError
from .exactalg import RatMatrix
from .rep import ext_dim, projective_resolution, simple

QQ = Fraction


def theta_value(theta, d):
    """The pairing theta(d) = sum_i theta(i) d(i)."""
    if len(theta) != len(d):
        raise QuiverInvError("weight and dimension vector have different lengths")
    return sum(int(t) * int(x) for t, x in zip(theta, d))


@dataclass
class EulerData:
    algebra: object
    l_max: int
    ext_table: dict        # (l, i, j) -> dim Ext^l(S_i, S_j)
    matrix: list           # integer rows of C
    pd_simples: list       # projective dimension of each simple
    notes: list = field(default_factory=list)

    def pairing(self, d, e):
        n = len(self.matrix)
        if len(d) != n or len(e) != n:
            raise QuiverInvError("vector length does not match vertex count")
        return sum(
            int(d[i]) * self.matrix[i][j] * int(e[j])
            for i in range(n)
            for j in range(n)
        )

    def ext(self, l, i, j):
        return self.ext_table.get((l, i, j), 0)


def euler_data(alg, l_max=6) -> EulerData:
    """Ext table of the simples and the Euler matrix, certified up to l_max."""
    vertices = alg.vertices
    n = len(vertices)
    simples = [simple(alg, v) for v in vertices]
    resolutions = []
    pds = []
    for i, s in enumerate(simples):
        res = projective_resolution(s, l_max + 1)
        if res.truncated:
            raise ResolutionNotTerminatedError(
                f"projective resolution of the simple at vertex {vertices[i]} "
                f"did not terminate by l_max={l_max}"
            )
        resolutions.append(res)
        pds.append(res.pd)

    table = {}
    for i in range(n):
        for j in range(n):
            for l in range(pds[i] + 1):
                d = ext_dim(simples[i], simples[j], l, resolution=resolutions[i])
                if d:
                    table[(l, i, j)] = d

    matrix = [
        [
            sum(
                (-1) ** l * table.get((l, i, j), 0)
                for l in range(pds[i] + 1)
            )
            for j in range(n)
        ]
        for i in range(n)
    ]
    return EulerData(alg, l_max, table, matrix, pds)


def _ext12_tables(alg):
    """Ext^1 and Ext^2 dimension tables of the simples (resolutions to step 3)."""
    vertices = alg.vertices
    n = len(vertices)
    simples = [simple(alg, v) for v in vertices]
    ext1 = [[0] * n for _ in range(n)]
    ext2 = [[0] * n for _ in range(n)]
    for i in range(n):
        res = projective_resolution(simples[i], 3)
        for j in range(n):
            ext1[i][j] = ext_dim(simples[i], simples[j], 1, resolution=res)
            ext2[i][j] = ext_dim(simples[i], simples[j], 2, resolution=res)
    return ext1, ext2


def tits_form(alg, d) -> int:
    """q_A(d) from the Ext^1/Ext^2 dimensions between simples.

    For triangular algebras the result is cross-checked against the
    arrow-count/relation-count formula; a mismatch means the supplied
    relations are not a minimal generating set.
    """
    n = len(alg.vertices)
    if len(d) != n:
        raise QuiverInvError("dimension vector length does not match vertex count")
    d = [int(x) for x in d]
    ext1, ext2 = _ext12_tables(alg)
    q = sum(x * x for x in d)
    q -= sum(ext1[i][j] * d[i] * d[j] for i in range(n) for j in range(n))
    q += sum(ext2[i][j] * d[i] * d[j] for i in range(n) for j in range(n))
    if not alg.quiver.has_directed_cycle():
        q_formula = tits_form_triangular_formula(alg, d)
        if q_formula != q:
            raise QuiverInvError(
                f"Tits form cross-check failed ({q} vs {q_formula}); "
                "the relation list is probably not a minimal generating set"
            )
    return q


def relation_count_table(alg):
    """r(i, j): independent relations from i to j among the given generators.

    Linear redundancy between parallel relations is removed; ideal-theoretic
    redundancy is the caller's responsibility (the table matches Ext^2 only
    for a minimal generating set).
    """
    n = len(alg.vertices)
    groups = {}
    for rel in alg.relations:
        groups.setdefault((rel.source, rel.target), []).append(rel)
    table = [[0] * n for _ in range(n)]
    for (src, tgt), rels in groups.items():
        paths = sorted({p for r in rels for _, p in r.terms}, key=lambda p: p.arrows)
        index = {p: k for k, p in enumerate(paths)}
        rows = []
        for r in rels:
            row = [QQ(0)] * len(paths)
            for c, p in r.terms:
                row[index[p]] = c
            rows.append(row)
        rank = RatMatrix(rows).rank()
        table[alg.vertex_index(src)][alg.vertex_index(tgt)] = rank
    return table


def tits_form_triangular_formula(alg, d) -> int:
    """The displayed arrow/relation-count expression for triangular algebras."""
    if alg.quiver.has_directed_cycle():
        raise QuiverInvError("formula applies to triangular algebras only")
    n = len(alg.vertices)
    d = [int(x) for x in d]
    q = sum(x * x for x in d)
    for a in alg.quiver.arrows:
        q -= d[alg.vertex_index(a.tail)] * d[alg.vertex_index(a.head)]
    r = relation_count_table(alg)
    q += sum(r[i][j] * d[i] * d[j] for i in range(n) for j in range(n))
    return q


def classify_q(alg, d) -> str:
    """Label by the Tits form value: real, isotropic, negative, or other.

    Whether d is an actual root (the dimension vector of an indecomposable)
    is a separate, sampling-based question.
    """
    q = tits_form(alg, d)
    if q == 1:
        return "real"
    if q == 0:
        return "isotropic"
    if q < 0:
        return "negative"
    return "other"


def weight_from_dimvec(alg, d0, kind, euler=None):
    """Weight vectors <d0, .>, <., d0>, or their difference, on the vertex basis."""
    if kind not in ("left", "right", "difference"):
        raise QuiverInvError(f"unknown weight kind {kind!r}")
    ed = euler or euler_data(alg)
    n = len(ed.matrix)
    if len(d0) != n:
        raise QuiverInvError("dimension vector length does not match vertex count")
    d0 = [int(x) for x in d0]
    left = [sum(d0[i] * ed.matrix[i][j] for i in range(n)) for j in range(n)]
    right = [sum(ed.matrix[j][i] * d0[i] for i in range(n)) for j in range(n)]
    if kind == "left":
        return tuple(left)
    if kind == "right":
        return tuple(right)
    return tuple(l - r for l, r in zip(left, right))
