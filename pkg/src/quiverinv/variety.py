"""Symbolic coordinates on the module variety mod(Q, d).

The affine space has one variable per matrix entry per arrow; relation
entries become polynomials in these variables, shared by the stability
Jacobian and the semi-invariant weight-space computations.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import QuiverInvError
from .exactalg import Polynomial

QQ = Fraction


def arrow_variables(alg, d):
    """Variable list and (arrow, row, col) -> index map for mod(Q, d)."""
    names = []
    index = {}
    for a in alg.quiver.arrows:
        rows = d[alg.vertex_index(a.head)]
        cols = d[alg.vertex_index(a.tail)]
        for r in range(rows):
            for c in range(cols):
                index[(a.name, r, c)] = len(names)
                names.append(f"x_{a.name}_{r}_{c}")
    return tuple(names), index


def generic_arrow_matrix(alg, d, arrow_name, variables, index):
    a = alg.quiver.arrow(arrow_name)
    rows = d[alg.vertex_index(a.head)]
    cols = d[alg.vertex_index(a.tail)]
    out = []
    for r in range(rows):
        row = []
        for c in range(cols):
            exp = [0] * len(variables)
            exp[index[(arrow_name, r, c)]] = 1
            row.append(Polynomial(variables, {tuple(exp): QQ(1)}))
        out.append(row)
    return out


def _poly_mat_mul(a, b, variables):
    if not a or not b:
        return []
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    if a and len(a[0]) != inner:
        raise QuiverInvError("polynomial matrix shapes do not compose")
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = Polynomial.zero(variables)
            for k in range(inner):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def path_matrix(alg, d, path, variables, index):
    """Polynomial matrix of a path action (first arrow acts first)."""
    src_dim = d[alg.vertex_index(path.source)]
    current = [
        [Polynomial.constant(variables, 1 if i == j else 0) for j in range(src_dim)]
        for i in range(src_dim)
    ]
    for name in path.arrows:
        current = _poly_mat_mul(
            generic_arrow_matrix(alg, d, name, variables, index), current, variables
        )
    return current


def relation_entry_polynomials(alg, d, variables=None, index=None):
    """All matrix entries of all relations, as polynomials on mod(Q, d)."""
    if variables is None or index is None:
        variables, index = arrow_variables(alg, d)
    out = []
    for rel in alg.relations:
        rows = d[alg.vertex_index(rel.target)]
        cols = d[alg.vertex_index(rel.source)]
        total = [
            [Polynomial.zero(variables) for _ in range(cols)] for _ in range(rows)
        ]
        for coeff, path in rel.terms:
            pm = path_matrix(alg, d, path, variables, index)
            for i in range(rows):
                for j in range(cols):
                    total[i][j] = total[i][j] + pm[i][j].scale(coeff)
        for i in range(rows):
            for j in range(cols):
                if not total[i][j].is_zero():
                    out.append(total[i][j])
    return variables, index, out


def point_of(rep):
    """Flattened coordinates of an explicit representation in mod(Q, d)."""
    alg = rep.algebra
    variables, index = arrow_variables(alg, rep.dims)
    values = [QQ(0)] * len(variables)
    for a in alg.quiver.arrows:
        m = rep.matrices[a.name]
        for r in range(m.rows):
            for c in range(m.cols):
                values[index[(a.name, r, c)]] = m.data[r][c]
    return variables, values
