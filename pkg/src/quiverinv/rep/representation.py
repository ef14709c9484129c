"""Explicit representations of a bound quiver algebra over the rationals.

A representation assigns to each vertex a rational vector space (given by its
dimension) and to each arrow an exact matrix of shape d(head) x d(tail); it
is a point of the module variety when every relation evaluates to zero.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import AlgebraParseError, DimensionMismatchError, QuiverInvError
from ..exactalg import RatMatrix, column_space_basis, solve
from ..bound_quiver.quiver import BoundQuiverAlgebra, Path

QQ = Fraction


class Representation:
    def __init__(self, algebra: BoundQuiverAlgebra, dims, matrices=None, name=""):
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != len(algebra.vertices):
            raise DimensionMismatchError("dimension vector length != vertex count")
        if any(d < 0 for d in self.dims):
            raise DimensionMismatchError("negative dimension")
        self.name = name
        self.matrices = {}
        matrices = matrices or {}
        for a in algebra.quiver.arrows:
            rows = self.dims[algebra.vertex_index(a.head)]
            cols = self.dims[algebra.vertex_index(a.tail)]
            m = matrices.get(a.name)
            if m is None:
                m = RatMatrix.zeros(rows, cols)
            elif not isinstance(m, RatMatrix):
                m = RatMatrix(m) if m else RatMatrix.zeros(rows, cols)
            if m.shape != (rows, cols):
                raise DimensionMismatchError(
                    f"matrix for arrow {a.name!r} has shape {m.shape}, "
                    f"expected {(rows, cols)}"
                )
            self.matrices[a.name] = m
        extra = set(matrices) - {a.name for a in algebra.quiver.arrows}
        if extra:
            raise QuiverInvError(f"matrices given for unknown arrows {sorted(extra)}")

    # -- structure -------------------------------------------------------

    def dim(self, vertex):
        return self.dims[self.algebra.vertex_index(vertex)]

    @property
    def dimension_vector(self):
        return self.dims

    @property
    def total_dim(self):
        return sum(self.dims)

    def is_zero(self):
        return self.total_dim == 0

    def matrix(self, arrow_name):
        return self.matrices[arrow_name]

    def __eq__(self, other):
        return (
            isinstance(other, Representation)
            and self.algebra is other.algebra
            and self.dims == other.dims
            and self.matrices == other.matrices
        )

    def __repr__(self):
        return f"Representation(dims={self.dims})"

    # -- evaluation ------------------------------------------------------

    def evaluate_path(self, path: Path):
        """Matrix of the path action; the first arrow acts first."""
        src = self.dim(path.source)
        out = RatMatrix.identity(src)
        for name in path.arrows:
            out = self.matrices[name] * out
        return out

    def evaluate_relation(self, relation):
        src = self.dim(relation.source)
        tgt = self.dim(relation.target)
        total = RatMatrix.zeros(tgt, src)
        for coeff, path in relation.terms:
            total = total + self.evaluate_path(path).scale(coeff)
        return total

    def validate(self):
        """Check every relation vanishes; returns (ok, witness label or None)."""
        for rel in self.algebra.relations:
            if not self.evaluate_relation(rel).is_zero():
                return False, rel.terms[0][1].label()
        return True, None

    # -- constructions ---------------------------------------------------

    def direct_sum(self, other):
        if self.algebra is not other.algebra:
            raise QuiverInvError("direct sum of representations over different algebras")
        dims = tuple(a + b for a, b in zip(self.dims, other.dims))
        mats = {}
        for a in self.algebra.quiver.arrows:
            m1 = self.matrices[a.name]
            m2 = other.matrices[a.name]
            rows = m1.rows + m2.rows
            cols = m1.cols + m2.cols
            block = RatMatrix.zeros(rows, cols)
            for i in range(m1.rows):
                for j in range(m1.cols):
                    block.data[i][j] = m1.data[i][j]
            for i in range(m2.rows):
                for j in range(m2.cols):
                    block.data[m1.rows + i][m1.cols + j] = m2.data[i][j]
            mats[a.name] = block
        return Representation(self.algebra, dims, mats)

    def conjugate(self, g):
        """Base change by invertible vertex matrices: M(a) -> g_ha M(a) g_ta^-1."""
        mats = {}
        inverses = {v: g[v].inverse() for v in self.algebra.vertices}
        for a in self.algebra.quiver.arrows:
            mats[a.name] = g[a.head] * self.matrices[a.name] * inverses[a.tail]
        return Representation(self.algebra, self.dims, mats)

    def sub_representation(self, bases):
        """Restrict to a subrepresentation spanned by given column bases.

        ``bases``: per-vertex RatMatrix whose columns span the subspace (full
        column rank).  Raises if the span is not arrow-stable.  Returns the
        restricted representation and the per-vertex inclusion matrices.
        """
        alg = self.algebra
        incl = []
        for idx, v in enumerate(alg.vertices):
            b = bases[idx]
            if b.rows != self.dims[idx]:
                raise DimensionMismatchError("basis row count != vertex dimension")
            if b.cols and b.rank() != b.cols:
                raise QuiverInvError("subspace basis is not independent")
            incl.append(b)
        mats = {}
        for a in alg.quiver.arrows:
            bt = incl[alg.vertex_index(a.tail)]
            bh = incl[alg.vertex_index(a.head)]
            image = self.matrices[a.name] * bt
            out = RatMatrix.zeros(bh.cols, bt.cols)
            for j in range(image.cols):
                x = solve(bh, image.col(j))
                if x is None:
                    raise QuiverInvError(
                        f"subspaces are not stable under arrow {a.name!r}"
                    )
                for i in range(bh.cols):
                    out.data[i][j] = x[i]
            mats[a.name] = out
        dims = tuple(b.cols for b in incl)
        return Representation(alg, dims, mats), incl

    def quotient_representation(self, bases):
        """Quotient by the subrepresentation spanned by given column bases.

        Returns the quotient representation and the per-vertex projection
        matrices (coordinates on a chosen complement).
        """
        alg = self.algebra
        projections = []
        for idx in range(len(alg.vertices)):
            b = bases[idx]
            d = self.dims[idx]
            comp_cols = _complement_columns(b, d)
            full = b
            for c in comp_cols:
                e = RatMatrix.zeros(d, 1)
                e.data[c][0] = QQ(1)
                full = full.hstack(e) if full.cols else e
            if d:
                inv = full.inverse()
                proj = inv.submatrix(range(b.cols, d), range(d))
            else:
                proj = RatMatrix.zeros(0, 0)
            projections.append(proj)
        mats = {}
        for a in alg.quiver.arrows:
            ti = alg.vertex_index(a.tail)
            hi = alg.vertex_index(a.head)
            d_t = self.dims[ti]
            lift = _complement_inclusion(bases[ti], d_t)
            mats[a.name] = projections[hi] * self.matrices[a.name] * lift
        dims = tuple(
            self.dims[i] - bases[i].cols for i in range(len(alg.vertices))
        )
        return Representation(alg, dims, mats), projections


def _complement_columns(b: RatMatrix, dim):
    """Standard basis indices completing col(b) to the full space."""
    cols = [b.col(j) for j in range(b.cols)]
    chosen = []
    rank = RatMatrix(cols).rank() if cols else 0
    for c in range(dim):
        if rank == dim:
            break
        e = [QQ(0)] * dim
        e[c] = QQ(1)
        trial = cols + [e]
        r = RatMatrix(trial).rank()
        if r > rank:
            cols = trial
            rank = r
            chosen.append(c)
    return chosen


def _complement_inclusion(b: RatMatrix, dim):
    comp = _complement_columns(b, dim)
    out = RatMatrix.zeros(dim, len(comp))
    for j, c in enumerate(comp):
        out.data[c][j] = QQ(1)
    return out


def zero_representation(alg: BoundQuiverAlgebra, dims=None):
    dims = dims if dims is not None else [0] * len(alg.vertices)
    return Representation(alg, dims)


def simple(alg: BoundQuiverAlgebra, vertex):
    dims = [0] * len(alg.vertices)
    dims[alg.vertex_index(vertex)] = 1
    return Representation(alg, dims, name=f"S_{vertex}")


class ProjectiveModule:
    """Direct sum of indecomposable projectives with a path-indexed basis.

    ``summands`` lists the generating vertices (with repetition).  At each
    vertex w the chosen basis is the list of pairs (summand index, path from
    the summand's vertex to w), ordered by summand then by the path basis
    order of the algebra.
    """

    def __init__(self, alg: BoundQuiverAlgebra, summands):
        self.algebra = alg
        self.summands = list(summands)
        pb = alg.path_basis()
        layout = {v: [] for v in alg.vertices}
        for s_idx, gen_vertex in enumerate(self.summands):
            for p in pb.basis:
                if p.source == gen_vertex:
                    layout[p.target].append((s_idx, p))
        self.layout = layout
        self.position = {
            v: {key: i for i, key in enumerate(layout[v])} for v in alg.vertices
        }
        dims = [len(layout[v]) for v in alg.vertices]
        mats = {}
        for a in alg.quiver.arrows:
            rows = len(layout[a.head])
            cols = len(layout[a.tail])
            m = RatMatrix.zeros(rows, cols)
            for j, (s_idx, p) in enumerate(layout[a.tail]):
                prod = Path(p.source, a.head, p.arrows + (a.name,))
                coords = pb.reduce_path(prod)
                for basis_idx, coeff in coords.items():
                    q = pb.basis[basis_idx]
                    i = self.position[a.head][(s_idx, q)]
                    m.data[i][j] = coeff
            mats[a.name] = m
        self.rep = Representation(alg, dims, mats, name="P(" + "+".join(self.summands) + ")")

    def generator_position(self, s_idx):
        """(vertex, row index) of the generator e_v of summand ``s_idx``."""
        v = self.summands[s_idx]
        pos = self.position[v][(s_idx, Path.trivial(v))]
        return v, pos


def projective(alg: BoundQuiverAlgebra, vertex):
    return ProjectiveModule(alg, [vertex]).rep


def free_module(alg: BoundQuiverAlgebra):
    """The algebra as a module over itself: the sum of all indecomposable projectives."""
    return ProjectiveModule(alg, list(alg.vertices)).rep


# -- text format ---------------------------------------------------------


def print_representation(rep: Representation, algebra_name=None) -> str:
    lines = [f"algebra {algebra_name or rep.algebra.name}"]
    lines.append("dims " + " ".join(str(d) for d in rep.dims))
    for a in rep.algebra.quiver.arrows:
        m = rep.matrices[a.name]
        lines.append(f"matrix {a.name} rows {m.rows} cols {m.cols}")
        for i in range(m.rows):
            lines.append(" ".join(_rat_str(x) for x in m.data[i]))
    return "\n".join(lines) + "\n"


def _rat_str(x: Fraction):
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_representation(text, alg: BoundQuiverAlgebra) -> Representation:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [(i + 1, ln) for i, ln in enumerate(lines) if ln]
    pos = 0

    def take():
        nonlocal pos
        if pos >= len(lines):
            raise AlgebraParseError("unexpected end of representation file")
        item = lines[pos]
        pos += 1
        return item

    lineno, header = take()
    if not header.startswith("algebra"):
        raise AlgebraParseError("expected 'algebra <name>' header", lineno, 1)

    dims = None
    matrices = {}
    shapes = {}
    while pos < len(lines):
        lineno, ln = take()
        parts = ln.split()
        if parts[0] == "dims":
            dims = [int(x) for x in parts[1:]]
            continue
        if parts[0] != "matrix":
            raise AlgebraParseError(f"expected 'matrix' block, got {ln!r}", lineno, 1)
        if len(parts) != 6 or parts[2] != "rows" or parts[4] != "cols":
            raise AlgebraParseError(
                "matrix header must read 'matrix <arrow> rows r cols c'", lineno, 1
            )
        name = parts[1]
        if name not in {a.name for a in alg.quiver.arrows}:
            raise AlgebraParseError(f"unknown arrow {name!r}", lineno, 1)
        rows, cols = int(parts[3]), int(parts[5])
        data = []
        for _ in range(rows):
            rl, row_line = take()
            entries = row_line.split()
            if len(entries) != cols:
                raise AlgebraParseError(
                    f"expected {cols} entries, found {len(entries)}", rl, 1
                )
            data.append([Fraction(e) for e in entries])
        matrices[name] = RatMatrix(data) if rows and cols else RatMatrix.zeros(rows, cols)
        shapes[name] = (rows, cols)

    if dims is None:
        dims = _infer_dims(alg, shapes)
    return Representation(alg, dims, matrices)


def _infer_dims(alg, shapes):
    dims = [None] * len(alg.vertices)
    for a in alg.quiver.arrows:
        if a.name not in shapes:
            continue
        rows, cols = shapes[a.name]
        for v, val in ((a.head, rows), (a.tail, cols)):
            idx = alg.vertex_index(v)
            if dims[idx] is None:
                dims[idx] = val
            elif dims[idx] != val:
                raise AlgebraParseError(
                    f"inconsistent dimensions at vertex {v}: {dims[idx]} vs {val}"
                )
    if any(d is None for d in dims):
        missing = [v for v, d in zip(alg.vertices, dims) if d is None]
        raise AlgebraParseError(
            f"cannot infer dimensions for vertices {missing}; add a 'dims' line"
        )
    return dims
