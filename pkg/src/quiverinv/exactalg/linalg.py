"""Exact dense linear algebra over the rationals.

Everything here works with ``fractions.Fraction`` entries; no floating point
is used anywhere.  Matrices are small (desk scale), so plain Gauss-Jordan
elimination is the right tool.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import DimensionMismatchError

QQ = Fraction


def _rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int) or isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


class RatMatrix:
    """Matrix with arbitrary-precision rational entries.

    Entries are normalized by ``Fraction`` (lowest terms, positive
    denominator).  Instances are treated as immutable: all operations
    return new matrices.
    """

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data):
        data = [[_rat(x) for x in row] for row in data]
        self.rows = len(data)
        self.cols = len(data[0]) if data else 0
        for row in data:
            if len(row) != self.cols:
                raise DimensionMismatchError("ragged rows in matrix data")
        self.data = data

    @classmethod
    def zeros(cls, rows, cols):
        if rows < 0 or cols < 0:
            raise DimensionMismatchError("matrix dimensions must be nonnegative")
        m = cls.__new__(cls)
        m.rows, m.cols = rows, cols
        m.data = [[QQ(0)] * cols for _ in range(rows)]
        return m

    @classmethod
    def identity(cls, n):
        m = cls.zeros(n, n)
        for i in range(n):
            m.data[i][i] = QQ(1)
        return m

    @classmethod
    def column(cls, entries):
        return cls([[e] for e in entries])

    @classmethod
    def from_columns(cls, columns, rows=None):
        """Assemble a matrix from a list of column vectors (lists)."""
        if not columns:
            return cls.zeros(rows if rows is not None else 0, 0)
        nr = len(columns[0])
        for c in columns:
            if len(c) != nr:
                raise DimensionMismatchError("columns of unequal length")
        return cls([[_rat(columns[j][i]) for j in range(len(columns))] for i in range(nr)])

    # -- basic accessors -------------------------------------------------

    def __getitem__(self, key):
        i, j = key
        return self.data[i][j]

    def row(self, i):
        return list(self.data[i])

    def col(self, j):
        return [self.data[i][j] for i in range(self.rows)]

    def columns(self):
        return [self.col(j) for j in range(self.cols)]

    def copy(self):
        return RatMatrix([row[:] for row in self.data])

    @property
    def shape(self):
        return (self.rows, self.cols)

    def is_zero(self):
        return all(x == 0 for row in self.data for x in row)

    def is_square(self):
        return self.rows == self.cols

    def __eq__(self, other):
        return (
            isinstance(other, RatMatrix)
            and self.shape == other.shape
            and self.data == other.data
        )

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.data)
        return f"RatMatrix[{self.rows}x{self.cols}: {body}]"

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        if self.shape != other.shape:
            raise DimensionMismatchError(f"cannot add {self.shape} and {other.shape}")
        return RatMatrix(
            [[self.data[i][j] + other.data[i][j] for j in range(self.cols)] for i in range(self.rows)]
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return RatMatrix([[-x for x in row] for row in self.data])

    def __mul__(self, other):
        if isinstance(other, RatMatrix):
            if self.cols != other.rows:
                raise DimensionMismatchError(
                    f"cannot multiply {self.shape} by {other.shape}"
                )
            out = RatMatrix.zeros(self.rows, other.cols)
            for i in range(self.rows):
                ai = self.data[i]
                oi = out.data[i]
                for k in range(self.cols):
                    a = ai[k]
                    if a == 0:
                        continue
                    bk = other.data[k]
                    for j in range(other.cols):
                        if bk[j] != 0:
                            oi[j] += a * bk[j]
            return out
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        c = _rat(c)
        return RatMatrix([[c * x for x in row] for row in self.data])

    def transpose(self):
        return RatMatrix([[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def trace(self):
        if not self.is_square():
            raise DimensionMismatchError("trace of a non-square matrix")
        return sum((self.data[i][i] for i in range(self.rows)), QQ(0))

    def apply(self, vec):
        """Matrix times column vector (given and returned as a list)."""
        if len(vec) != self.cols:
            raise DimensionMismatchError("vector length does not match column count")
        return [
            sum((self.data[i][j] * _rat(vec[j]) for j in range(self.cols)), QQ(0))
            for i in range(self.rows)
        ]

    def hstack(self, other):
        if self.rows != other.rows:
            raise DimensionMismatchError("hstack needs equal row counts")
        return RatMatrix([self.data[i] + other.data[i] for i in range(self.rows)])

    def vstack(self, other):
        if self.cols != other.cols:
            raise DimensionMismatchError("vstack needs equal column counts")
        return RatMatrix([row[:] for row in self.data] + [row[:] for row in other.data])

    def submatrix(self, row_idx, col_idx):
        row_idx = list(row_idx)
        col_idx = list(col_idx)
        if not row_idx or not col_idx:
            return RatMatrix.zeros(len(row_idx), len(col_idx))
        return RatMatrix([[self.data[i][j] for j in col_idx] for i in row_idx])

    # -- elimination -----------------------------------------------------

    def rref(self):
        """Reduced row-echelon form.

        Returns an ``RrefResult`` with the reduced matrix, the rank and the
        pivot column indices.  The row space is preserved.
        """
        m = [row[:] for row in self.data]
        rows, cols = self.rows, self.cols
        pivots = []
        r = 0
        for c in range(cols):
            pivot_row = None
            for i in range(r, rows):
                if m[i][c] != 0:
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            m[r], m[pivot_row] = m[pivot_row], m[r]
            pv = m[r][c]
            if pv != 1:
                m[r] = [x / pv for x in m[r]]
            for i in range(rows):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == rows:
                break
        return RrefResult(RatMatrix(m), r, pivots)

    def rank(self):
        return self.rref().rank

    def kernel_basis(self):
        """Basis of the right kernel, as a list of column vectors (lists)."""
        red = self.rref()
        pivots = red.pivots
        pivot_set = set(pivots)
        free = [c for c in range(self.cols) if c not in pivot_set]
        basis = []
        for f in free:
            v = [QQ(0)] * self.cols
            v[f] = QQ(1)
            for r, p in enumerate(pivots):
                v[p] = -red.matrix.data[r][f]
            basis.append(v)
        return basis

    def inverse(self):
        if not self.is_square():
            raise DimensionMismatchError("inverse of a non-square matrix")
        aug = self.hstack(RatMatrix.identity(self.rows))
        red = aug.rref()
        if red.rank < self.rows:
            raise ZeroDivisionError("matrix is singular")
        return red.matrix.submatrix(range(self.rows), range(self.rows, 2 * self.rows))

    def is_invertible(self):
        return self.is_square() and self.rank() == self.rows

    def det(self):
        if not self.is_square():
            raise DimensionMismatchError("determinant of a non-square matrix")
        m = [row[:] for row in self.data]
        n = self.rows
        det = QQ(1)
        for c in range(n):
            pivot_row = None
            for i in range(c, n):
                if m[i][c] != 0:
                    pivot_row = i
                    break
            if pivot_row is None:
                return QQ(0)
            if pivot_row != c:
                m[c], m[pivot_row] = m[pivot_row], m[c]
                det = -det
            det *= m[c][c]
            inv = 1 / m[c][c]
            for i in range(c + 1, n):
                if m[i][c] != 0:
                    f = m[i][c] * inv
                    m[i] = [a - f * b for a, b in zip(m[i], m[c])]
        return det

    def charpoly(self):
        """Coefficients of det(x*I - A), monic, highest degree first.

        Uses the Faddeev-LeVerrier recursion; exact over the rationals.
        """
        if not self.is_square():
            raise DimensionMismatchError("characteristic polynomial of a non-square matrix")
        n = self.rows
        coeffs = [QQ(1)]
        m = RatMatrix.identity(n)
        for k in range(1, n + 1):
            m = self * m
            c = -m.trace() / k
            coeffs.append(c)
            if k < n:
                m = m + RatMatrix.identity(n).scale(c)
        return coeffs


@dataclass
class RrefResult:
    matrix: RatMatrix
    rank: int
    pivots: list


@dataclass
class LinearSolution:
    particular: list
    kernel: list


def rref(m: RatMatrix) -> RrefResult:
    return m.rref()


def solve_and_kernel(a: RatMatrix, b) -> LinearSolution | None:
    """Solve a*x = b exactly.

    Returns one particular solution together with a basis of the kernel of
    ``a``, or ``None`` if the system is inconsistent.  ``b`` is a list.
    """
    b = [_rat(x) for x in b]
    if a.rows != len(b):
        raise DimensionMismatchError("right-hand side length does not match row count")
    aug = a.hstack(RatMatrix.column(b))
    red = aug.rref()
    if a.cols in red.pivots:
        return None
    particular = [QQ(0)] * a.cols
    for r, p in enumerate(red.pivots):
        particular[p] = red.matrix.data[r][a.cols]
    return LinearSolution(particular, a.kernel_basis())


def solve(a: RatMatrix, b):
    """Particular solution of a*x = b, or ``None`` if inconsistent."""
    sol = solve_and_kernel(a, b)
    return None if sol is None else sol.particular


def matrix_poly(coeffs, m: RatMatrix) -> RatMatrix:
    """Evaluate a polynomial (coeffs highest degree first) at a square matrix."""
    out = RatMatrix.zeros(m.rows, m.cols)
    for c in coeffs:
        out = out * m + RatMatrix.identity(m.rows).scale(c)
    return out


def column_space_basis(m: RatMatrix):
    """Indices-free basis of the column space, as a list of column vectors."""
    red = m.rref()
    return [m.col(p) for p in red.pivots]


def span_rank(vectors) -> int:
    """Rank of the span of a list of equal-length vectors."""
    vecs = [v for v in vectors if any(x != 0 for x in v)]
    if not vecs:
        return 0
    return RatMatrix(vecs).rank()


def in_span(vectors, target) -> bool:
    """Whether ``target`` lies in the span of ``vectors`` (all lists)."""
    vecs = [list(v) for v in vectors]
    if not vecs:
        return all(_rat(x) == 0 for x in target)
    a = RatMatrix(vecs).transpose()
    return solve(a, list(target)) is not None
