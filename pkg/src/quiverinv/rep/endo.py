"""Endomorphism algebras and Krull-Schmidt decomposition over the rationals.

The radical of End(M) is the kernel of the trace form of the regular
representation (valid in characteristic zero).  Splitting proceeds in
stages, each of which produces an exact direct-sum decomposition:

1. generalized-eigenspace splits from endomorphisms whose characteristic
   polynomial has at least two distinct irreducible factors;
2. idempotents assembled in the semisimple quotient from minimal-polynomial
   factorizations (CRT) and lifted to exact idempotents by the Newton map
   e -> 3e^2 - 2e^3;
3. for a single noncommutative simple block, a Groebner-backed search for a
   solution of e^2 = e with prescribed regular trace; certified inconsistency
   for every candidate trace proves the endomorphism ring local.

Over the rationals a module can be indecomposable while its endomorphism
ring has a semisimple quotient of dimension > 1 (a number field); such
summands are genuinely indecomposable here even though they may split over
the algebraic closure.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

import sympy

from ..errors import DecompositionUndecidedError, QuiverInvError
from ..exactalg import (
    Consistency,
    Polynomial,
    RatMatrix,
    find_rational_point,
    groebner_inconsistent,
    solve,
)
from .homs import RepHom, hom_space
from .representation import Representation

QQ = Fraction
_X = sympy.Symbol("x")


def _to_sympy_poly(coeffs):
    return sympy.Poly(
        [sympy.Rational(c.numerator, c.denominator) for c in coeffs], _X, domain="QQ"
    )


def _from_sympy_poly(poly):
    return [Fraction(int(c.p), int(c.q)) for c in poly.all_coeffs()]


def factor_charpoly(coeffs):
    """Irreducible factorization over Q of a monic rational polynomial.

    Returns a list of (coefficient list, multiplicity), factors monic.
    """
    poly = _to_sympy_poly(coeffs)
    _, factors = poly.factor_list()
    out = []
    for f, mult in factors:
        f = f.monic()
        out.append((_from_sympy_poly(f), int(mult)))
    return out


class EndAlgebra:
    """End_A(M) with structure constants, trace form and radical."""

    def __init__(self, module: Representation):
        self.module = module
        self.basis = hom_space(module, module)
        self.dim = len(self.basis)
        flats = [h.flatten() for h in self.basis]
        self._solver = (
            RatMatrix(flats).transpose() if flats else None
        )  # ambient x dim, columns are basis vectors
        self._structure = None
        self._left_traces = None
        self._radical = None

    def coords(self, hom: RepHom):
        if self._solver is None:
            raise QuiverInvError("zero endomorphism algebra")
        x = solve(self._solver, hom.flatten())
        if x is None:
            raise QuiverInvError("morphism outside the endomorphism algebra")
        return x

    def from_coords(self, coords):
        out = RepHom.zero(self.module, self.module)
        for c, h in zip(coords, self.basis):
            if c:
                out = out + h.scale(c)
        return out

    def identity_coords(self):
        return self.coords(RepHom.identity(self.module))

    @property
    def structure(self):
        """structure[i][j] = coordinates of basis[i] o basis[j]."""
        if self._structure is None:
            self._structure = [
                [self.coords(self.basis[i] * self.basis[j]) for j in range(self.dim)]
                for i in range(self.dim)
            ]
        return self._structure

    def multiply_coords(self, x, y):
        out = [QQ(0)] * self.dim
        st = self.structure
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                row = st[i][j]
                f = xi * yj
                for k in range(self.dim):
                    if row[k]:
                        out[k] += f * row[k]
        return out

    def left_trace(self, x):
        """Trace of left multiplication by x in the regular representation."""
        if self._left_traces is None:
            st = self.structure
            self._left_traces = [
                sum((st[i][k][k] for k in range(self.dim)), QQ(0))
                for i in range(self.dim)
            ]
        return sum((xi * t for xi, t in zip(x, self._left_traces)), QQ(0))

    def radical_coords(self):
        """Basis of rad End(M) via the trace-form kernel (characteristic zero)."""
        if self._radical is None:
            gram = RatMatrix(
                [
                    [self.left_trace(self.structure[i][j]) for j in range(self.dim)]
                    for i in range(self.dim)
                ]
            )
            self._radical = gram.kernel_basis()
        return self._radical

    def semisimple_quotient(self):
        return _SemisimpleQuotient(self)


class _SemisimpleQuotient:
    """S = End(M)/rad with multiplication by project-after-multiply."""

    def __init__(self, endo: EndAlgebra):
        self.endo = endo
        rad = endo.radical_coords()
        n = endo.dim
        if rad:
            red = RatMatrix(rad).rref()
            pivot = set(red.pivots)
            self._rows = red.matrix.data[: red.rank]
            self._pivots = red.pivots
        else:
            pivot = set()
            self._rows = []
            self._pivots = []
        self.free = [i for i in range(n) if i not in pivot]
        self.dim = len(self.free)

    def project(self, coords):
        """E-coordinates -> S-coordinates on the chosen complement of the radical."""
        work = list(coords)
        for row, piv in zip(self._rows, self._pivots):
            c = work[piv]
            if c:
                for k in range(len(work)):
                    work[k] -= c * row[k]
        return [work[i] for i in self.free]

    def embed(self, s_coords):
        out = [QQ(0)] * self.endo.dim
        for val, idx in zip(s_coords, self.free):
            out[idx] = val
        return out

    def multiply(self, x, y):
        return self.project(self.endo.multiply_coords(self.embed(x), self.embed(y)))

    def identity(self):
        return self.project(self.endo.identity_coords())

    def left_trace(self, x):
        if not hasattr(self, "_traces"):
            basis = [self._unit(i) for i in range(self.dim)]
            self._traces = []
            for i in range(self.dim):
                t = QQ(0)
                for k in range(self.dim):
                    t += self.multiply(basis[i], basis[k])[k]
                self._traces.append(t)
        return sum((xi * t for xi, t in zip(x, self._traces)), QQ(0))

    def _unit(self, i):
        u = [QQ(0)] * self.dim
        u[i] = QQ(1)
        return u

    def is_zero_elt(self, x):
        return all(v == 0 for v in x)

    def minimal_polynomial(self, x):
        """Monic minimal polynomial of x in S, coefficients highest first."""
        powers = [self.identity()]
        rows = [powers[0]]
        current = powers[0]
        while True:
            current = self.multiply(current, x)
            sol = solve(RatMatrix(rows).transpose(), current)
            if sol is not None:
                k = len(rows)
                coeffs = [QQ(1)] + [-sol[k - 1 - i] for i in range(k)]
                return coeffs
            rows.append(current)

    def center_basis(self):
        """Basis (S-coordinates) of the center of S."""
        units = [self._unit(i) for i in range(self.dim)]
        rows = []
        for j in range(self.dim):
            bj = units[j]
            # commutator of unknown z with b_j, as linear conditions on z
            for k in range(self.dim):
                row = []
                for i in range(self.dim):
                    zi_bj = self.multiply(units[i], bj)
                    bj_zi = self.multiply(bj, units[i])
                    row.append(zi_bj[k] - bj_zi[k])
                rows.append(row)
        if not rows:
            return []
        return RatMatrix(rows).kernel_basis()


def _poly_eval_in_s(squot, coeffs, x):
    """Evaluate a rational polynomial at x inside S (Horner)."""
    acc = [c * QQ(0) for c in squot.identity()]
    ident = squot.identity()
    for c in coeffs:
        acc = squot.multiply(acc, x)
        if c:
            acc = [a + c * e for a, e in zip(acc, ident)]
    return acc


def _crt_idempotent(squot, x, minpoly_factors):
    """Nontrivial idempotent of Q[x] in S from a reducible minimal polynomial."""
    first, _ = minpoly_factors[0]
    rest = _to_sympy_poly([QQ(1)])
    for coeffs, mult in minpoly_factors[1:]:
        rest = rest * _to_sympy_poly(coeffs) ** mult
    p = _to_sympy_poly(first)
    u, _, g = sympy.polys.polytools.gcdex(rest, p)
    if sympy.degree(g, _X) != 0:
        return None
    combo = (u * rest).as_poly(_X, domain="QQ")
    gc = g.as_poly(_X, domain="QQ").all_coeffs()[-1]
    if gc != 1:
        combo = (combo * sympy.Rational(1) / gc).as_poly(_X, domain="QQ")
    e_poly = _from_sympy_poly(combo)
    return _poly_eval_in_s(squot, e_poly, x)


def newton_lift_idempotent(endo: EndAlgebra, approx_coords, max_iter=64):
    """Lift an idempotent of End/rad to an exact idempotent of End."""
    x = list(approx_coords)
    for _ in range(max_iter):
        sq = endo.multiply_coords(x, x)
        if sq == x:
            return x
        cube = endo.multiply_coords(sq, x)
        x = [3 * a - 2 * b for a, b in zip(sq, cube)]
    raise DecompositionUndecidedError("idempotent lifting failed to converge")


# -- splitting machinery ---------------------------------------------------


def _block_diag(hom: RepHom):
    n = sum(m.rows for m in hom.mats)
    out = RatMatrix.zeros(n, n)
    off = 0
    for m in hom.mats:
        for i in range(m.rows):
            for j in range(m.cols):
                out.data[off + i][off + j] = m.data[i][j]
        off += m.rows
    return out


def _try_spectral_split(module: Representation, hom: RepHom):
    """Split M along generalized eigenspaces of an endomorphism, if any."""
    if module.total_dim == 0:
        return None
    big = _block_diag(hom)
    factors = factor_charpoly(big.charpoly())
    nontrivial = [(c, m) for c, m in factors]
    if len(nontrivial) < 2:
        return None
    parts = []
    for coeffs, mult in nontrivial:
        bases = []
        for v_idx in range(len(module.dims)):
            mat = hom.mats[v_idx]
            p_at = _matrix_poly_power(coeffs, mult, mat)
            k = p_at.kernel_basis()
            bases.append(
                RatMatrix.from_columns(k, rows=module.dims[v_idx])
                if k
                else RatMatrix.zeros(module.dims[v_idx], 0)
            )
        if all(b.cols == 0 for b in bases):
            continue
        sub, incl = module.sub_representation(bases)
        parts.append((sub, incl))
    if len(parts) < 2:
        return None
    total = [0] * len(module.dims)
    for sub, _ in parts:
        total = [a + b for a, b in zip(total, sub.dims)]
    if tuple(total) != module.dims:
        raise QuiverInvError("generalized eigenspaces do not fill the module")
    return parts


def _matrix_poly_power(coeffs, mult, m: RatMatrix):
    out = RatMatrix.zeros(m.rows, m.cols)
    for c in coeffs:
        out = out * m + RatMatrix.identity(m.rows).scale(c)
    result = RatMatrix.identity(m.rows)
    for _ in range(mult):
        result = result * out
    return result


def _candidate_homs(endo: EndAlgebra, seed):
    for h in endo.basis:
        yield h
    n = endo.dim
    pair_cap = 8
    for i in range(min(n, pair_cap)):
        for j in range(min(n, pair_cap)):
            if i != j:
                yield endo.basis[i] * endo.basis[j]
    for i in range(min(n, pair_cap)):
        for j in range(i + 1, min(n, pair_cap)):
            yield endo.basis[i] + endo.basis[j]
    rng = random.Random(seed)
    for _ in range(40):
        coeffs = [QQ(rng.randint(-4, 4)) for _ in range(n)]
        if any(coeffs):
            yield endo.from_coords(coeffs)


def _idempotent_hunt(squot: _SemisimpleQuotient):
    """Search for a nontrivial idempotent of S by solving e^2 = e exactly.

    Returns S-coordinates, or None when every trace stratum is certified
    inconsistent (so S has no nontrivial idempotent), or raises when the
    search is inconclusive.
    """
    s = squot.dim
    variables = tuple(f"z{i}" for i in range(s))
    units = [squot._unit(i) for i in range(s)]
    # quadratic equations: coords of z^2 - z
    products = [[squot.multiply(units[i], units[j]) for j in range(s)] for i in range(s)]
    eqs = []
    for k in range(s):
        terms = {}
        for i in range(s):
            for j in range(s):
                c = products[i][j][k]
                if c:
                    exp = [0] * s
                    exp[i] += 1
                    exp[j] += 1
                    key = tuple(exp)
                    terms[key] = terms.get(key, QQ(0)) + c
        unit_exp = [0] * s
        unit_exp[k] = 1
        key = tuple(unit_exp)
        terms[key] = terms.get(key, QQ(0)) - 1
        eqs.append(Polynomial(variables, terms))

    total_trace = squot.left_trace(squot.identity())
    if total_trace.denominator != 1:
        raise DecompositionUndecidedError("non-integral regular trace")
    undecided = False
    for r in range(1, int(total_trace)):
        trace_terms = {}
        for i in range(s):
            exp = [0] * s
            exp[i] = 1
            c = squot.left_trace(units[i])
            if c:
                trace_terms[tuple(exp)] = c
        trace_terms[tuple([0] * s)] = QQ(-r)
        system = eqs + [Polynomial(variables, trace_terms)]
        verdict = groebner_inconsistent(system)
        if verdict is Consistency.INCONSISTENT:
            continue
        if verdict is Consistency.UNDECIDED:
            undecided = True
            continue
        point = find_rational_point(system)
        if point is None:
            undecided = True
            continue
        e = [Fraction(v) for v in point]
        if squot.is_zero_elt(e):
            continue
        return e
    if undecided:
        raise DecompositionUndecidedError(
            "idempotent search hit resource limits; decomposition undecided"
        )
    return None


def _split_once(module: Representation, endo: EndAlgebra, seed):
    """One direct-sum split of M, or None when End(M) is certified local."""
    for cand in _candidate_homs(endo, seed):
        parts = _try_spectral_split(module, cand)
        if parts:
            return parts

    squot = endo.semisimple_quotient()
    if squot.dim == 1:
        return None

    # central route: CRT idempotents from a reducible minimal polynomial,
    # or a certificate that the center is a field (primitive element with
    # irreducible minimal polynomial of full degree)
    center = squot.center_basis()
    z_dim = len(center)
    combos = list(center)
    weights = [[QQ(k) ** i for i in range(z_dim)] for k in range(1, z_dim + 2)]
    for w in weights:
        combos.append(
            [
                sum((w[t] * center[t][i] for t in range(z_dim)), QQ(0))
                for i in range(squot.dim)
            ]
        )
    rng = random.Random(seed ^ 0x5EED)
    for _ in range(12):
        if not center:
            break
        combos.append(
            [
                sum((QQ(rng.randint(-3, 3)) * c[i] for c in center), QQ(0))
                for i in range(squot.dim)
            ]
        )
    center_is_field = False
    for z in combos:
        if squot.is_zero_elt(z):
            continue
        minpoly = squot.minimal_polynomial(z)
        factors = factor_charpoly(minpoly)
        if len(factors) >= 2:
            e_s = _crt_idempotent(squot, z, factors)
            if e_s is None or squot.is_zero_elt(e_s):
                continue
            lifted = newton_lift_idempotent(endo, squot.embed(e_s))
            parts = _try_spectral_split(module, endo.from_coords(lifted))
            if parts:
                return parts
        elif len(minpoly) - 1 == z_dim and factors[0][1] == 1:
            center_is_field = True
            break
    if center_is_field and z_dim == squot.dim:
        return None  # S is a field: End(M) local (may split over the closure)

    # noncommutative single block: exact idempotent hunt
    e_s = _idempotent_hunt(squot)
    if e_s is None:
        return None  # certified: no nontrivial idempotents, End(M) local
    lifted = newton_lift_idempotent(endo, squot.embed(e_s))
    parts = _try_spectral_split(module, endo.from_coords(lifted))
    if parts:
        return parts
    raise DecompositionUndecidedError("lifted idempotent failed to split the module")


def endo_coords_from_s(squot: _SemisimpleQuotient, s_coords):
    return squot.embed(s_coords)


@dataclass
class Summand:
    module: Representation
    inclusion: RepHom
    projection: RepHom


def decompose_with_maps(module: Representation, seed=0):
    """Indecomposable summands with inclusion and projection morphisms."""
    if module.total_dim == 0:
        return []
    endo = EndAlgebra(module)
    if endo.dim == 1:
        ident = RepHom.identity(module)
        return [Summand(module, ident, ident)]
    parts = _split_once(module, endo, seed)
    if parts is None:
        ident = RepHom.identity(module)
        return [Summand(module, ident, ident)]

    # projections: invert the combined change of basis per vertex
    alg = module.algebra
    nvert = len(alg.vertices)
    combined = []
    for v in range(nvert):
        mats = [incl[v] for _, incl in parts]
        full = None
        for m in mats:
            if m.cols == 0:
                continue
            full = m if full is None else full.hstack(m)
        if full is None:
            full = RatMatrix.zeros(module.dims[v], 0)
        if full.cols != module.dims[v]:
            raise QuiverInvError("split does not span the module")
        combined.append(full.inverse() if module.dims[v] else RatMatrix.zeros(0, 0))

    out = []
    col_offset = [0] * nvert
    for sub, incl in parts:
        proj_mats = []
        incl_mats = []
        for v in range(nvert):
            k = sub.dims[v]
            rows = range(col_offset[v], col_offset[v] + k)
            proj_mats.append(combined[v].submatrix(rows, range(module.dims[v])))
            incl_mats.append(incl[v])
            col_offset[v] += k
        incl_hom = RepHom(sub, module, incl_mats)
        proj_hom = RepHom(module, sub, proj_mats)
        for deeper in decompose_with_maps(sub, seed):
            out.append(
                Summand(
                    deeper.module,
                    incl_hom * deeper.inclusion,
                    deeper.projection * proj_hom,
                )
            )
    return out


def indecomposable_summands(module: Representation, seed=0):
    return [s.module for s in decompose_with_maps(module, seed)]


def krull_schmidt(module: Representation, seed=0):
    """List of (indecomposable summand, multiplicity), unique up to order."""
    leaves = indecomposable_summands(module, seed)
    classes = []
    for leaf in leaves:
        for entry in classes:
            if is_isomorphic(entry[0], leaf):
                entry[1] += 1
                break
        else:
            classes.append([leaf, 1])
    return [(rep, count) for rep, count in classes]


def is_schur(module: Representation):
    ok, witness = module.validate()
    if not ok:
        raise QuiverInvError(f"representation violates relation {witness}")
    return len(hom_space(module, module)) == 1


def is_indecomposable(module: Representation, seed=0):
    if module.total_dim == 0:
        return False
    endo = EndAlgebra(module)
    if endo.dim == 1:
        return True
    return len(indecomposable_summands(module, seed)) == 1


def is_isomorphic(m: Representation, n: Representation):
    """Decide whether two representations are isomorphic.

    An invertible morphism exists iff no vertexwise determinant of a generic
    combination of a Hom basis vanishes identically; that polynomial test is
    exact, and a witness point is then found on a small integer grid.
    """
    if m.dims != n.dims:
        return False
    if m.total_dim == 0:
        return True
    homs = hom_space(m, n)
    if not homs:
        return False
    k = len(homs)
    variables = tuple(f"t{i}" for i in range(k))
    dets = []
    for v in range(len(m.dims)):
        d = m.dims[v]
        if d == 0:
            continue
        if d > 7:
            raise QuiverInvError("isomorphism test beyond desk scale (dim > 7)")
        entries = [
            [
                Polynomial(
                    variables,
                    {
                        tuple(1 if t == idx else 0 for t in range(k)): homs[idx].mats[v].data[i][j]
                        for idx in range(k)
                        if homs[idx].mats[v].data[i][j] != 0
                    },
                )
                for j in range(d)
            ]
            for i in range(d)
        ]
        det = _poly_det(entries, variables)
        if det.is_zero():
            return False
        dets.append(det)
    # hunt a nonvanishing point on a grid large enough for the degree
    degree = sum(m.dims)
    grid = range(0, degree + 1)
    for point in itertools.product(grid, repeat=k):
        vals = [QQ(x) for x in point]
        if all(det.evaluate(vals) != 0 for det in dets):
            return True
    raise QuiverInvError("isomorphism undecided: no grid point found")


def isomorphism(m: Representation, n: Representation):
    """An explicit isomorphism, or None when not isomorphic."""
    if not is_isomorphic(m, n):
        return None
    homs = hom_space(m, n)
    k = len(homs)
    degree = sum(m.dims)
    for point in itertools.product(range(0, degree + 1), repeat=k):
        cand = RepHom.zero(m, n)
        for c, h in zip(point, homs):
            if c:
                cand = cand + h.scale(c)
        if cand.is_invertible():
            return cand
    return None


def _poly_det(entries, variables):
    n = len(entries)
    if n == 0:
        return Polynomial.constant(variables, 1)
    if n == 1:
        return entries[0][0]
    total = Polynomial.zero(variables)
    for j in range(n):
        if entries[0][j].is_zero():
            continue
        minor = [
            [entries[i][jj] for jj in range(n) if jj != j] for i in range(1, n)
        ]
        term = entries[0][j] * _poly_det(minor, variables)
        total = total + (term if j % 2 == 0 else -term)
    return total
