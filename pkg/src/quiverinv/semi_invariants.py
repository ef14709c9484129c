"""Exact dimensions of semi-invariant weight spaces and moduli Hilbert series.

A weight-(m theta) semi-invariant is a polynomial on mod(Q, d) that is a
torus eigenvector of the right weight at every torus coordinate and is
killed by all elementary off-diagonal Lie-algebra actions.  Both conditions
are plain linear algebra on a finite monomial span once the degree profiles
forced by the weight are enumerated; the relation ideal is subtracted as its
isotypic piece inside that span.

Correctness scope: with a nonzero relation ideal this computes semi-invariants
of the (possibly non-reduced) coordinate ring of the whole module variety;
reports carry a whole-variety caveat, and per-component series coincide with
it only for single-component fixtures.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DegreeCapExceededError, QuiverInvError
from .exactalg import RatMatrix
from .forms import theta_value, tits_form
from .sampling import sample_representation
from .stability import king_test
from .variety import arrow_variables, path_matrix

QQ = Fraction

_PRODUCT_GUARD = 3_000_000


@dataclass
class SIReport:
    theta: tuple
    dims: list
    m_max: int
    degree_cap: int
    caveats: list = field(default_factory=list)


@dataclass
class FactorizationReport:
    ambient_dims: list
    expected_dims: list
    factor_dims: dict     # index -> series of the factor dimension vector
    passed: bool
    caveats: list = field(default_factory=list)


@dataclass
class ModuliPrediction:
    kind: str             # point | P1 | product-of-projective-spaces | not-applicable
    exponents: list       # multiplicities of the isotropic factors
    transcendence_degree: int
    shape: str
    notes: list = field(default_factory=list)


def _coordinate_targets(alg, d, theta, m):
    """Required torus weight at every coordinate (vertex, index)."""
    target = {}
    for v_idx, v in enumerate(alg.vertices):
        for k in range(d[v_idx]):
            target[(v_idx, k)] = m * theta[v_idx]
    return target


def _profile_bound(alg, d, vertex_balance):
    """Upper bound on the total degree of any profile (acyclic flow bound)."""
    positive = sum(b for b in vertex_balance.values() if b > 0)
    return positive * max(1, len(alg.vertices) - 1)


def _degree_profiles(alg, d, vertex_balance, cap):
    """Nonnegative arrow-degree vectors with the prescribed vertex balance."""
    arrows = alg.quiver.arrows
    n = len(arrows)
    out = []

    def rec(idx, remaining, current):
        if idx == n:
            balance = {v: 0 for v in range(len(alg.vertices))}
            for a, na in zip(arrows, current):
                balance[alg.vertex_index(a.tail)] += na
                balance[alg.vertex_index(a.head)] -= na
            if all(balance[v] == vertex_balance.get(v, 0) for v in balance):
                out.append(tuple(current))
            return
        for na in range(remaining + 1):
            rec(idx + 1, remaining - na, current + [na])

    rec(0, cap, [])
    return out


def _weighted_monomials(alg, d, target, degree_cap):
    """All monomials on mod(Q, d) whose torus weight matches ``target``.

    ``target`` maps (vertex index, coordinate) to the required weight.  The
    result is complete: a profile forced past the cap raises instead of
    truncating.  Monomials are exponent dictionaries var-index -> exponent.
    """
    if alg.quiver.has_directed_cycle():
        raise DegreeCapExceededError(
            "oriented cycles make torus weight spaces infinite-dimensional "
            "degreewise; no complete enumeration below the cap"
        )
    variables, index = arrow_variables(alg, d)
    vertex_balance = {}
    for v_idx in range(len(alg.vertices)):
        vertex_balance[v_idx] = sum(
            target.get((v_idx, k), 0) for k in range(d[v_idx])
        )
    bound = _profile_bound(alg, d, vertex_balance)
    if bound > max(degree_cap, 60):
        raise DegreeCapExceededError(
            f"forced total degree up to {bound} exceeds the cap {degree_cap}"
        )
    profiles = _degree_profiles(alg, d, vertex_balance, bound)
    if any(sum(p) > degree_cap for p in profiles):
        raise DegreeCapExceededError(
            f"a forced degree profile exceeds the cap {degree_cap}"
        )

    arrows = alg.quiver.arrows
    monomials = []
    seen = set()
    for profile in profiles:
        per_arrow = []
        total = 1
        for a, na in zip(arrows, profile):
            rows = d[alg.vertex_index(a.head)]
            cols = d[alg.vertex_index(a.tail)]
            cells = list(itertools.product(range(rows), range(cols)))
            choices = list(itertools.combinations_with_replacement(cells, na))
            per_arrow.append(choices)
            total *= max(1, len(choices))
            if total > _PRODUCT_GUARD:
                raise DegreeCapExceededError("monomial enumeration guard tripped")
        for combo in itertools.product(*per_arrow):
            weight = {}
            exps = {}
            for a, multiset in zip(arrows, combo):
                ti = alg.vertex_index(a.tail)
                hi = alg.vertex_index(a.head)
                for (r, c) in multiset:
                    weight[(ti, c)] = weight.get((ti, c), 0) + 1
                    weight[(hi, r)] = weight.get((hi, r), 0) - 1
                    vi = index[(a.name, r, c)]
                    exps[vi] = exps.get(vi, 0) + 1
            ok = True
            for v_idx in range(len(alg.vertices)):
                for k in range(d[v_idx]):
                    if weight.get((v_idx, k), 0) != target.get((v_idx, k), 0):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                key = tuple(sorted(exps.items()))
                if key not in seen:
                    seen.add(key)
                    monomials.append(exps)
    return variables, index, monomials


def _lie_action_rows(alg, d, index, monomials):
    """Constraint rows imposing vanishing under all off-diagonal actions."""
    rows = {}

    def add(op, result_key, col, coeff):
        rows.setdefault((op, result_key), {})[col] = (
            rows.get((op, result_key), {}).get(col, QQ(0)) + coeff
        )

    for v_idx, v in enumerate(alg.vertices):
        dv = d[v_idx]
        if dv < 2:
            continue
        for p in range(dv):
            for q in range(dv):
                if p == q:
                    continue
                op = (v_idx, p, q)
                for col, mono in enumerate(monomials):
                    for vi, expn in mono.items():
                        a_name, r, c = _var_info(alg, d, vi)
                        a = alg.quiver.arrow(a_name)
                        if alg.vertex_index(a.head) == v_idx and r == p:
                            new = dict(mono)
                            new[vi] -= 1
                            if new[vi] == 0:
                                del new[vi]
                            tgt = index[(a_name, q, c)]
                            new[tgt] = new.get(tgt, 0) + 1
                            add(op, tuple(sorted(new.items())), col, QQ(-expn))
                        if alg.vertex_index(a.tail) == v_idx and c == q:
                            new = dict(mono)
                            new[vi] -= 1
                            if new[vi] == 0:
                                del new[vi]
                            tgt = index[(a_name, r, p)]
                            new[tgt] = new.get(tgt, 0) + 1
                            add(op, tuple(sorted(new.items())), col, QQ(expn))
    matrix_rows = []
    ncols = len(monomials)
    for _, entries in sorted(rows.items(), key=lambda kv: repr(kv[0])):
        row = [QQ(0)] * ncols
        for col, coeff in entries.items():
            row[col] = coeff
        if any(x != 0 for x in row):
            matrix_rows.append(row)
    return matrix_rows


_VAR_INFO_CACHE = {}


def _var_info(alg, d, vi):
    key = (id(alg), tuple(d))
    if key not in _VAR_INFO_CACHE:
        _, index = arrow_variables(alg, d)
        _VAR_INFO_CACHE[key] = {pos: info for info, pos in index.items()}
    return _VAR_INFO_CACHE[key][vi]


def _killed_subspace(alg, d, index, monomials):
    """Basis (coefficient vectors over the monomial list) of the GL-killed span."""
    if not monomials:
        return []
    rows = _lie_action_rows(alg, d, index, monomials)
    if not rows:
        n = len(monomials)
        return [[QQ(1) if i == j else QQ(0) for i in range(n)] for j in range(n)]
    return RatMatrix(rows).kernel_basis()


def _ideal_piece(alg, d, theta, m, degree_cap, variables, index, monomials):
    """Span of the weight-(m theta) slice of the relation ideal, over W."""
    mono_index = {tuple(sorted(mo.items())): i for i, mo in enumerate(monomials)}
    vectors = []
    for rel in alg.relations:
        src_idx = alg.vertex_index(rel.source)
        tgt_idx = alg.vertex_index(rel.target)
        rows = d[tgt_idx]
        cols = d[src_idx]
        # entry polynomials of the relation matrix
        entry_polys = [[None] * cols for _ in range(rows)]
        for coeff, path in rel.terms:
            mat = path_matrix(alg, d, path, variables, index)
            for i in range(rows):
                for j in range(cols):
                    term = mat[i][j].scale(coeff)
                    entry_polys[i][j] = (
                        term if entry_polys[i][j] is None else entry_polys[i][j] + term
                    )
        for i in range(rows):
            for j in range(cols):
                q = entry_polys[i][j]
                if q is None or q.is_zero():
                    continue
                target = _coordinate_targets(alg, d, theta, m)
                target[(src_idx, j)] = target.get((src_idx, j), 0) - 1
                target[(tgt_idx, i)] = target.get((tgt_idx, i), 0) + 1
                _, _, complements = _weighted_monomials(alg, d, target, degree_cap)
                for g in complements:
                    vec = [QQ(0)] * len(monomials)
                    hit = False
                    for exp_q, c_q in q.terms.items():
                        combined = dict(g)
                        for pos, e in enumerate(exp_q):
                            if e:
                                combined[pos] = combined.get(pos, 0) + e
                        key = tuple(sorted(combined.items()))
                        if key not in mono_index:
                            raise QuiverInvError(
                                "ideal product escaped the enumerated weight space"
                            )
                        vec[mono_index[key]] += c_q
                        hit = True
                    if hit and any(x != 0 for x in vec):
                        vectors.append(vec)
    return vectors


def si_dim(alg, d, theta, m, degree_cap=24) -> int:
    """Exact dimension of the weight-(m theta) semi-invariant space."""
    d = tuple(int(x) for x in d)
    theta = tuple(int(t) for t in theta)
    m = int(m)
    if m < 0:
        raise QuiverInvError("multiplier must be nonnegative")
    if m == 0:
        return 1
    if theta_value(theta, d) != 0:
        return 0  # the central one-parameter torus kills every candidate

    target = _coordinate_targets(alg, d, theta, m)
    variables, index, monomials = _weighted_monomials(alg, d, target, degree_cap)
    if not monomials:
        return 0
    killed = _killed_subspace(alg, d, index, monomials)
    if not killed:
        return 0
    if not alg.relations:
        return len(killed)
    ideal_vectors = _ideal_piece(
        alg, d, theta, m, degree_cap, variables, index, monomials
    )
    if not ideal_vectors:
        return len(killed)
    rank_u = RatMatrix(ideal_vectors).rank()
    rank_uk = RatMatrix(ideal_vectors + killed).rank()
    return rank_uk - rank_u


def hilbert_series(alg, d, theta, m_max, degree_cap=24) -> SIReport:
    """Dimensions of SI(A, d)_{m theta} for m = 0..m_max."""
    dims = [si_dim(alg, d, theta, m, degree_cap) for m in range(m_max + 1)]
    caveats = []
    if alg.relations:
        caveats.append(
            "whole-variety ring: semi-invariants of k[mod(Q,d)]/I, not of a "
            "chosen irreducible component"
        )
    return SIReport(tuple(int(t) for t in theta), dims, m_max, degree_cap, caveats)


def check_symmetric_factorization(
    alg, theta, parts, m_max, degree_cap=24, seed=20240, zero_arrows=None
) -> FactorizationReport:
    """Compare the ambient series with the symmetric-power product of factors.

    ``parts`` is a list of (dimension vector, multiplicity); the degree-m
    piece of the product is the product over factors of the symmetric power
    S^{m_i} applied to the factor's weight-(m theta) space.
    """
    theta = tuple(int(t) for t in theta)
    parts = [(tuple(int(x) for x in dv), int(mult)) for dv, mult in parts]
    n = len(alg.vertices)
    ambient_d = tuple(
        sum(mult * dv[i] for dv, mult in parts) for i in range(n)
    )
    caveats = []

    rng = random.Random(seed)
    for dv, _ in parts:
        sampled = sample_representation(alg, dv, rng, zero_arrows)
        verdict = king_test(sampled, theta)
        if verdict.status not in ("stable", "strictly semistable"):
            caveats.append(
                f"sampled module of dimension {dv} is {verdict.status}; "
                "factor not certified semistable"
            )

    ambient = hilbert_series(alg, ambient_d, theta, m_max, degree_cap)
    factor_series = {}
    for idx, (dv, _) in enumerate(parts):
        factor_series[idx] = hilbert_series(alg, dv, theta, m_max, degree_cap).dims

    expected = []
    for m in range(m_max + 1):
        value = 1
        for idx, (_, mult) in enumerate(parts):
            s = factor_series[idx][m]
            value *= math.comb(s + mult - 1, mult)
        expected.append(value)
    passed = expected == ambient.dims
    caveats.extend(ambient.caveats)
    return FactorizationReport(ambient.dims, expected, factor_series, passed, caveats)


def classify_moduli_tame(alg, d, theta, decomposition) -> ModuliPrediction:
    """Moduli-shape prediction for an asserted-tame quasi-tilted algebra.

    ``decomposition`` lists (multiplicity, dimension vector) of the stable
    factors; real factors contribute points, isotropic factors contribute
    projective lines, multiplicities turn into symmetric powers S^m(P^1) = P^m.
    Tameness is an input assertion, never inferred.
    """
    notes = ["tameness asserted by caller, not verified"]
    exponents = []
    for mult, dv in decomposition:
        q = tits_form(alg, dv)
        if q == 0:
            exponents.append(int(mult))
        elif q != 1:
            return ModuliPrediction(
                "not-applicable",
                [],
                0,
                "n/a",
                notes + [f"factor {tuple(dv)} has q = {q}, outside {{0, 1}}"],
            )
    big_n = sum(exponents)
    if big_n == 0:
        return ModuliPrediction("point", [], 0, "point", notes)
    if exponents == [1]:
        return ModuliPrediction("P1", [1], 1, "P^1", notes)
    shape = " x ".join(f"P^{m}" for m in exponents)
    return ModuliPrediction(
        "product-of-projective-spaces", exponents, big_n, shape, notes
    )
