"""King theta-(semi)stability of explicit modules and derived reports.

Stability is quantified over sub-dimension-vectors: whether some submodule
of dimension vector e exists is decided chart by chart on the product of
echelon-pattern cells of the quiver Grassmannian, writing the containment
conditions M(a) V_ta <= V_ha as polynomial systems and testing emptiness
over the algebraic closure with Buchberger.

Witness submodules are extracted by a deterministic small-height rational
point sweep and verified exactly; when no rational point exists the factor
data degrades to dimension-vector level with an explicit marker, never to a
wrong factor.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import QuiverInvError
from .exactalg import (
    BuchbergerLimits,
    Consistency,
    DEFAULT_LIMITS,
    Polynomial,
    RatMatrix,
    find_rational_point,
    groebner_inconsistent,
)
from .forms import theta_value
from .rep import Representation
from .variety import relation_entry_polynomials, point_of

QQ = Fraction

YES = "yes"
NO = "no"
UNDECIDED = "undecided"


@dataclass
class StabilityVerdict:
    status: str  # stable | strictly semistable | unstable | undecided
    witness: tuple | None = None
    notes: list = field(default_factory=list)


@dataclass
class SEquivalenceClass:
    """Multiset of stable-factor data: (dimension vector, representative or None)."""

    factors: list
    notes: list = field(default_factory=list)

    def dimension_multiset(self):
        return tuple(sorted(e for e, _ in self.factors))


@dataclass
class ThetaStableDecomposition:
    parts: list               # (multiplicity, dimension vector)
    agreement: int
    sample_count: int
    disagreement: bool
    factor_witnesses: list    # representative SEquivalenceClass of the majority
    notes: list = field(default_factory=list)


@dataclass
class ModuliDimensionReport:
    value: int
    component_dim: int
    ambient_dim: int
    jacobian_rank: int
    group_dim: int
    notes: list = field(default_factory=list)


# -- quiver Grassmannian charts -------------------------------------------


def _charts(dims, e):
    """Echelon-pattern charts of prod_v Gr(e_v, d_v), lexicographic order."""
    per_vertex = [
        list(itertools.combinations(range(d), k)) for d, k in zip(dims, e)
    ]
    return itertools.product(*per_vertex)


def _chart_system(m: Representation, e, pivots):
    """Polynomial incidence system of one chart.

    Chart coordinates: reduced row-echelon basis W_v (e_v x d_v) with pivot
    columns prescribed; free entries sit strictly right of their pivot and
    outside the pivot column set.
    """
    alg = m.algebra
    nvert = len(alg.vertices)
    var_names = []
    var_pos = {}
    for v in range(nvert):
        piv = pivots[v]
        for k in range(e[v]):
            for c in range(piv[k] + 1, m.dims[v]):
                if c in piv:
                    continue
                var_pos[(v, k, c)] = len(var_names)
                var_names.append(f"w{v}_{k}_{c}")
    variables = tuple(var_names)

    def w_entry(v, k, c):
        piv = pivots[v]
        if c == piv[k]:
            return Polynomial.constant(variables, 1)
        if (v, k, c) in var_pos:
            exp = [0] * len(variables)
            exp[var_pos[(v, k, c)]] = 1
            return Polynomial(variables, {tuple(exp): QQ(1)})
        return Polynomial.zero(variables)

    polys = []
    for a in alg.quiver.arrows:
        ti = alg.vertex_index(a.tail)
        hi = alg.vertex_index(a.head)
        mat = m.matrices[a.name]
        piv_h = pivots[hi]
        non_pivot_rows = [r for r in range(m.dims[hi]) if r not in piv_h]
        for k in range(e[ti]):
            # image w = M(a) * (k-th basis vector of the tail subspace)
            w = []
            for r in range(m.dims[hi]):
                acc = Polynomial.zero(variables)
                for j in range(m.dims[ti]):
                    coeff = mat.data[r][j]
                    if coeff:
                        acc = acc + w_entry(ti, k, j).scale(coeff)
                w.append(acc)
            for r in non_pivot_rows:
                residual = w[r]
                for l in range(e[hi]):
                    residual = residual - w_entry(hi, l, r) * w[piv_h[l]]
                if not residual.is_zero():
                    polys.append(residual)
    return variables, var_pos, polys


def sub_dimvec_exists(m: Representation, e, limits: BuchbergerLimits = DEFAULT_LIMITS):
    """Does M have a submodule of dimension vector e?  {yes, no, undecided}."""
    answer, _ = _sub_dimvec_search(m, e, limits)
    return answer


def _sub_dimvec_search(m, e, limits):
    e = tuple(int(x) for x in e)
    if len(e) != len(m.dims):
        raise QuiverInvError("sub-dimension vector has wrong length")
    if any(x < 0 or x > d for x, d in zip(e, m.dims)):
        raise QuiverInvError("sub-dimension vector outside the box")
    if all(x == 0 for x in e) or e == m.dims:
        return YES, None
    hit_cap = False
    for pivots in _charts(m.dims, e):
        variables, var_pos, polys = _chart_system(m, e, pivots)
        verdict = groebner_inconsistent(polys, limits)
        if verdict is Consistency.CONSISTENT:
            return YES, (pivots, variables, var_pos, polys)
        if verdict is Consistency.UNDECIDED:
            hit_cap = True
    return (UNDECIDED, None) if hit_cap else (NO, None)


def _witness_from_chart(m, e, chart, limits):
    """Exact submodule bases from a consistent chart, or None."""
    pivots, variables, var_pos, polys = chart
    point = find_rational_point(polys, limits)
    if point is None:
        return None
    bases = []
    for v in range(len(m.dims)):
        piv = pivots[v]
        w = RatMatrix.zeros(e[v], m.dims[v])
        for k in range(e[v]):
            w.data[k][piv[k]] = QQ(1)
            for c in range(m.dims[v]):
                if (v, k, c) in var_pos:
                    w.data[k][c] = point[var_pos[(v, k, c)]]
        bases.append(w.transpose())
    # exact verification: the spans must be arrow-stable
    try:
        m.sub_representation(bases)
    except QuiverInvError:
        return None
    return bases


# -- King's criterion ------------------------------------------------------


def _proper_subvectors(d):
    """All e with 0 < e < d (componentwise box, both ends excluded)."""
    ranges = [range(x + 1) for x in d]
    out = [
        e
        for e in itertools.product(*ranges)
        if any(e) and e != tuple(d)
    ]
    out.sort(key=lambda e: (sum(e), e))
    return out


def king_test(m: Representation, theta, limits: BuchbergerLimits = DEFAULT_LIMITS):
    """King's criterion for an explicit module, by sub-dimension-vector scan."""
    ok, witness = m.validate()
    if not ok:
        raise QuiverInvError(f"representation violates relation {witness}")
    theta = tuple(int(t) for t in theta)
    d = m.dims
    if m.total_dim == 0:
        return StabilityVerdict("strictly semistable", None, ["zero module"])
    if theta_value(theta, d) != 0:
        return StabilityVerdict("unstable", d, ["theta(dim M) != 0"])

    undecided_positive = []
    undecided_zero = []
    zero_weight_found = None
    for e in _proper_subvectors(d):
        value = theta_value(theta, e)
        if value < 0 or (value == 0 and zero_weight_found is not None):
            continue
        answer = sub_dimvec_exists(m, e, limits)
        if value > 0:
            if answer == YES:
                return StabilityVerdict("unstable", e)
            if answer == UNDECIDED:
                undecided_positive.append(e)
        else:
            if answer == YES:
                zero_weight_found = e
            elif answer == UNDECIDED:
                undecided_zero.append(e)
    if undecided_positive:
        return StabilityVerdict(
            UNDECIDED, None, [f"charts hit resource caps for e = {undecided_positive}"]
        )
    if zero_weight_found is not None:
        return StabilityVerdict("strictly semistable", zero_weight_found)
    if undecided_zero:
        return StabilityVerdict(
            UNDECIDED, None, [f"charts hit resource caps for e = {undecided_zero}"]
        )
    return StabilityVerdict("stable")


# -- Jordan-Hoelder data in the semistable category ------------------------


def jh_filtration_ss(
    m: Representation, theta, limits: BuchbergerLimits = DEFAULT_LIMITS, _checked=False
) -> SEquivalenceClass:
    """Stable composition factors of a semistable module (S-equivalence data)."""
    theta = tuple(int(t) for t in theta)
    if not _checked:
        verdict = king_test(m, theta, limits)
        if verdict.status not in ("stable", "strictly semistable"):
            raise QuiverInvError(
                f"module is not semistable (king_test: {verdict.status})"
            )
    factors, notes = _jh_recurse(m, theta, limits)
    cls = SEquivalenceClass(factors, notes)
    total = [0] * len(m.dims)
    for e, _ in cls.factors:
        if theta_value(theta, e) != 0:
            raise QuiverInvError("internal: factor with nonzero weight")
        total = [a + b for a, b in zip(total, e)]
    if tuple(total) != m.dims:
        raise QuiverInvError("internal: factors do not sum to dim M")
    return cls


def _jh_recurse(m, theta, limits):
    if m.total_dim == 0:
        return [], []
    d = m.dims
    notes = []
    saw_undecided = False
    for e in _proper_subvectors(d):
        if theta_value(theta, e) != 0:
            continue
        answer, chart = _sub_dimvec_search(m, e, limits)
        if answer == UNDECIDED:
            saw_undecided = True
            continue
        if answer == NO:
            continue
        if saw_undecided:
            notes.append(
                "an earlier candidate was undecided; factor minimality not certified"
            )
        bases = _witness_from_chart(m, e, chart, limits)
        if bases is None:
            notes.append(
                f"witness unavailable for factor {e}: no small rational point"
            )
            rest, rest_notes = _remainder_partition(
                tuple(x - y for x, y in zip(d, e)), theta
            )
            return [(e, None)] + rest, notes + rest_notes
        sub, _ = m.sub_representation(bases)
        quotient, _ = m.quotient_representation(bases)
        rest, rest_notes = _jh_recurse(quotient, theta, limits)
        return [(e, sub)] + rest, notes + rest_notes
    # no proper nonzero submodule of weight zero: m itself is stable
    return [(d, m)], notes


def _remainder_partition(r, theta):
    """Dimension-level completion when no witness module is available.

    The remainder is split further only when the multiset of theta-zero
    parts summing to it is unique; otherwise it is reported unresolved.
    """
    if all(x == 0 for x in r):
        return [], []
    parts_pool = [
        e
        for e in itertools.product(*[range(x + 1) for x in r])
        if any(e) and theta_value(theta, e) == 0
    ]
    parts_pool.sort(key=lambda e: (sum(e), e))
    partitions = []

    def extend(remaining, start, current):
        if len(partitions) > 8:
            return
        if all(x == 0 for x in remaining):
            partitions.append(tuple(current))
            return
        for idx in range(start, len(parts_pool)):
            p = parts_pool[idx]
            if all(px <= rx for px, rx in zip(p, remaining)):
                extend(
                    tuple(rx - px for px, rx in zip(p, remaining)), idx, current + [p]
                )

    extend(r, 0, [])
    unique = {tuple(sorted(p)) for p in partitions}
    if len(unique) == 1:
        multiset = next(iter(unique))
        return (
            [(e, None) for e in multiset],
            ["remainder split certified by uniqueness of the partition"],
        )
    return (
        [(tuple(r), None)],
        [f"remainder {tuple(r)} left unresolved ({len(unique)} possible partitions)"],
    )


def s_equivalent(a: SEquivalenceClass, b: SEquivalenceClass):
    """Same factor multiset, matching representatives up to isomorphism."""
    from .rep import is_isomorphic

    if a.dimension_multiset() != b.dimension_multiset():
        return False
    used = [False] * len(b.factors)
    for e, rep_a in a.factors:
        matched = False
        for idx, (f, rep_b) in enumerate(b.factors):
            if used[idx] or e != f:
                continue
            if rep_a is None or rep_b is None or is_isomorphic(rep_a, rep_b):
                used[idx] = True
                matched = True
                break
        if not matched:
            return False
    return True


# -- theta-stable decomposition and moduli dimension -----------------------


def theta_stable_decomposition(
    samples, theta, limits: BuchbergerLimits = DEFAULT_LIMITS
) -> ThetaStableDecomposition:
    """Majority factor multiset of per-sample Jordan-Hoelder data."""
    if not samples:
        raise QuiverInvError("at least one sample is required")
    d = samples[0].dims
    theta = tuple(int(t) for t in theta)
    outcomes = []
    witnesses = {}
    for s in samples:
        if s.dims != d:
            raise QuiverInvError("samples have different dimension vectors")
        cls = jh_filtration_ss(s, theta, limits)
        key = cls.dimension_multiset()
        outcomes.append(key)
        witnesses.setdefault(key, cls)
    counts = {}
    for key in outcomes:
        counts[key] = counts.get(key, 0) + 1
    best = max(counts.items(), key=lambda kv: (kv[1], kv[0]))
    multiset, agreement = best
    parts = []
    for e in sorted(set(multiset)):
        parts.append((multiset.count(e), e))
    notes = ["theta-well-behavedness assumed, not decided"]
    disagreement = len(counts) > 1
    if disagreement:
        notes.append(f"samples disagree: {dict(counts)}")
    return ThetaStableDecomposition(
        parts, agreement, len(samples), disagreement, witnesses[multiset].factors, notes
    )


def moduli_dimension(
    alg, d, theta, samples, limits: BuchbergerLimits = DEFAULT_LIMITS
) -> ModuliDimensionReport:
    """dim of the moduli component: dim C - dim GL(d) + 1, via tangent data.

    The component dimension is the ambient dimension minus the largest
    Jacobian rank of the relation equations over the samples (the generic
    tangent-space estimate; exact when there are no relations).
    """
    d = tuple(int(x) for x in d)
    theta = tuple(int(t) for t in theta)
    if not samples:
        raise QuiverInvError("at least one sample is required")
    stable_found = False
    for s in samples:
        if s.dims != d:
            raise QuiverInvError("sample dimension vector mismatch")
        if king_test(s, theta, limits).status == "stable":
            stable_found = True
            break
    if not stable_found:
        raise QuiverInvError("no theta-stable sample; moduli dimension undefined")

    ambient = 0
    for a in alg.quiver.arrows:
        ambient += d[alg.vertex_index(a.tail)] * d[alg.vertex_index(a.head)]
    group_dim = sum(x * x for x in d)

    notes = []
    rank_max = 0
    if alg.relations:
        variables, _, entries = relation_entry_polynomials(alg, d)
        for s in samples:
            _, values = point_of(s)
            rows = []
            for p in entries:
                rows.append([p.derivative(i).evaluate(values) for i in range(len(variables))])
            if rows:
                rank_max = max(rank_max, RatMatrix(rows).rank())
        notes.append(
            "component dimension is a generic tangent-space estimate "
            "(relation ideal nonzero)"
        )
    component = ambient - rank_max
    return ModuliDimensionReport(
        component - group_dim + 1, component, ambient, rank_max, group_dim, notes
    )
