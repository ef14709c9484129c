"""Tilting contexts: verification, End(T)^op presentation, K-theory isometry,
torsion pairs, well-positioned weights, and transport of weights and modules.

Conventions.  B = End_A(T)^op acts on Hom_A(T, M) by precomposition; an arrow
i -> j of B's Gabriel quiver corresponds to an A-morphism T_j -> T_i, so that
the arrow action Hom(T_i, M) -> Hom(T_j, M) follows the package-wide
"tail acts first" path convention and Hom_A(T, T_j) becomes the projective
B-module at vertex j.  A path alpha_1.alpha_2 of B evaluates to the
A-composition f_{alpha_1} o f_{alpha_2}.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .bound_quiver import BoundQuiverAlgebra, parse_algebra, print_algebra
from .bound_quiver.quiver import Arrow, Path, Quiver, Relation
from .errors import CannotSampleError, QuiverInvError, TransportError
from .exactalg import RatMatrix, solve
from .forms import euler_data, theta_value
from .rep import (
    EndAlgebra,
    RepHom,
    Representation,
    decompose_with_maps,
    ext_dim,
    hom_space,
    is_isomorphic,
    krull_schmidt,
    parse_representation,
    print_representation,
    projective_resolution,
)
from .rep.homs import induced_hom_matrix
from .sampling import sample_representation
from .stability import king_test

QQ = Fraction


@dataclass
class TiltingVerdict:
    is_tilting: bool
    pd: int | None
    pd_ok: bool
    self_ext_dim: int
    self_ext_ok: bool
    summand_count: int
    summand_count_ok: bool
    basic: bool
    notes: list = field(default_factory=list)


@dataclass
class WellPositionedReport:
    verdict: str              # case1 | case2 | fails | undecided
    bound: int
    samples_per_vector: int
    semistable_dims: list
    case1_counterexamples: list
    case2_counterexamples: list
    functor_ambiguous: bool
    notes: list = field(default_factory=list)


@dataclass
class TransportResult:
    module: Representation
    dimension_vector: tuple
    stability_status: str
    functor: str
    notes: list = field(default_factory=list)


class TiltingContext:
    """A verified basic tilting module with B = End_A(T)^op and the isometry u."""

    def __init__(self, T, summands, algebra_b, arrow_maps, u):
        self.T = T
        self.summands = summands
        self.B = algebra_b
        self.arrow_maps = arrow_maps  # B-arrow name -> RepHom f: T_{head} -> T_{tail}
        self.u = u                    # columns are u(e_i) for the A-vertex order
        self.algebra = T.algebra
        self._resolution_T = None

    def resolution_of_T(self):
        if self._resolution_T is None:
            self._resolution_T = projective_resolution(self.T, 2)
        return self._resolution_T

    def u_matrix(self):
        return RatMatrix(self.u)

    def u_apply(self, d):
        n = len(self.u)
        return tuple(
            sum(self.u[i][j] * int(d[j]) for j in range(n)) for i in range(n)
        )

    def u_inverse(self):
        inv = self.u_matrix().inverse()
        return [[int(x) for x in row] for row in inv.data]


def is_tilting(T: Representation) -> TiltingVerdict:
    """Projective dimension, self-extensions, and basic summand count."""
    ok, witness = T.validate()
    if not ok:
        raise QuiverInvError(f"T violates relation {witness}")
    res = projective_resolution(T, 2)
    pd = res.pd
    pd_ok = (not res.truncated) and pd is not None and pd <= 1
    self_ext = ext_dim(T, T, 1, resolution=res if pd_ok else None)
    self_ext_ok = self_ext == 0
    ks = krull_schmidt(T)
    count = sum(mult for _, mult in ks)
    n = len(T.algebra.vertices)
    count_ok = count == n
    basic = all(mult == 1 for _, mult in ks)
    verdict = TiltingVerdict(
        pd_ok and self_ext_ok and count_ok and basic,
        pd,
        pd_ok,
        self_ext,
        self_ext_ok,
        count,
        count_ok,
        basic,
    )
    if not basic:
        verdict.notes.append("repeated summands: T is not basic")
    return verdict


def _order_summands(T, summand_order):
    parts = [s.module for s in decompose_with_maps(T)]
    if summand_order is None:
        return parts
    if len(summand_order) != len(parts):
        raise QuiverInvError("summand_order length does not match the summand count")
    ordered = []
    used = [False] * len(parts)
    for wanted in summand_order:
        for idx, p in enumerate(parts):
            if not used[idx] and is_isomorphic(p, wanted):
                ordered.append(p)
                used[idx] = True
                break
        else:
            raise QuiverInvError("summand_order entry matches no summand of T")
    return ordered


def _coords_against(basis_homs, hom):
    cols = [h.flatten() for h in basis_homs]
    mat = RatMatrix(cols).transpose()
    return solve(mat, hom.flatten())


def end_algebra_presentation(T, summand_order=None):
    """Bound quiver presentation of B = End_A(T)^op plus the arrow morphisms.

    Returns (summands, algebra_B, arrow_maps).  Desk scale only: dim B <= 30.
    """
    summands = _order_summands(T, summand_order)
    n = len(summands)
    blocks = {
        (i, j): hom_space(summands[i], summands[j]) for i in range(n) for j in range(n)
    }
    dim_b = sum(len(b) for b in blocks.values())
    if dim_b > 30:
        raise QuiverInvError(f"dim End(T) = {dim_b} exceeds the desk-scale bound 30")

    # radical blocks: everything off-diagonal, trace-form radical on the diagonal
    rad = {}
    for i in range(n):
        for j in range(n):
            if i != j:
                rad[(i, j)] = list(blocks[(i, j)])
            else:
                endo = EndAlgebra(summands[i])
                rad[(i, j)] = [endo.from_coords(v) for v in endo.radical_coords()]

    # rad^2 blocks through every intermediate summand
    def rad_square(i, j):
        out = []
        for k in range(n):
            for f in rad[(i, k)]:
                for g in rad[(k, j)]:
                    out.append(g * f)
        return out

    arrows = []
    arrow_maps = {}
    counter = 0
    for i in range(n):          # B-arrow i -> j needs an A-map T_j -> T_i
        for j in range(n):
            block = rad[(j, i)]
            if not block:
                continue
            sq = rad_square(j, i)
            flat_sq = [h.flatten() for h in sq]
            base_rank = RatMatrix(flat_sq).rank() if flat_sq else 0
            chosen = []
            current = list(flat_sq)
            rank = base_rank
            for h in block:
                trial = current + [h.flatten()]
                r = RatMatrix(trial).rank()
                if r > rank:
                    rank = r
                    current = trial
                    chosen.append(h)
            for h in chosen:
                name = f"g{counter}"
                counter += 1
                arrows.append(Arrow(name, str(i + 1), str(j + 1)))
                arrow_maps[name] = h

    quiver = Quiver([str(i + 1) for i in range(n)], arrows)

    # nilpotency degree of the radical
    level = {key: list(val) for key, val in rad.items()}
    nil = 1
    while any(level[key] for key in level) and nil <= dim_b + 1:
        nxt = {}
        for i in range(n):
            for j in range(n):
                acc = []
                for k in range(n):
                    for f in level.get((i, k), []):
                        for g in rad[(k, j)]:
                            c = g * f
                            if not c.is_zero():
                                acc.append(c)
                nxt[(i, j)] = acc
        level = nxt
        nil += 1

    def evaluate_path(names):
        homs = [arrow_maps[nm] for nm in names]
        acc = homs[-1]
        for h in reversed(homs[:-1]):
            acc = h * acc
        return acc

    # kernel of the evaluation on parallel paths of length 2..nil
    relations = []
    paths_by_block = {}
    for length in range(2, nil + 1):
        for combo in _paths_in_quiver(quiver, length):
            src, tgt = combo[0], combo[1]
            paths_by_block.setdefault((src, tgt), []).append(combo[2])
    for (src, tgt), paths in sorted(paths_by_block.items()):
        i = int(src) - 1
        j = int(tgt) - 1
        target_block = blocks[(j, i)]  # values live in Hom(T_j, T_i)
        flat = []
        for names in paths:
            value = evaluate_path(names)
            flat.append(value.flatten())
        if not flat:
            continue
        width = len(flat[0])
        kernel = (
            RatMatrix(flat).transpose().kernel_basis()
            if width
            else [
                [QQ(1) if a == b else QQ(0) for a in range(len(paths))]
                for b in range(len(paths))
            ]
        )
        for vec in kernel:
            terms = []
            for c, names in zip(vec, paths):
                if c:
                    terms.append((c, Path.from_arrows(quiver, names)))
            if terms:
                relations.append(Relation(terms))

    algebra_b = _pruned_algebra(quiver, relations, dim_b, nil, name="B")
    return summands, algebra_b, arrow_maps


def _paths_in_quiver(quiver, length):
    """(source, target, arrow-name tuple) for all paths of a given length."""
    out = []
    current = [
        (a.tail, a.head, (a.name,)) for a in quiver.arrows
    ]
    for _ in range(length - 1):
        nxt = []
        for src, tgt, names in current:
            for a in quiver.arrows:
                if a.tail == tgt:
                    nxt.append((src, a.head, names + (a.name,)))
        current = nxt
    return current


def _pruned_algebra(quiver, relations, expected_dim, l_max, name):
    """Drop redundant relations while the algebra keeps the expected dimension."""
    def build(rels):
        alg = BoundQuiverAlgebra(quiver, rels, name=name)
        verdict = alg.check_admissible(max(l_max + 1, 4))
        if verdict.status.value != "admissible":
            return None
        return alg

    alg = build(relations)
    if alg is None or alg.dimension != expected_dim:
        raise QuiverInvError(
            "presentation of End(T)^op failed the dimension cross-check"
        )
    keep = list(relations)
    changed = True
    while changed:
        changed = False
        for idx in range(len(keep)):
            trial = keep[:idx] + keep[idx + 1 :]
            cand = build(trial)
            if cand is not None and cand.dimension == expected_dim:
                keep = trial
                changed = True
                break
    return build(keep)


def induced_isometry(summands, algebra_a, algebra_b):
    """Integer matrix u with u(dim M) = dim Hom(T, M) - dim Ext^1(T, M).

    Columns are the values on the simples; unimodularity and preservation of
    the Euler pairings are verified exactly.
    """
    from .rep import simple

    n = len(algebra_a.vertices)
    cols = []
    resolutions = [projective_resolution(s, 2) for s in summands]
    for i, v in enumerate(algebra_a.vertices):
        s_i = simple(algebra_a, v)
        col = []
        for t_idx, t in enumerate(summands):
            h = len(hom_space(t, s_i))
            e = ext_dim(t, s_i, 1, resolution=resolutions[t_idx])
            col.append(h - e)
        cols.append(col)
    u = [[cols[j][i] for j in range(n)] for i in range(n)]

    det = RatMatrix(u).det()
    if det not in (1, -1):
        raise QuiverInvError(f"induced map on K_0 has determinant {det}, not a unit")
    c_a = euler_data(algebra_a).matrix
    c_b = euler_data(algebra_b).matrix

    def pair(c, x, y):
        return sum(x[i] * c[i][j] * y[j] for i in range(n) for j in range(n))

    for i in range(n):
        for j in range(n):
            e_i = [1 if k == i else 0 for k in range(n)]
            e_j = [1 if k == j else 0 for k in range(n)]
            ui = [sum(u[r][k] * e_i[k] for k in range(n)) for r in range(n)]
            uj = [sum(u[r][k] * e_j[k] for k in range(n)) for r in range(n)]
            if pair(c_a, e_i, e_j) != pair(c_b, ui, uj):
                raise QuiverInvError(
                    "induced map on K_0 does not preserve the Euler pairing"
                )
    return u


def build_tilting_context(T, summand_order=None) -> TiltingContext:
    verdict = is_tilting(T)
    if not verdict.is_tilting:
        raise QuiverInvError(f"T is not a basic tilting module: {verdict}")
    summands, algebra_b, arrow_maps = end_algebra_presentation(T, summand_order)
    u = induced_isometry(summands, T.algebra, algebra_b)
    return TiltingContext(T, summands, algebra_b, arrow_maps, u)


def torsion_membership(ctx: TiltingContext, m: Representation):
    """Membership in the torsion pair (T(T), F(T)) = (Ext^1(T,-) = 0, Hom(T,-) = 0)."""
    notes = []
    if m.total_dim == 0:
        return "torsion", ["zero module lies in both classes"]
    hom = len(hom_space(ctx.T, m))
    ext1 = ext_dim(ctx.T, m, 1, resolution=ctx.resolution_of_T())
    if ext1 == 0:
        return "torsion", notes
    if hom == 0:
        return "torsion-free", notes
    return "neither", notes


def is_well_positioned(
    ctx: TiltingContext,
    theta,
    bound=4,
    samples_per_vector=3,
    seed=7,
    zero_arrows=None,
) -> WellPositionedReport:
    """Bounded semi-decision of the two well-positioned alternatives.

    Scans all dimension vectors of total dimension <= bound, sampling modules
    and filtering indecomposable summands; "fails" is certified by explicit
    counterexamples, positive verdicts hold up to the bound and sample counts.
    """
    alg = ctx.algebra
    theta = tuple(int(t) for t in theta)
    n = len(alg.vertices)
    rng = random.Random(seed)
    res_t = ctx.resolution_of_T()

    semistable_dims = []
    case1_bad = []  # (dimension vector, reason)
    case2_bad = []
    ss_in_torsion = False
    ss_in_torsion_free = False
    notes = []

    vectors = [
        e
        for e in itertools.product(*[range(bound + 1)] * n)
        if 0 < sum(e) <= bound
    ]
    vectors.sort(key=lambda e: (sum(e), e))
    sampling_failed = False
    for e in vectors:
        mods = []
        try:
            for _ in range(samples_per_vector):
                mods.append(sample_representation(alg, e, rng, zero_arrows))
        except CannotSampleError:
            sampling_failed = True
            notes.append(f"cannot sample dimension vector {e}")
            continue
        indecs = []
        for m in mods:
            for part, _ in krull_schmidt(m):
                indecs.append(part)
        for x in indecs:
            tx = theta_value(theta, x.dims)
            hom0 = len(hom_space(ctx.T, x)) == 0
            ext0 = ext_dim(ctx.T, x, 1, resolution=res_t) == 0
            if hom0 and x.total_dim > 0 and tx >= 0:
                case1_bad.append((x.dims, f"theta = {tx} >= 0 on a torsion-free module"))
            if ext0 and x.total_dim > 0 and tx <= 0:
                case2_bad.append((x.dims, f"theta = {tx} <= 0 on a torsion module"))
        if theta_value(theta, e) == 0:
            for m in mods:
                verdict = king_test(m, theta)
                if verdict.status in ("stable", "strictly semistable") and m.total_dim:
                    semistable_dims.append(e)
                    hom0 = len(hom_space(ctx.T, m)) == 0
                    ext0 = ext_dim(ctx.T, m, 1, resolution=res_t) == 0
                    if ext0:
                        ss_in_torsion = True
                    else:
                        case1_bad.append(
                            (e, "semistable module outside the torsion class")
                        )
                    if hom0:
                        ss_in_torsion_free = True
                    else:
                        case2_bad.append(
                            (e, "semistable module outside the torsion-free class")
                        )
                    break

    ambiguous = ss_in_torsion and ss_in_torsion_free
    if not semistable_dims:
        verdict = "undecided"
        notes.append("no nonzero semistable module found up to the bound")
    elif not case1_bad and case2_bad:
        verdict = "case1"
    elif not case2_bad and case1_bad:
        verdict = "case2"
    elif case1_bad and case2_bad:
        verdict = "fails"
    else:
        verdict = "undecided"
        notes.append("neither alternative falsified; sampling inconclusive")
    if sampling_failed and verdict in ("case1", "case2"):
        notes.append("verified only on sampleable strata")
    return WellPositionedReport(
        verdict,
        bound,
        samples_per_vector,
        sorted(set(semistable_dims)),
        case1_bad,
        case2_bad,
        ambiguous,
        notes,
    )


def transport_weight(ctx: TiltingContext, theta, case):
    """theta' = theta o u^{-1} in case 1, its negative in case 2."""
    theta = tuple(int(t) for t in theta)
    if case not in ("case1", "case2"):
        raise TransportError(f"transport requires a verified case, got {case!r}")
    inv = ctx.u_inverse()
    n = len(inv)
    out = tuple(
        sum(theta[i] * inv[i][j] for i in range(n)) for j in range(n)
    )
    if case == "case2":
        out = tuple(-x for x in out)
    return out


def _hom_functor_module(ctx: TiltingContext, m: Representation):
    """The B-module Hom_A(T, -) of m, with Hom(T_i, m) at vertex i."""
    bases = [hom_space(t, m) for t in ctx.summands]
    dims = [len(b) for b in bases]
    mats = {}
    for a in ctx.B.quiver.arrows:
        i = int(a.tail) - 1
        j = int(a.head) - 1
        f = ctx.arrow_maps[a.name]  # T_j -> T_i
        mat = RatMatrix.zeros(dims[j], dims[i])
        for k, phi in enumerate(bases[i]):
            psi = phi * f  # T_j -> m
            if dims[j]:
                coords = _coords_against(bases[j], psi)
                if coords is None:
                    raise TransportError("functor image escaped the Hom basis")
                for r in range(dims[j]):
                    mat.data[r][k] = coords[r]
            elif not psi.is_zero():
                raise TransportError("nonzero image in a zero Hom space")
        mats[a.name] = mat
    module = Representation(ctx.B, dims, mats)
    ok, witness = module.validate()
    if not ok:
        raise TransportError(f"transported module violates B-relation {witness}")
    return module


def _ext_functor_module(ctx: TiltingContext, m: Representation):
    """The B-module Ext^1_A(T, -) of m, via chain maps between resolutions."""
    n = len(ctx.summands)
    data = []
    for t in ctx.summands:
        res = projective_resolution(t, 1)
        if res.truncated or res.pd is None or res.pd > 1:
            raise TransportError("summand has projective dimension > 1")
        if len(res.steps) == 1:
            data.append((res, None))
        else:
            data.append((res, res.steps[1]))

    def hom_coord_dim(step, target):
        return sum(target.dim(v) for v in step.projective.summands)

    # cokernel bases of Hom(P0, m) -> Hom(P1, m)
    coker = []
    for res, step1 in data:
        if step1 is None:
            coker.append((0, [], None, None))
            continue
        d_mat = induced_hom_matrix(res.steps[0].projective, step1.projective, step1.map, m)
        total = hom_coord_dim(step1, m)
        red = d_mat.transpose().rref()  # rows span the image
        pivot = set(red.pivots)
        free = [c for c in range(total) if c not in pivot]
        coker.append((len(free), free, d_mat, total))

    dims = [c[0] for c in coker]
    mats = {}
    for a in ctx.B.quiver.arrows:
        i = int(a.tail) - 1
        j = int(a.head) - 1
        f = ctx.arrow_maps[a.name]  # T_j -> T_i
        di, free_i, dmat_i, total_i = coker[i]
        dj, free_j, dmat_j, total_j = coker[j]
        mat = RatMatrix.zeros(dj, di)
        if di and dj:
            res_i, step1_i = data[i]
            res_j, step1_j = data[j]
            g0 = _lift_through_cover(res_j, res_i, f)
            g1 = _lift_through_differential(step1_j, step1_i, g0)
            gmat = induced_hom_matrix(
                step1_i.projective, step1_j.projective, g1, m
            )
            for col, pos in enumerate(free_i):
                vec = gmat.col(pos)
                coords = _coker_coords(dmat_j, free_j, vec)
                for r in range(dj):
                    mat.data[r][col] = coords[r]
        mats[a.name] = mat
    module = Representation(ctx.B, dims, mats)
    ok, witness = module.validate()
    if not ok:
        raise TransportError(f"transported module violates B-relation {witness}")
    return module


def _lift_through_cover(res_from, res_to, f):
    """g0: P0(from) -> P0(to) with eps_to o g0 = f o eps_from."""
    p_from = res_from.steps[0]
    p_to = res_to.steps[0]
    basis = hom_space(p_from.projective.rep, p_to.projective.rep)
    target = f * p_from.map
    cols = [(p_to.map * h).flatten() for h in basis]
    sol = solve(RatMatrix(cols).transpose(), target.flatten())
    if sol is None:
        raise TransportError("chain-map lift through the cover failed")
    g0 = RepHom.zero(p_from.projective.rep, p_to.projective.rep)
    for c, h in zip(sol, basis):
        if c:
            g0 = g0 + h.scale(c)
    return g0


def _lift_through_differential(step_from, step_to, g0):
    """g1: P1(from) -> P1(to) with d_to o g1 = g0 o d_from."""
    basis = hom_space(step_from.projective.rep, step_to.projective.rep)
    target = g0 * step_from.map
    cols = [(step_to.map * h).flatten() for h in basis]
    sol = solve(RatMatrix(cols).transpose(), target.flatten())
    if sol is None:
        raise TransportError("chain-map lift through the differential failed")
    g1 = RepHom.zero(step_from.projective.rep, step_to.projective.rep)
    for c, h in zip(sol, basis):
        if c:
            g1 = g1 + h.scale(c)
    return g1


def _coker_coords(d_mat, free, vec):
    """Coordinates of a vector in the chosen cokernel basis."""
    if d_mat is None:
        return []
    cols = [d_mat.col(j) for j in range(d_mat.cols)]
    unit_cols = []
    size = len(vec)
    for pos in free:
        e = [QQ(0)] * size
        e[pos] = QQ(1)
        unit_cols.append(e)
    mat = RatMatrix(cols + unit_cols).transpose() if cols or unit_cols else None
    sol = solve(mat, list(vec))
    if sol is None:
        raise QuiverInvError("cokernel coordinates not found")
    return sol[len(cols):]


def functor_image(ctx: TiltingContext, m: Representation, functor):
    """Raw image under Hom_A(T, -) or Ext^1_A(T, -), without stability checks."""
    if functor == "hom":
        return _hom_functor_module(ctx, m)
    if functor == "ext":
        return _ext_functor_module(ctx, m)
    raise QuiverInvError(f"unknown functor {functor!r}")


def transport_module(
    ctx: TiltingContext, m: Representation, theta, case, check_stability=True
) -> TransportResult:
    """Image of a semistable module under the tilting functor of the case.

    Case 1 uses Hom_A(T, -) on torsion modules; case 2 uses Ext^1_A(T, -) on
    torsion-free modules.  The instance check (the image must be semistable
    for the transported weight) is performed and a failure is a hard error.
    """
    theta = tuple(int(t) for t in theta)
    if case not in ("case1", "case2"):
        raise TransportError(f"transport requires a verified case, got {case!r}")
    notes = []
    if m.total_dim == 0:
        zero = Representation(ctx.B, [0] * len(ctx.B.vertices))
        return TransportResult(zero, zero.dims, "strictly semistable", "zero", ["zero module"])
    verdict = king_test(m, theta)
    if verdict.status not in ("stable", "strictly semistable"):
        raise TransportError(f"module is not semistable ({verdict.status})")

    if case == "case1":
        if ext_dim(ctx.T, m, 1, resolution=ctx.resolution_of_T()) != 0:
            raise TransportError("case 1 transport needs a torsion module")
        image = _hom_functor_module(ctx, m)
        expected = ctx.u_apply(m.dims)
        functor = "Hom"
    else:
        if len(hom_space(ctx.T, m)) != 0:
            raise TransportError("case 2 transport needs a torsion-free module")
        image = _ext_functor_module(ctx, m)
        expected = tuple(-x for x in ctx.u_apply(m.dims))
        functor = "Ext1"
    if tuple(image.dims) != expected:
        raise TransportError(
            f"transported dimension vector {image.dims} differs from {expected}"
        )
    status = ""
    if check_stability:
        theta_b = transport_weight(ctx, theta, case)
        verdict_b = king_test(image, theta_b)
        status = verdict_b.status
        if verdict_b.status not in ("stable", "strictly semistable"):
            raise TransportError(
                f"instance check failed: image is {verdict_b.status} over B"
            )
    return TransportResult(image, tuple(image.dims), status, functor, notes)


# -- serialization ----------------------------------------------------------


def write_tilting_context(ctx: TiltingContext) -> str:
    """Summand representation files, B's algebra file, and the u-matrix block."""
    lines = ["tilting-context"]
    for idx, t in enumerate(ctx.summands):
        lines.append(f"summand {idx + 1}")
        lines.append(print_representation(t, algebra_name=ctx.algebra.name).rstrip("\n"))
    lines.append("algebra-B")
    lines.append(print_algebra(ctx.B).rstrip("\n"))
    n = len(ctx.u)
    lines.append(f"u rows {n} cols {n}")
    for row in ctx.u:
        lines.append(" ".join(str(x) for x in row))
    return "\n".join(lines) + "\n"


def read_tilting_context(text, algebra) -> TiltingContext:
    """Rebuild and re-verify a context from its serialized form."""
    body = text.splitlines()
    if not body or body[0].strip() != "tilting-context":
        raise QuiverInvError("missing tilting-context header")
    sections = []
    current = None
    mode = None
    stored_u = []
    b_text = []
    for line in body[1:]:
        stripped = line.strip()
        if stripped.startswith("summand "):
            if current is not None:
                sections.append(current)
            current = []
            mode = "summand"
            continue
        if stripped == "algebra-B":
            if current is not None:
                sections.append(current)
            current = None
            mode = "algebra"
            continue
        if stripped.startswith("u rows"):
            mode = "u"
            continue
        if mode == "summand":
            current.append(line)
        elif mode == "algebra":
            b_text.append(line)
        elif mode == "u" and stripped:
            stored_u.append([int(x) for x in stripped.split()])
    if current is not None:
        sections.append(current)
    summands = [
        parse_representation("\n".join(sec), algebra) for sec in sections
    ]
    T = summands[0]
    for s in summands[1:]:
        T = T.direct_sum(s)
    ctx = build_tilting_context(T, summand_order=summands)
    if stored_u and ctx.u != stored_u:
        raise QuiverInvError("stored u matrix disagrees with the rebuilt context")
    stored_b = parse_algebra("\n".join(b_text), name="B")
    if len(stored_b.quiver.arrows) != len(ctx.B.quiver.arrows):
        raise QuiverInvError("stored B presentation disagrees with the rebuilt context")
    return ctx
