"""Morphism spaces, projective resolutions and Ext groups.

Hom spaces are exact kernels of the commuting-square linear system; Ext is
the cohomology of Hom(P_*, N) for a minimal projective resolution P_* built
from projective covers, so early termination certifies finite projective
dimension.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import DimensionMismatchError, QuiverInvError
from ..exactalg import RatMatrix, column_space_basis, solve
from .representation import ProjectiveModule, Representation

QQ = Fraction


class RepHom:
    """Morphism of representations: one matrix per vertex, commuting with arrows."""

    __slots__ = ("source", "target", "mats")

    def __init__(self, source, target, mats):
        self.source = source
        self.target = target
        self.mats = list(mats)

    @classmethod
    def zero(cls, source, target):
        return cls(
            source,
            target,
            [
                RatMatrix.zeros(dt, ds)
                for dt, ds in zip(target.dims, source.dims)
            ],
        )

    @classmethod
    def identity(cls, module):
        return cls(module, module, [RatMatrix.identity(d) for d in module.dims])

    def __mul__(self, other):
        """Composition self o other (apply ``other`` first)."""
        if other.target is not self.source and other.target.dims != self.source.dims:
            raise DimensionMismatchError("morphisms do not compose")
        return RepHom(
            other.source,
            self.target,
            [a * b for a, b in zip(self.mats, other.mats)],
        )

    def __add__(self, other):
        return RepHom(
            self.source, self.target, [a + b for a, b in zip(self.mats, other.mats)]
        )

    def __sub__(self, other):
        return RepHom(
            self.source, self.target, [a - b for a, b in zip(self.mats, other.mats)]
        )

    def scale(self, c):
        return RepHom(self.source, self.target, [m.scale(c) for m in self.mats])

    def is_zero(self):
        return all(m.is_zero() for m in self.mats)

    def is_invertible(self):
        return all(m.is_square() and m.is_invertible() for m in self.mats)

    def inverse(self):
        return RepHom(self.target, self.source, [m.inverse() for m in self.mats])

    def flatten(self):
        out = []
        for m in self.mats:
            for row in m.data:
                out.extend(row)
        return out

    def check(self):
        """Verify the commuting squares exactly."""
        alg = self.source.algebra
        for a in alg.quiver.arrows:
            hi = alg.vertex_index(a.head)
            ti = alg.vertex_index(a.tail)
            lhs = self.mats[hi] * self.source.matrices[a.name]
            rhs = self.target.matrices[a.name] * self.mats[ti]
            if lhs != rhs:
                return False
        return True


def hom_space(m: Representation, n: Representation):
    """Exact basis of Hom_A(M, N) as a list of RepHom."""
    alg = m.algebra
    if alg is not n.algebra:
        raise QuiverInvError("representations over different algebras")
    nvert = len(alg.vertices)
    sizes = [n.dims[v] * m.dims[v] for v in range(nvert)]
    offsets = [0]
    for s in sizes:
        offsets.append(offsets[-1] + s)
    total = offsets[-1]
    if total == 0:
        return []

    rows = []
    for a in alg.quiver.arrows:
        ti = alg.vertex_index(a.tail)
        hi = alg.vertex_index(a.head)
        ma = m.matrices[a.name]
        na = n.matrices[a.name]
        # phi_h * M(a) - N(a) * phi_t = 0, entry (i, j)
        for i in range(n.dims[hi]):
            for j in range(m.dims[ti]):
                row = [QQ(0)] * total
                for k in range(m.dims[hi]):
                    if ma.data[k][j] != 0:
                        row[offsets[hi] + i * m.dims[hi] + k] += ma.data[k][j]
                for k in range(n.dims[ti]):
                    if na.data[i][k] != 0:
                        row[offsets[ti] + k * m.dims[ti] + j] -= na.data[i][k]
                if any(x != 0 for x in row):
                    rows.append(row)

    if rows:
        kernel = RatMatrix(rows).kernel_basis()
    else:
        kernel = [
            [QQ(1) if i == j else QQ(0) for i in range(total)] for j in range(total)
        ]

    homs = []
    for vec in kernel:
        mats = []
        for v in range(nvert):
            r, c = n.dims[v], m.dims[v]
            block = RatMatrix.zeros(r, c)
            for i in range(r):
                for j in range(c):
                    block.data[i][j] = vec[offsets[v] + i * c + j]
            mats.append(block)
        homs.append(RepHom(m, n, mats))
    return homs


def hom_dim(m, n):
    return len(hom_space(m, n))


@dataclass
class ResolutionStep:
    projective: ProjectiveModule
    map: RepHom  # differential onto the previous step (or onto the module for k = 0)


@dataclass
class Resolution:
    module: Representation
    steps: list
    truncated: bool

    @property
    def pd(self):
        return None if self.truncated else len(self.steps) - 1


def _top_generators(m: Representation):
    """Per vertex, lifts of a basis of top(M) = M / rad M."""
    alg = m.algebra
    gens = []
    for idx, v in enumerate(alg.vertices):
        d = m.dims[idx]
        if d == 0:
            continue
        image_cols = []
        for a in alg.quiver.arrows_into(v):
            image_cols.extend(m.matrices[a.name].columns())
        image_cols = [c for c in image_cols if any(x != 0 for x in c)]
        span = list(image_cols)
        rank = RatMatrix(span).rank() if span else 0
        for c in range(d):
            if rank == d:
                break
            e = [QQ(0)] * d
            e[c] = QQ(1)
            trial = span + [e]
            r = RatMatrix(trial).rank()
            if r > rank:
                span = trial
                rank = r
                gens.append((v, e))
    return gens


def projective_cover(m: Representation):
    """Projective cover P -> M; returns (ProjectiveModule, RepHom)."""
    alg = m.algebra
    gens = _top_generators(m)
    proj = ProjectiveModule(alg, [v for v, _ in gens])
    eps_mats = []
    for idx, v in enumerate(alg.vertices):
        rows = m.dims[idx]
        layout = proj.layout[v]
        mat = RatMatrix.zeros(rows, len(layout))
        for j, (s_idx, path) in enumerate(layout):
            gen_vec = gens[s_idx][1]
            img = m.evaluate_path(path).apply(gen_vec)
            for i in range(rows):
                mat.data[i][j] = img[i]
        eps_mats.append(mat)
    return proj, RepHom(proj.rep, m, eps_mats)


def _kernel_subrep(hom: RepHom):
    """Kernel of a morphism as (representation, inclusion matrices)."""
    src = hom.source
    alg = src.algebra
    bases = []
    for idx in range(len(alg.vertices)):
        k = hom.mats[idx].kernel_basis()
        bases.append(
            RatMatrix.from_columns(k, rows=src.dims[idx])
            if k
            else RatMatrix.zeros(src.dims[idx], 0)
        )
    return src.sub_representation(bases)


def projective_resolution(m: Representation, length) -> Resolution:
    """Minimal projective resolution out to the requested homological degree.

    Stops early when a kernel vanishes, which certifies the projective
    dimension; otherwise the resolution is flagged as truncated.
    """
    steps = []
    current = m
    include = None  # inclusion of current kernel into previous projective
    for k in range(length + 1):
        if current.is_zero():
            return Resolution(m, steps, truncated=False)
        proj, eps = projective_cover(current)
        if include is not None:
            differential = RepHom(
                proj.rep, include.target, [a * b for a, b in zip(include.mats, eps.mats)]
            )
        else:
            differential = eps
        steps.append(ResolutionStep(proj, differential))
        kernel_rep, incl_mats = _kernel_subrep(eps)
        include = RepHom(kernel_rep, proj.rep, incl_mats)
        current = kernel_rep
    return Resolution(m, steps, truncated=not current.is_zero())


def induced_hom_matrix(p_from, p_to, connecting: RepHom, n: Representation):
    """Matrix of Hom(p_from, N) -> Hom(p_to, N) induced by a map p_to -> p_from.

    Hom out of a projective bundle is coordinatized by the value of each
    generator: Hom(p, N) = sum over summands (v, c) of N_v.
    """
    alg = n.algebra
    src_offsets = [0]
    for v in p_from.summands:
        src_offsets.append(src_offsets[-1] + n.dim(v))
    tgt_offsets = [0]
    for v in p_to.summands:
        tgt_offsets.append(tgt_offsets[-1] + n.dim(v))

    mat = RatMatrix.zeros(tgt_offsets[-1], src_offsets[-1])
    for sp_idx, w in enumerate(p_to.summands):
        vtx_idx = alg.vertex_index(w)
        _, gen_pos = p_to.generator_position(sp_idx)
        image = connecting.mats[vtx_idx].col(gen_pos)  # element of (p_from)_w
        for pos, coeff in enumerate(image):
            if coeff == 0:
                continue
            s_idx, path = p_from.layout[w][pos]
            np_mat = n.evaluate_path(path)  # N_{path.source} -> N_w
            for i in range(np_mat.rows):
                for j in range(np_mat.cols):
                    val = coeff * np_mat.data[i][j]
                    if val != 0:
                        mat.data[tgt_offsets[sp_idx] + i][
                            src_offsets[s_idx] + j
                        ] += val
    return mat


def _hom_complex_differential(res: Resolution, k, n: Representation):
    return induced_hom_matrix(
        res.steps[k].projective,
        res.steps[k + 1].projective,
        res.steps[k + 1].map,
        n,
    )


def ext_dim(m: Representation, n: Representation, l, resolution=None):
    """dim Ext^l_A(M, N), exact."""
    if l < 0:
        raise QuiverInvError("negative homological degree")
    if l == 0:
        return len(hom_space(m, n))
    res = resolution or projective_resolution(m, l + 1)
    if res.truncated and len(res.steps) < l + 2:
        raise QuiverInvError(
            f"resolution truncated before degree {l + 1}; cannot certify Ext^{l}"
        )
    if res.pd is not None and l > res.pd:
        return 0
    homdim = lambda k: sum(n.dim(v) for v in res.steps[k].projective.summands)
    rank_d_prev = (
        _hom_complex_differential(res, l - 1, n).rank() if l - 1 < len(res.steps) - 1 else 0
    )
    if l < len(res.steps) - 1:
        rank_d_l = _hom_complex_differential(res, l, n).rank()
    else:
        rank_d_l = 0  # P_{l+1} = 0
    return homdim(l) - rank_d_l - rank_d_prev


def euler_pairing_via_ext(m: Representation, n: Representation, l_cap=10):
    """Alternating sum of Ext dimensions, certified by a terminating resolution."""
    res = projective_resolution(m, l_cap)
    if res.truncated:
        raise QuiverInvError(f"projective dimension exceeds {l_cap}")
    total = 0
    for l in range(res.pd + 1):
        total += (-1) ** l * ext_dim(m, n, l, resolution=res)
    return total
