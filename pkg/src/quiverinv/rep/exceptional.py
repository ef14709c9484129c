"""Orthogonal exceptional sequence checking."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import QuiverInvError
from .endo import is_schur
from .homs import ext_dim, hom_space, projective_resolution


@dataclass
class ExceptionalReport:
    """Per-condition verdicts for a candidate orthogonal exceptional sequence."""

    exceptional: list          # condition (1) per member
    forward_vanishing: dict    # (i, j) i<j -> list of ext dims per degree, all must vanish
    backward_hom: dict         # (i, j) i<j -> dim Hom(E_j, E_i), must vanish
    ext_table: dict            # (i, j) -> list of Ext^l dims, l = 0..bound
    overall: bool
    notes: list = field(default_factory=list)


def check_exceptional_sequence(modules, l_cap=8) -> ExceptionalReport:
    """Check the three orthogonal-exceptional-sequence conditions exactly.

    Condition (1): every member has scalar endomorphisms and no
    self-extensions.  Condition (2): Ext^l(E_i, E_j) = 0 for all l >= 0 and
    i < j.  Condition (3): Hom(E_j, E_i) = 0 for i < j.
    """
    t = len(modules)
    if t == 0:
        raise QuiverInvError("empty sequence")
    for m in modules:
        ok, witness = m.validate()
        if not ok:
            raise QuiverInvError(f"member violates relation {witness}")

    resolutions = []
    pds = []
    for m in modules:
        res = projective_resolution(m, l_cap)
        if res.truncated:
            raise QuiverInvError(
                f"projective dimension exceeds {l_cap}; cannot certify Ext vanishing"
            )
        resolutions.append(res)
        pds.append(res.pd)
    bound = max(pds, default=0)

    ext_table = {}
    for i in range(t):
        for j in range(t):
            ext_table[(i, j)] = [
                ext_dim(modules[i], modules[j], l, resolution=resolutions[i])
                for l in range(bound + 1)
            ]

    exceptional = []
    for i in range(t):
        self_ext = all(ext_table[(i, i)][l] == 0 for l in range(1, bound + 1))
        exceptional.append(is_schur(modules[i]) and self_ext)

    forward = {}
    backward = {}
    for i in range(t):
        for j in range(i + 1, t):
            forward[(i, j)] = ext_table[(i, j)]
            backward[(i, j)] = len(hom_space(modules[j], modules[i]))

    overall = (
        all(exceptional)
        and all(all(d == 0 for d in dims) for dims in forward.values())
        and all(d == 0 for d in backward.values())
    )
    return ExceptionalReport(exceptional, forward, backward, ext_table, overall)
