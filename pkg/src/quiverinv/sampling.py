"""Seeded random sampling of module-variety points.

Hereditary algebras are sampled uniformly; for monomial relations a
zero-assignment scheme (a set of arrows forced to zero that kills every
relation) makes sampling exact on the chosen stratum.  Anything else needs
user-supplied modules.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import CannotSampleError, QuiverInvError
from .exactalg import RatMatrix
from .rep import Representation

QQ = Fraction


def random_entry(rng: random.Random):
    """Uniform integer in [-9, 9] over a random denominator in [1, 9]."""
    return Fraction(rng.randint(-9, 9), rng.randint(1, 9))


def random_matrix(rows, cols, rng):
    if rows == 0 or cols == 0:
        return RatMatrix.zeros(rows, cols)
    return RatMatrix([[random_entry(rng) for _ in range(cols)] for _ in range(rows)])


def random_invertible(n, rng):
    while True:
        m = random_matrix(n, n, rng)
        if n == 0 or m.is_invertible():
            return m


def validate_zero_scheme(alg, zero_arrows):
    """A zero scheme must hit every relation; relations must be monomial."""
    zero_arrows = set(zero_arrows)
    unknown = zero_arrows - {a.name for a in alg.quiver.arrows}
    if unknown:
        raise QuiverInvError(f"zero scheme names unknown arrows {sorted(unknown)}")
    for rel in alg.relations:
        if len(rel.terms) != 1:
            raise CannotSampleError(
                "zero-assignment schemes apply to monomial relations only"
            )
        _, path = rel.terms[0]
        if not any(name in zero_arrows for name in path.arrows):
            raise CannotSampleError(
                f"zero scheme misses the relation path {path.label()}"
            )
    return zero_arrows


def sample_representation(alg, d, rng, zero_arrows=None) -> Representation:
    """One exact random point of mod(A, d); relations are verified afterwards."""
    d = tuple(int(x) for x in d)
    if alg.relations:
        if zero_arrows is None:
            raise CannotSampleError(
                "no sampling strategy for relations; provide a zero scheme "
                "or explicit modules"
            )
        zeros = validate_zero_scheme(alg, zero_arrows)
    else:
        zeros = set()
    mats = {}
    for a in alg.quiver.arrows:
        rows = d[alg.vertex_index(a.head)]
        cols = d[alg.vertex_index(a.tail)]
        if a.name in zeros:
            mats[a.name] = RatMatrix.zeros(rows, cols)
        else:
            mats[a.name] = random_matrix(rows, cols, rng)
    rep = Representation(alg, d, mats)
    ok, witness = rep.validate()
    if not ok:
        raise CannotSampleError(f"sampled module violates relation {witness}")
    return rep


def sample_many(alg, d, count, seed, zero_arrows=None):
    rng = random.Random(seed)
    return [sample_representation(alg, d, rng, zero_arrows) for _ in range(count)]
