"""Generic decomposition by seeded sampling and rational-invariant predictions.

Sampling replaces the recursive canonical-decomposition machinery: each
sample is split by Krull-Schmidt and the majority multiset of summand
dimension vectors is reported with its agreement count.  Claims are
evidence-based; the artifact never asserts the non-existence of an
indecomposable component.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import QuiverInvError
from .forms import tits_form
from .rep import krull_schmidt
from .sampling import sample_many


@dataclass
class GenericDecomposition:
    parts: list            # (multiplicity, dimension vector, q label)
    confidence: int        # samples agreeing with the majority multiset
    sample_count: int
    seed: int
    disagreement: bool
    notes: list = field(default_factory=list)

    def dimension_multiset(self):
        out = []
        for mult, dv, _ in self.parts:
            out.extend([dv] * mult)
        return tuple(sorted(out))


@dataclass
class RationalInvariantsPrediction:
    transcendence_degree: int
    field_shape: str
    notes: list = field(default_factory=list)


def _q_label(alg, dv):
    q = tits_form(alg, dv)
    if q == 0:
        return "isotropic"
    if q == 1:
        return "real"
    return f"q={q}"


def generic_decomposition_sampled(
    alg, d, samples=5, seed=101, zero_arrows=None, user_reps=None
) -> GenericDecomposition:
    """Majority Krull-Schmidt pattern over seeded samples of mod(A, d)."""
    d = tuple(int(x) for x in d)
    if user_reps is not None:
        mods = list(user_reps)
        for m in mods:
            if m.dims != d:
                raise QuiverInvError("user module has the wrong dimension vector")
            ok, witness = m.validate()
            if not ok:
                raise QuiverInvError(f"user module violates relation {witness}")
    else:
        mods = sample_many(alg, d, samples, seed, zero_arrows)
    outcomes = []
    for m in mods:
        multiset = []
        for part, mult in krull_schmidt(m, seed=seed):
            multiset.extend([tuple(part.dims)] * mult)
        outcomes.append(tuple(sorted(multiset)))
    counts = {}
    for key in outcomes:
        counts[key] = counts.get(key, 0) + 1
    majority, agreement = max(counts.items(), key=lambda kv: (kv[1], kv[0]))
    parts = [
        (majority.count(dv), dv, _q_label(alg, dv)) for dv in sorted(set(majority))
    ]
    total = [0] * len(d)
    for mult, dv, _ in parts:
        total = [a + mult * b for a, b in zip(total, dv)]
    if tuple(total) != d:
        raise QuiverInvError("internal: summands do not add up to d")
    notes = []
    disagreement = len(counts) > 1
    if disagreement:
        notes.append(f"samples disagree: {dict(counts)}")
    return GenericDecomposition(
        parts, agreement, len(mods), seed, disagreement, notes
    )


def is_generic_root_sampled(alg, d, samples=5, seed=101, zero_arrows=None, user_reps=None):
    """'yes' when the sampled generic module is indecomposable, else 'no-evidence'."""
    dec = generic_decomposition_sampled(alg, d, samples, seed, zero_arrows, user_reps)
    d = tuple(int(x) for x in d)
    if len(dec.parts) == 1 and dec.parts[0][0] == 1 and dec.parts[0][1] == d:
        return "yes", dec
    return "no-evidence", dec


def predict_rational_invariants(alg, decomposition) -> RationalInvariantsPrediction:
    """Transcendence degree and field shape for asserted-tame inputs.

    ``decomposition`` is a list of (multiplicity, dimension vector) pairs or a
    GenericDecomposition; isotropic factors contribute their multiplicity to
    the transcendence degree, real factors contribute nothing.
    """
    if isinstance(decomposition, GenericDecomposition):
        pairs = [(mult, dv) for mult, dv, _ in decomposition.parts]
    else:
        pairs = [(int(m), tuple(int(x) for x in dv)) for m, dv in decomposition]
    notes = ["tameness asserted by caller, not verified"]
    degree = 0
    for mult, dv in pairs:
        q = tits_form(alg, dv)
        if q == 0:
            degree += mult
        elif q != 1:
            raise QuiverInvError(
                f"factor {dv} has q = {q}; prediction needs q in {{0, 1}}"
            )
    if degree == 0:
        shape = "k"
    elif degree == 1:
        shape = "k(x)"
    else:
        shape = "k(" + ",".join(f"x_{i + 1}" for i in range(degree)) + ")"
    return RationalInvariantsPrediction(degree, shape, notes)
