"""Deterministic small-height rational point search on polynomial systems.

Variables are fixed one at a time from a candidate list, re-checking
consistency of the substituted system with Buchberger after each choice and
backtracking on dead ends.  A returned point is always verified by exact
evaluation, so Groebner verdicts only steer the search.
"""

from __future__ import annotations

from fractions import Fraction

from .groebner import BuchbergerLimits, Consistency, DEFAULT_LIMITS, groebner_inconsistent
from .poly import Polynomial

DEFAULT_CANDIDATES = tuple(
    Fraction(x)
    for x in (0, 1, -1, 2, -2, Fraction(1, 2), Fraction(-1, 2), 3, -3,
              Fraction(1, 3), Fraction(-1, 3), Fraction(3, 2), Fraction(-3, 2),
              Fraction(2, 3), Fraction(-2, 3), 4, -4)
)


def _substitute_all(polys, index, value):
    out = []
    for p in polys:
        q = p.substitute(index, value)
        if q.is_zero():
            continue
        if q.is_constant():
            return None  # nonzero constant: dead branch
        out.append(q)
    return out


def find_rational_point(
    polys,
    limits: BuchbergerLimits = DEFAULT_LIMITS,
    candidates=DEFAULT_CANDIDATES,
    node_budget=4000,
):
    """Search for a common rational zero; returns a value list or None.

    ``None`` means the bounded search failed, not that no point exists.
    """
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return []
    variables = polys[0].variables
    nvars = len(variables)
    for p in polys:
        if p.is_constant():
            return None

    if groebner_inconsistent(polys, limits) is Consistency.INCONSISTENT:
        return None

    budget = [node_budget]

    def search(system, index, assignment):
        if budget[0] <= 0:
            return None
        if index == nvars:
            point = [assignment[i] for i in range(nvars)]
            if all(p.evaluate(point) == 0 for p in polys):
                return point
            return None
        for value in candidates:
            budget[0] -= 1
            if budget[0] <= 0:
                return None
            reduced = _substitute_all(system, index, value)
            if reduced is None:
                continue
            if reduced and groebner_inconsistent(reduced, limits) is Consistency.INCONSISTENT:
                continue
            assignment[index] = value
            found = search(reduced, index + 1, assignment)
            if found is not None:
                return found
            del assignment[index]
        return None

    return search(polys, 0, {})
