"""Buchberger completion with Gebauer-Moller pair elimination.

The only question this module answers is emptiness of an affine variety over
the algebraic closure: ``1`` lies in the ideal iff there is no common zero.
A hard resource cap turns the answer into a three-valued verdict instead of
stalling; ``UNDECIDED`` is a first-class outcome, never a silent ``False``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from ..errors import DimensionMismatchError
from .poly import (
    Polynomial,
    grevlex_key,
    monomial_div,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
)


class Consistency(enum.Enum):
    INCONSISTENT = "inconsistent"  # 1 in the ideal: empty variety
    CONSISTENT = "consistent"      # completed basis without a unit
    UNDECIDED = "undecided"        # resource cap hit


@dataclass(frozen=True)
class BuchbergerLimits:
    max_basis: int = 5000
    max_degree: int = 30


DEFAULT_LIMITS = BuchbergerLimits()


class _CapExceeded(Exception):
    pass


def normal_form(p: Polynomial, basis) -> Polynomial:
    """Fully reduce ``p`` modulo ``basis`` (list of monic polynomials)."""
    remainder_terms = {}
    work = p
    while not work.is_zero():
        exp, coeff = work.leading()
        reducer = None
        for g in basis:
            g_exp, _ = g.leading()
            if monomial_divides(g_exp, exp):
                reducer = g
                break
        if reducer is None:
            remainder_terms[exp] = remainder_terms.get(exp, 0) + coeff
            work = work - Polynomial(work.variables, {exp: coeff})
        else:
            g_exp, g_coeff = reducer.leading()
            work = work - reducer.term_mul(monomial_div(exp, g_exp), coeff / g_coeff)
    return Polynomial(p.variables, remainder_terms)


def _s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    f_exp, f_c = f.leading()
    g_exp, g_c = g.leading()
    lcm = monomial_lcm(f_exp, g_exp)
    return f.term_mul(monomial_div(lcm, f_exp), 1 / f_c) - g.term_mul(
        monomial_div(lcm, g_exp), 1 / g_c
    )


def _update_pairs(basis, pairs, new_index):
    """Gebauer-Moller installation of the pairs involving a new element."""
    lm = lambda i: basis[i].leading()[0]
    t = new_index
    lt = lm(t)

    fresh = [(monomial_lcm(lm(i), lt), i, t) for i in range(t)]

    # M criterion: drop (i,t) when another new pair's lcm properly divides its lcm.
    kept1 = []
    for lcm_it, i, _ in fresh:
        dominated = False
        for lcm_jt, j, _ in fresh:
            if j == i:
                continue
            if lcm_jt != lcm_it and monomial_divides(lcm_jt, lcm_it):
                dominated = True
                break
        if not dominated:
            kept1.append((lcm_it, i, t))

    # F criterion: keep a single representative per lcm value.
    seen = {}
    for lcm_it, i, _ in kept1:
        if lcm_it not in seen:
            seen[lcm_it] = (lcm_it, i, t)
    kept2 = list(seen.values())

    # Buchberger's product criterion: coprime leading monomials reduce to zero.
    kept3 = [
        (lcm_it, i, t)
        for lcm_it, i, t in kept2
        if lcm_it != monomial_mul(lm(i), lt)
    ]

    # B criterion on the surviving old pairs.
    surviving_old = []
    for lcm_ij, i, j in pairs:
        if (
            monomial_divides(lt, lcm_ij)
            and monomial_lcm(lm(i), lt) != lcm_ij
            and monomial_lcm(lm(j), lt) != lcm_ij
        ):
            continue
        surviving_old.append((lcm_ij, i, j))

    return surviving_old + kept3


def buchberger(polys, limits: BuchbergerLimits = DEFAULT_LIMITS):
    """Compute a Groebner basis under grevlex, subject to resource caps.

    Returns ``(basis, verdict)``; the basis is only meaningful when the
    verdict is not UNDECIDED.  An element with constant leading term makes
    the ideal the unit ideal and short-circuits to INCONSISTENT.
    """
    variables = None
    for p in polys:
        if variables is None:
            variables = p.variables
        elif p.variables != variables:
            raise DimensionMismatchError("all polynomials must share one variable list")
    nonzero = [p.monic() for p in polys if not p.is_zero()]
    if variables is None:
        variables = ()
    for p in nonzero:
        if p.is_constant():
            return [Polynomial.constant(variables, 1)], Consistency.INCONSISTENT
    if not nonzero:
        return [], Consistency.CONSISTENT

    basis = []
    pairs = []
    try:
        for p in nonzero:
            red = normal_form(p, basis)
            if red.is_zero():
                continue
            if red.is_constant():
                return basis, Consistency.INCONSISTENT
            basis.append(red.monic())
            _check_caps(basis, red, limits)
            pairs = _update_pairs(basis, pairs, len(basis) - 1)

        while pairs:
            pairs.sort(key=lambda pr: grevlex_key(pr[0]), reverse=True)
            lcm_ij, i, j = pairs.pop()
            s = _s_polynomial(basis[i], basis[j])
            red = normal_form(s, basis)
            if red.is_zero():
                continue
            if red.is_constant():
                return basis, Consistency.INCONSISTENT
            basis.append(red.monic())
            _check_caps(basis, red, limits)
            pairs = _update_pairs(basis, pairs, len(basis) - 1)
    except _CapExceeded:
        return basis, Consistency.UNDECIDED

    return _interreduce(basis), Consistency.CONSISTENT


def _check_caps(basis, newest, limits):
    if len(basis) > limits.max_basis or newest.total_degree() > limits.max_degree:
        raise _CapExceeded


def _interreduce(basis):
    reduced = []
    for idx, g in enumerate(basis):
        others = basis[:idx] + basis[idx + 1 :]
        r = normal_form(g, [h for h in others if not h.is_zero()])
        if not r.is_zero():
            reduced.append(r.monic())
    reduced.sort(key=lambda g: grevlex_key(g.leading()[0]))
    return reduced


def groebner_inconsistent(polys, limits: BuchbergerLimits = DEFAULT_LIMITS) -> Consistency:
    """Decide whether a polynomial system has no common zero over the closure."""
    _, verdict = buchberger(polys, limits)
    return verdict
