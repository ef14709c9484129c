"""Multivariate polynomials over the rationals with a fixed variable list.

The monomial order used throughout is graded reverse lexicographic with the
variable order given by the declaration order of the variable list.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import DimensionMismatchError

QQ = Fraction


def grevlex_key(exp):
    """Sort key realizing graded reverse lexicographic order (max = leading)."""
    return (sum(exp), tuple(-e for e in reversed(exp)))


def monomial_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a, b):
    """Whether monomial a divides monomial b."""
    return all(x <= y for x, y in zip(a, b))


def monomial_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def monomial_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


class Polynomial:
    """Polynomial stored as a map from exponent vectors to nonzero coefficients."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables, terms=None):
        self.variables = tuple(variables)
        clean = {}
        if terms:
            n = len(self.variables)
            for exp, coeff in terms.items():
                exp = tuple(int(e) for e in exp)
                if len(exp) != n:
                    raise DimensionMismatchError(
                        "exponent vector length does not match variable count"
                    )
                c = coeff if isinstance(coeff, Fraction) else Fraction(coeff)
                if c != 0:
                    clean[exp] = clean.get(exp, QQ(0)) + c
                    if clean[exp] == 0:
                        del clean[exp]
        self.terms = clean

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, variables):
        return cls(variables, {})

    @classmethod
    def constant(cls, variables, c):
        vars_ = tuple(variables)
        return cls(vars_, {tuple([0] * len(vars_)): Fraction(c)})

    @classmethod
    def variable(cls, variables, name):
        vars_ = tuple(variables)
        idx = vars_.index(name)
        exp = [0] * len(vars_)
        exp[idx] = 1
        return cls(vars_, {tuple(exp): QQ(1)})

    # -- structure -------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self):
        return self.terms.get(tuple([0] * len(self.variables)), QQ(0))

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def leading(self):
        """Leading (monomial, coefficient) under grevlex."""
        exp = max(self.terms, key=grevlex_key)
        return exp, self.terms[exp]

    def monic(self):
        if self.is_zero():
            return self
        _, c = self.leading()
        return self.scale(1 / c)

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.variables == other.variables
            and self.terms == other.terms
        )

    def __repr__(self):
        if self.is_zero():
            return "0"
        bits = []
        for exp in sorted(self.terms, key=grevlex_key, reverse=True):
            c = self.terms[exp]
            mono = "*".join(
                f"{v}^{e}" if e > 1 else v
                for v, e in zip(self.variables, exp)
                if e > 0
            )
            bits.append(f"{c}" if not mono else (f"{c}*{mono}" if c != 1 else mono))
        return " + ".join(bits)

    # -- arithmetic ------------------------------------------------------

    def _check(self, other):
        if self.variables != other.variables:
            raise DimensionMismatchError("polynomials over different variable lists")

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            terms[exp] = terms.get(exp, QQ(0)) + c
            if terms[exp] == 0:
                del terms[exp]
        out = Polynomial.__new__(Polynomial)
        out.variables = self.variables
        out.terms = terms
        return out

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        out = Polynomial.__new__(Polynomial)
        out.variables = self.variables
        out.terms = {} if c == 0 else {e: c * v for e, v in self.terms.items()}
        return out

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = monomial_mul(e1, e2)
                terms[e] = terms.get(e, QQ(0)) + c1 * c2
        out = Polynomial.__new__(Polynomial)
        out.variables = self.variables
        out.terms = {e: c for e, c in terms.items() if c != 0}
        return out

    def __rmul__(self, other):
        return self.scale(other)

    def term_mul(self, exp, coeff):
        """Multiply by a single term coeff * x^exp."""
        out = Polynomial.__new__(Polynomial)
        out.variables = self.variables
        out.terms = {monomial_mul(e, exp): c * coeff for e, c in self.terms.items()}
        return out

    # -- evaluation ------------------------------------------------------

    def evaluate(self, values):
        if len(values) != len(self.variables):
            raise DimensionMismatchError("wrong number of values for evaluation")
        vals = [Fraction(v) for v in values]
        total = QQ(0)
        for exp, c in self.terms.items():
            t = c
            for v, e in zip(vals, exp):
                if e:
                    t *= v**e
            total += t
        return total

    def substitute(self, index, value):
        """Fix one variable to a rational value; the variable list is kept."""
        value = Fraction(value)
        terms = {}
        for exp, c in self.terms.items():
            e = exp[index]
            if e:
                c = c * value**e
                if c == 0:
                    continue
                exp = exp[:index] + (0,) + exp[index + 1 :]
            terms[exp] = terms.get(exp, QQ(0)) + c
        out = Polynomial.__new__(Polynomial)
        out.variables = self.variables
        out.terms = {e: c for e, c in terms.items() if c != 0}
        return out

    def derivative(self, index):
        terms = {}
        for exp, c in self.terms.items():
            e = exp[index]
            if e == 0:
                continue
            new = exp[:index] + (e - 1,) + exp[index + 1 :]
            terms[new] = terms.get(new, QQ(0)) + c * e
        out = Polynomial.__new__(Polynomial)
        out.variables = self.variables
        out.terms = {e: c for e, c in terms.items() if c != 0}
        return out
