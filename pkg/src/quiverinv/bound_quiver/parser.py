"""Text format for bound quiver algebras.

Grammar (whitespace-insensitive, ``#`` comments to end of line)::

    file    := "vertices" id+ ";" "arrows" (name ":" id "->" id)+ ";"
               ["relations" relexpr ("," relexpr)* ";"]
    relexpr := ["+"|"-"] term (("+"|"-") term)*
    term    := [rational "*"] name ("." name)*
    rational:= integer ["/" positive-integer]

An optional leading sign on a relation is accepted so that printed canonical
files always re-parse to the same algebra.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import AlgebraParseError
from .quiver import Arrow, BoundQuiverAlgebra, Path, Quiver, Relation

_SYMBOLS = (";", ":", ",", ".", "+", "-", "*", "/", "->")


class _Token:
    __slots__ = ("kind", "value", "line", "col")

    def __init__(self, kind, value, line, col):
        self.kind = kind
        self.value = value
        self.line = line
        self.col = col


def _tokenize(text):
    tokens = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if text.startswith("->", i):
            tokens.append(_Token("sym", "->", line, col))
            i += 2
            col += 2
            continue
        if ch in ";:,.+-*/":
            tokens.append(_Token("sym", ch, line, col))
            i += 1
            col += 1
            continue
        if ch.isalnum() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            kind = "int" if word.isdigit() else "id"
            tokens.append(_Token(kind, word, line, col))
            col += j - i
            i = j
            continue
        raise AlgebraParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise AlgebraParseError(message, tok.line, tok.col)

    def expect_sym(self, value):
        tok = self.next()
        if tok.kind != "sym" or tok.value != value:
            self.fail(f"expected {value!r}, found {tok.value!r}", tok)
        return tok

    def expect_keyword(self, word):
        tok = self.next()
        if tok.kind not in ("id", "int") or tok.value != word:
            self.fail(f"expected keyword {word!r}, found {tok.value!r}", tok)
        return tok

    def expect_name(self):
        tok = self.next()
        if tok.kind not in ("id", "int"):
            self.fail(f"expected an identifier, found {tok.value!r}", tok)
        return tok

    def parse(self):
        self.expect_keyword("vertices")
        vertices = []
        while self.peek().kind in ("id", "int"):
            vertices.append(self.next().value)
        if not vertices:
            self.fail("at least one vertex is required")
        self.expect_sym(";")

        self.expect_keyword("arrows")
        arrows = []
        vset = set(vertices)
        while self.peek().kind in ("id", "int") and self.peek().value != "relations":
            name_tok = self.next()
            self.expect_sym(":")
            tail_tok = self.expect_name()
            self.expect_sym("->")
            head_tok = self.expect_name()
            for tok in (tail_tok, head_tok):
                if tok.value not in vset:
                    self.fail(f"unknown vertex {tok.value!r}", tok)
            arrows.append(Arrow(name_tok.value, tail_tok.value, head_tok.value))
        if not arrows:
            self.fail("at least one arrow is required")
        self.expect_sym(";")

        quiver = Quiver(vertices, arrows)

        relations = []
        tok = self.peek()
        if tok.kind == "id" and tok.value == "relations":
            self.next()
            relations.append(self._relation(quiver))
            while self.peek().kind == "sym" and self.peek().value == ",":
                self.next()
                relations.append(self._relation(quiver))
            self.expect_sym(";")
        tok = self.peek()
        if tok.kind != "eof":
            self.fail(f"unexpected trailing input {tok.value!r}", tok)
        return quiver, relations

    def _relation(self, quiver):
        lead = Fraction(1)
        if self.peek().kind == "sym" and self.peek().value in ("+", "-"):
            lead = Fraction(1) if self.next().value == "+" else Fraction(-1)
        terms = [self._term(quiver, lead)]
        while self.peek().kind == "sym" and self.peek().value in ("+", "-"):
            sign = Fraction(1) if self.next().value == "+" else Fraction(-1)
            terms.append(self._term(quiver, sign))
        start = terms[0][2]
        try:
            return Relation([(c, p) for c, p, _ in terms])
        except AlgebraParseError as exc:
            raise AlgebraParseError(str(exc), start.line, start.col) from None

    def _term(self, quiver, sign):
        start = self.peek()
        coeff = Fraction(1)
        if start.kind == "int":
            save = self.pos
            num = int(self.next().value)
            if self.peek().kind == "sym" and self.peek().value == "/":
                self.next()
                den_tok = self.next()
                if den_tok.kind != "int" or int(den_tok.value) <= 0:
                    self.fail("denominator must be a positive integer", den_tok)
                coeff = Fraction(num, int(den_tok.value))
                self.expect_sym("*")
            elif self.peek().kind == "sym" and self.peek().value == "*":
                self.next()
                coeff = Fraction(num)
            else:
                # a bare integer token can only be an arrow name
                self.pos = save
        names = [self._arrow_name(quiver)]
        while self.peek().kind == "sym" and self.peek().value == ".":
            self.next()
            names.append(self._arrow_name(quiver))
        first_tok = start
        try:
            path = Path.from_arrows(quiver, names)
        except Exception as exc:
            raise AlgebraParseError(str(exc), first_tok.line, first_tok.col) from None
        return sign * coeff, path, start

    def _arrow_name(self, quiver):
        tok = self.expect_name()
        names = {a.name for a in quiver.arrows}
        if tok.value not in names:
            self.fail(f"unknown arrow {tok.value!r}", tok)
        return tok.value


def parse_algebra(text, name="A") -> BoundQuiverAlgebra:
    """Parse the algebra file grammar into a structurally valid algebra."""
    quiver, relations = _Parser(text).parse()
    return BoundQuiverAlgebra(quiver, relations, name=name)


def _coeff_str(c: Fraction):
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def print_algebra(alg: BoundQuiverAlgebra) -> str:
    """Canonical text form; ``parse_algebra`` round-trips on its output."""
    lines = []
    lines.append("vertices " + " ".join(alg.quiver.vertices) + ";")
    lines.append(
        "arrows " + " ".join(f"{a.name}:{a.tail}->{a.head}" for a in alg.quiver.arrows) + ";"
    )
    if alg.relations:
        rendered = []
        for rel in alg.relations:
            bits = []
            for k, (c, p) in enumerate(rel.terms):
                mag = abs(c)
                body = p.label() if mag == 1 else f"{_coeff_str(mag)}*{p.label()}"
                if k == 0:
                    bits.append(body if c > 0 else f"-{body}")
                else:
                    bits.append(("+ " if c > 0 else "- ") + body)
            rendered.append(" ".join(bits))
        lines.append("relations " + ", ".join(rendered) + ";")
    return "\n".join(lines) + "\n"
