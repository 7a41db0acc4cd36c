"""Recursive-descent parser for exact polynomial expressions.

Grammar:
    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (['*'] factor)*       # adjacency is multiplication
    factor := base ('^' natural)?
    base   := rational | variable | '(' expr ')'

Rational literals are 'p/q', decimals, or integers, converted exactly; the
'/' character is only legal inside a literal, so "y/2" is a syntax error
while "1/2*y" parses.  Variables are x, y, z.  Expressions lower to a
sparse exact polynomial in (x, y, z); univariate input additionally lowers
to a jet, with x and y accepted interchangeably as the indeterminate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError
from .jets import DEFAULT_ORDER, Jet
from .polys import SparsePoly

_VARS = {"x": 0, "y": 1, "z": 2}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    offset: int


def tokenize(src: str) -> list[Token]:
    tokens = []
    i = 0
    n = len(src)
    while i < n:
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            start = i
            while i < n and src[i].isdigit():
                i += 1
            if i < n and src[i] == "." and i + 1 < n and src[i + 1].isdigit():
                i += 1
                while i < n and src[i].isdigit():
                    i += 1
            elif i < n and src[i] == "/" and i + 1 < n and src[i + 1].isdigit():
                i += 1
                while i < n and src[i].isdigit():
                    i += 1
            tokens.append(Token("number", src[start:i], start))
            continue
        if ch in _VARS:
            tokens.append(Token("var", ch, i))
            i += 1
            continue
        if ch in "+-*^()":
            tokens.append(Token(ch, ch, i))
            i += 1
            continue
        if ch == "/":
            raise ParseError("division is only allowed inside a rational literal "
                             "like 1/2", i, {"+", "-", "*", "^", "(", ")"})
        raise ParseError(f"unexpected character {ch!r}", i,
                         {"number", "variable", "+", "-", "*", "(", ")"})
    tokens.append(Token("end", "", n))
    return tokens


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.tokens = tokenize(src)
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def take(self, kind: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"unexpected {tok.kind or 'end of input'}",
                             tok.offset, {kind})
        self.pos += 1
        return tok

    def parse(self) -> SparsePoly:
        value = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"trailing input {tok.text!r}", tok.offset,
                             {"+", "-", "*", "^", "end"})
        return value

    def expr(self) -> SparsePoly:
        negate = False
        if self.peek().kind in ("+", "-"):
            negate = self.take(self.peek().kind).kind == "-"
        value = self.term()
        if negate:
            value = -value
        while self.peek().kind in ("+", "-"):
            op = self.take(self.peek().kind).kind
            rhs = self.term()
            value = value - rhs if op == "-" else value + rhs
        return value

    def term(self) -> SparsePoly:
        value = self.factor()
        while True:
            tok = self.peek()
            if tok.kind == "*":
                self.take("*")
                value = value * self.factor()
            elif tok.kind in ("number", "var", "("):
                value = value * self.factor()
            else:
                return value

    def factor(self) -> SparsePoly:
        value = self.base()
        if self.peek().kind == "^":
            self.take("^")
            tok = self.take("number")
            if not tok.text.isdigit():
                raise ParseError("exponents must be natural numbers", tok.offset,
                                 {"natural number"})
            exponent = int(tok.text)
            out = SparsePoly.constant(3, 1)
            for _ in range(exponent):
                out = out * value
            return out
        return value

    def base(self) -> SparsePoly:
        tok = self.peek()
        if tok.kind == "number":
            self.take("number")
            return SparsePoly.constant(3, Fraction(tok.text))
        if tok.kind == "var":
            self.take("var")
            return SparsePoly.variable(3, _VARS[tok.text])
        if tok.kind == "(":
            self.take("(")
            value = self.expr()
            self.take(")")
            return value
        raise ParseError(f"unexpected {tok.kind or 'end of input'}", tok.offset,
                         {"number", "variable", "("})


def parse_polynomial(src: str) -> SparsePoly:
    """Parse to an exact polynomial over (x, y, z)."""
    return _Parser(src).parse()


def variables_used(poly: SparsePoly) -> set[str]:
    names = ("x", "y", "z")
    return {names[i] for i in range(3) if poly.depends_on(i)}


def parse_germ(src: str, order: int = DEFAULT_ORDER) -> Jet:
    """Parse a univariate germ; x and y are interchangeable indeterminates.

    Degrees beyond ``order`` are truncated away, as jets demand.
    """
    poly = parse_polynomial(src)
    used = variables_used(poly)
    if len(used) > 1 or "z" in used:
        raise ParseError(f"germ must be univariate in x or y, found {sorted(used)}",
                         0, {"univariate expression"})
    index = _VARS[next(iter(used))] if used else 0
    coeffs = [Fraction(0)] * (order + 1)
    for e, c in poly.terms.items():
        if e[index] <= order:
            coeffs[e[index]] = c
    return Jet(coeffs, order)


def parse_plane_polynomial(src: str) -> SparsePoly:
    """Parse a polynomial in (x, y); z is rejected."""
    poly = parse_polynomial(src)
    if poly.depends_on(2):
        raise ParseError("expected a polynomial in x and y only", 0, {"x", "y"})
    return SparsePoly(2, {(e[0], e[1]): c for e, c in poly.terms.items()})
