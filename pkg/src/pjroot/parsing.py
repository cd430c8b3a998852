"""Recursive-descent parser for rational-coefficient polynomial expressions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom (('^' | '**') INTEGER)?
    atom   := NUMBER | NAME | '(' expr ')'

Numbers are integers or decimal literals; decimals become exact fractions
(``0.5`` is ``1/2``).  Expressions evaluate to a numerator/denominator pair
of polynomials, so ``1/(s*((s+4)^2+4^2))`` is a valid transfer function.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .polycore import MultiPoly


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d*)?|\.\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>\*\*|[-+*/^()]))"
)


@dataclass
class _Tok:
    kind: str
    value: str
    pos: int


def tokenize(text: str) -> List[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = len(text) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad, text)
        kind = m.lastgroup
        toks.append(_Tok(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    """Evaluates while parsing; values are (numerator, denominator) pairs."""

    def __init__(self, text: str, variables: Sequence[str]):
        self.text = text
        self.variables = tuple(variables)
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        raise ParseError(msg, tok.pos, self.text)

    def eat(self, value=None):
        tok = self.tok
        if value is not None and tok.value != value:
            self.error(f"expected {value!r}, found {tok.value or 'end of input'!r}")
        self.i += 1
        return tok

    def const(self, c):
        return MultiPoly.constant(c, self.variables), MultiPoly.constant(1, self.variables)

    def parse(self):
        value = self.expr()
        if self.tok.kind != "end":
            self.error(f"unexpected {self.tok.value!r}")
        return value

    def expr(self):
        num, den = self.term()
        while self.tok.value in ("+", "-"):
            op = self.eat().value
            n2, d2 = self.term()
            if op == "-":
                n2 = -n2
            if den == d2:
                num = num + n2
            else:
                num, den = num * d2 + n2 * den, den * d2
        return num, den

    def term(self):
        num, den = self.unary()
        while self.tok.value in ("*", "/"):
            op_tok = self.eat()
            n2, d2 = self.unary()
            if op_tok.value == "*":
                num, den = num * n2, den * d2
            else:
                if n2.is_zero():
                    self.error("division by zero", op_tok)
                num, den = num * d2, den * n2
        return num, den

    def unary(self):
        if self.tok.value == "-":
            self.eat()
            num, den = self.unary()
            return -num, den
        if self.tok.value == "+":
            self.eat()
            return self.unary()
        return self.power()

    def power(self):
        num, den = self.atom()
        if self.tok.value in ("^", "**"):
            self.eat()
            tok = self.tok
            if tok.kind != "num" or not tok.value.isdigit():
                self.error("exponent must be a non-negative integer literal")
            self.eat()
            e = int(tok.value)
            num, den = num ** e, den ** e
        return num, den

    def atom(self):
        tok = self.tok
        if tok.kind == "num":
            self.eat()
            return self.const(Fraction(tok.value))
        if tok.kind == "name":
            if tok.value not in self.variables:
                self.error(f"unknown variable {tok.value!r}")
            self.eat()
            return MultiPoly.variable(tok.value, self.variables), MultiPoly.constant(1, self.variables)
        if tok.value == "(":
            self.eat()
            value = self.expr()
            self.eat(")")
            return value
        self.error(f"unexpected {tok.value or 'end of input'!r}")


def parse_rational_expression(text: str, variables: Sequence[str]) -> Tuple[MultiPoly, MultiPoly]:
    """Parse to an unreduced (numerator, denominator) pair."""
    if not text.strip():
        raise ParseError("empty expression", 0, text)
    num, den = _Parser(text, variables).parse()
    if den.is_zero():
        raise ParseError("zero denominator", 0, text)
    return num, den


def parse_polynomial(text: str, variables: Sequence[str]) -> MultiPoly:
    """Parse a polynomial; division is only allowed by nonzero constants."""
    num, den = parse_rational_expression(text, variables)
    if not den.is_constant():
        raise ParseError("expression is not a polynomial", 0, text)
    return num.scale(1 / den.constant_value())
