"""A small recursive-descent parser for bracket expressions.

Grammar, whitespace-insensitive::

    expr  := ['-'] term (('+' | '-') term)*
    term  := [rational '*'] atom
    atom  := generator | 'N' '(' expr ')' | '[' expr ',' expr ']'

Rationals are ``p`` or ``p/q``.  The bare literal ``0`` denotes the zero
element.  Output of the polynomial printer parses back to an equal value.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ExprSyntaxError
from .freealg import Poly, apply_op, bracket
from .words import Alphabet


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            raise ExprSyntaxError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def at_end(self) -> bool:
        return self.peek() == ""

    def name(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (
                self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        if self.pos == start:
            raise ExprSyntaxError("expected a name", start)
        return self.text[start:self.pos]

    def number(self) -> Fraction:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ExprSyntaxError("expected a number", start)
        num = int(self.text[start:self.pos])
        if self.peek() == "/":
            self.pos += 1
            dstart = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if self.pos == dstart:
                raise ExprSyntaxError("expected a denominator", dstart)
            den = int(self.text[dstart:self.pos])
            if den == 0:
                raise ExprSyntaxError("zero denominator", dstart)
            return Fraction(num, den)
        return Fraction(num)


def parse_expr(text: str, alphabet: Alphabet) -> Poly:
    """Parse expression text into a polynomial in the LS basis."""
    scanner = _Scanner(text)
    poly = _expr(scanner, alphabet)
    scanner.skip_ws()
    if not scanner.at_end():
        raise ExprSyntaxError(f"unexpected {scanner.peek()!r}", scanner.pos)
    return poly


def _expr(s: _Scanner, alphabet: Alphabet) -> Poly:
    total = Poly.zero(alphabet)
    sign = Fraction(1)
    if s.peek() == "-":
        s.expect("-")
        sign = Fraction(-1)
    elif s.peek() == "+":
        s.expect("+")
    total = total + sign * _term(s, alphabet)
    while s.peek() in ("+", "-"):
        op = s.peek()
        s.expect(op)
        sign = Fraction(-1) if op == "-" else Fraction(1)
        total = total + sign * _term(s, alphabet)
    return total


def _term(s: _Scanner, alphabet: Alphabet) -> Poly:
    if s.peek().isdigit():
        coeff = s.number()
        if s.peek() == "*":
            s.expect("*")
            return coeff * _atom(s, alphabet)
        if coeff == 0:
            return Poly.zero(alphabet)
        raise ExprSyntaxError("a bare number is not an element; write c*term", s.pos)
    return _atom(s, alphabet)


def _atom(s: _Scanner, alphabet: Alphabet) -> Poly:
    ch = s.peek()
    if ch == "[":
        s.expect("[")
        left = _expr(s, alphabet)
        s.expect(",")
        right = _expr(s, alphabet)
        s.expect("]")
        return bracket(left, right)
    if ch == "":
        raise ExprSyntaxError("unexpected end of input", s.pos)
    if not (ch.isalnum() or ch == "_"):
        raise ExprSyntaxError(f"unexpected {ch!r}", s.pos)
    pos = s.pos
    name = s.name()
    if name == "N":
        s.expect("(")
        inner = _expr(s, alphabet)
        s.expect(")")
        return apply_op(inner)
    try:
        return Poly.letter(alphabet, name)
    except Exception:
        raise ExprSyntaxError(f"unknown symbol {name!r}", pos) from None
