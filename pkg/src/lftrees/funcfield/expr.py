"""Expression parser for elements of F_p(x) and F_p(x, y).

Grammar (whitespace ignored, integers reduced mod p)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+') unary | power
    power  := base ('^' '-'? int)?
    base   := int | 'x' | 'y' | '(' expr ')'
"""
from __future__ import annotations

import re

from lftrees.errors import DivisionByZero, ParseError
from lftrees.funcfield.birat import BiRat
from lftrees.funcfield.ratfunc import RatFunc

_TOKEN = re.compile(r"\s*(?:(\d+)|([xy])|(.))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("int", m.group(1), start))
        elif m.group(2):
            tokens.append(("var", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", start, text)
            tokens.append(("op", ch, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, p: int):
        self.text = text
        self.p = p
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, v, pos = self.take()
        if v != value or kind != "op":
            raise ParseError(f"expected {value!r}, found {v or 'end of input'!r}", pos, self.text)

    def parse(self) -> BiRat:
        value = self.expr()
        kind, v, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {v!r}", pos, self.text)
        return value

    def expr(self) -> BiRat:
        value = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> BiRat:
        value = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            _, op, pos = self.take()
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise DivisionByZero(f"division by zero at position {pos}")
                value = value / rhs
        return value

    def unary(self) -> BiRat:
        kind, v, _ = self.peek()
        if kind == "op" and v in ("-", "+"):
            self.take()
            inner = self.unary()
            return -inner if v == "-" else inner
        return self.power()

    def power(self) -> BiRat:
        base = self.base()
        kind, v, pos = self.peek()
        if kind == "op" and v == "^":
            self.take()
            sign = 1
            if self.peek()[:2] == ("op", "-"):
                self.take()
                sign = -1
            kind, v, pos = self.take()
            if kind != "int":
                raise ParseError("exponent must be an integer", pos, self.text)
            k = sign * int(v)
            if k < 0 and base.is_zero():
                raise DivisionByZero(f"negative power of zero at position {pos}")
            return base ** k
        return base

    def base(self) -> BiRat:
        kind, v, pos = self.take()
        if kind == "int":
            return BiRat.lift(int(v) % self.p, self.p)
        if kind == "var":
            return BiRat.lift(RatFunc.x(self.p)) if v == "x" else BiRat.y(self.p)
        if kind == "op" and v == "(":
            value = self.expr()
            self.expect(")")
            return value
        raise ParseError(f"unexpected {v or 'end of input'!r}", pos, self.text)


def parse_birat(text: str, p: int) -> BiRat:
    return _Parser(text, p).parse()


def parse_ratfunc(text: str, p: int) -> RatFunc:
    value = parse_birat(text, p)
    if not value.is_y_free():
        pos = text.find("y")
        raise ParseError("y is not allowed in an element of F_p(x)", pos if pos >= 0 else None, text)
    return value.to_ratfunc()


def format_value(value) -> str:
    return str(value)
