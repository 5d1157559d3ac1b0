"""Polynomial text parser.

Grammar (whitespace insensitive)::

    expr  := ['+'|'-'] term (('+'|'-') term)*
    term  := coeff ['*'] [VAR ['^' nat]]  |  VAR ['^' nat]
    coeff := integer | '(' wexpr ')' | 'w' ['^' nat]
    wexpr := ['+'|'-'] wterm (('+'|'-') wterm)*
    wterm := integer ['*'] ['w' ['^' nat]] | 'w' ['^' nat]

Integers are reduced mod p; 'w' is the class of the generator of F_{p^e}.
"""

from __future__ import annotations

from .field import Field
from .poly import UniPoly

MAX_EXPONENT = 1 << 20


class ParseError(ValueError):
    def __init__(self, msg: str, col: int, text: str = ""):
        super().__init__(f"column {col}: {msg}")
        self.col = col
        self.text = text


class _Parser:
    def __init__(self, text: str, field: Field, var: str):
        self.text = text
        self.K = field
        self.var = var
        self.i = 0

    # -- lexing helpers --

    def _skip(self):
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self):
        self._skip()
        return self.text[self.i] if self.i < len(self.text) else ""

    def err(self, msg):
        raise ParseError(msg, self.i + 1, self.text)

    def eat(self, ch):
        if self.peek() != ch:
            self.err(f"expected '{ch}'" + (f", found '{self.peek()}'" if self.peek() else ", found end of input"))
        self.i += 1

    def nat(self) -> int:
        self._skip()
        j = self.i
        while self.i < len(self.text) and self.text[self.i].isdigit():
            self.i += 1
        if j == self.i:
            self.err("expected a non-negative integer")
        digits = self.text[j:self.i]
        if len(digits) > 9 or int(digits) > MAX_EXPONENT:
            self.i = j
            self.err(f"number {digits} too large")
        return int(digits)

    def exponent(self) -> int:
        if self.peek() == "^":
            self.i += 1
            return self.nat()
        return 1

    # -- grammar --

    def w_power(self):
        col = self.i
        self.eat("w")
        if self.K.e == 1:
            self.i = col
            self.err("generator symbol 'w' used in a prime field")
        return self.K.pow(self.K.generator(), self.exponent())

    def wexpr(self):
        K = self.K
        acc = K.zero
        sign = 1
        if self.peek() in "+-":
            sign = -1 if self.peek() == "-" else 1
            self.i += 1
        while True:
            c = self.wterm()
            acc = K.add(acc, c if sign > 0 else K.neg(c))
            if self.peek() in ("+", "-") and self.peek():
                sign = -1 if self.peek() == "-" else 1
                self.i += 1
                continue
            return acc

    def wterm(self):
        K = self.K
        ch = self.peek()
        if ch.isdigit():
            c = K.from_int(self.nat())
            if self.peek() == "*":
                self.i += 1
                return K.mul(c, self.w_power())
            if self.peek() == "w":
                return K.mul(c, self.w_power())
            return c
        if ch == "w":
            return self.w_power()
        self.err("expected an integer or 'w'")

    def coeff(self):
        ch = self.peek()
        if ch == "(":
            self.i += 1
            c = self.wexpr()
            self.eat(")")
            return c
        if ch == "w":
            return self.w_power()
        if ch.isdigit():
            return self.K.from_int(self.nat())
        return None

    def term(self):
        c = self.coeff()
        if c is None:
            if self.peek() != self.var:
                self.err("expected a coefficient or " + repr(self.var))
            c = self.K.one
        elif self.peek() == "*":
            self.i += 1
            if self.peek() != self.var:
                self.err(f"expected {self.var!r} after '*'")
        if self.peek() == self.var:
            self.i += 1
            return self.exponent(), c
        return 0, c

    def expr(self) -> UniPoly:
        K = self.K
        terms = {}
        sign = 1
        if self.peek() in ("+", "-") and self.peek():
            sign = -1 if self.peek() == "-" else 1
            self.i += 1
        if not self.peek():
            self.err("empty polynomial")
        while True:
            k, c = self.term()
            if sign < 0:
                c = K.neg(c)
            terms[k] = K.add(terms.get(k, K.zero), c)
            ch = self.peek()
            if not ch:
                break
            if ch not in "+-":
                self.err(f"unexpected character '{ch}'")
            sign = -1 if ch == "-" else 1
            self.i += 1
        return UniPoly(K, terms)


def parse_poly(text: str, field: Field, var: str = "X") -> UniPoly:
    return _Parser(text, field, var).expr()
