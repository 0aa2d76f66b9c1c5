"""Precedence-climbing parser for one-variable polynomial expressions.

Grammar, loosest binding first::

    sum     := term (('+' | '-') term)*
    term    := unary (('*' | '/' | <juxtaposition>) unary)*
    unary   := ('+' | '-') unary | power
    power   := atom ('^' unary)?          # right associative
    atom    := NUMBER | IDENT | '(' sum ')'

Exponents must evaluate to nonnegative integer constants and divisors to
nonzero constants. Juxtaposition (``2x``, ``3(x+1)``) multiplies.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..errors import ParseError
from .poly import DEFAULT_LIMITS, Poly


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "ident", "op", "end"
    text: str
    column: int  # 1-based
    value: Optional[Fraction] = None


def tokenize(source: str) -> list[Token]:
    tokens: list[Token] = []
    i = 0
    n = len(source)
    while i < n:
        c = source[i]
        if c.isspace():
            i += 1
            continue
        start = i
        if c.isdigit() or (c == "." and i + 1 < n and source[i + 1].isdigit()):
            while i < n and source[i].isdigit():
                i += 1
            if i < n and source[i] == ".":
                i += 1
                while i < n and source[i].isdigit():
                    i += 1
            text = source[start:i]
            tokens.append(Token("num", text, start + 1, Fraction(text)))
            continue
        if c.isalpha() or c == "_":
            while i < n and (source[i].isalnum() or source[i] == "_"):
                i += 1
            tokens.append(Token("ident", source[start:i], start + 1))
            continue
        if c in "+-*/^()":
            tokens.append(Token("op", c, start + 1))
            i += 1
            continue
        raise ParseError(f"unexpected character {c!r}", start + 1, source)
    tokens.append(Token("end", "", n + 1))
    return tokens


class _Parser:
    def __init__(self, source: str):
        self.source = source
        self.tokens = tokenize(source)
        self.pos = 0
        self.var: Optional[str] = None

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, message: str, tok: Token):
        raise ParseError(message, tok.column, self.source)

    def parse(self) -> Poly:
        result = self.sum()
        tok = self.peek()
        if tok.kind != "end":
            self.error(f"unexpected {tok.text!r}", tok)
        return result

    def sum(self) -> Poly:
        left = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.advance().text
            right = self.term()
            left = left + right if op == "+" else left - right
        return left

    def term(self) -> Poly:
        left = self.unary()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text == "*":
                self.advance()
                left = left * self.unary()
            elif tok.kind == "op" and tok.text == "/":
                self.advance()
                rhs_tok = self.peek()
                right = self.unary()
                if not right.is_constant():
                    self.error("division by a non-constant expression", tok)
                if right.is_zero():
                    self.error("division by zero", rhs_tok)
                left = left / right[0]
            elif tok.kind == "ident" or (tok.kind == "op" and tok.text == "("):
                left = left * self.unary()
            else:
                return left

    def unary(self) -> Poly:
        tok = self.peek()
        if tok.kind == "op" and tok.text in "+-":
            self.advance()
            operand = self.unary()
            return -operand if tok.text == "-" else operand
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        tok = self.peek()
        if tok.kind == "op" and tok.text == "^":
            self.advance()
            exp_tok = self.peek()
            exponent = self.unary()
            if not exponent.is_constant():
                self.error("exponent must be a constant", exp_tok)
            e = exponent[0]
            if e.denominator != 1 or e < 0:
                self.error("exponent must be a nonnegative integer", exp_tok)
            k = int(e)
            if base.degree > 0 and base.degree * k > DEFAULT_LIMITS.max_degree:
                self.error(f"degree exceeds cap {DEFAULT_LIMITS.max_degree}", exp_tok)
            return base**k
        return base

    def atom(self) -> Poly:
        tok = self.advance()
        if tok.kind == "num":
            return Poly.constant(tok.value)
        if tok.kind == "ident":
            if self.var is None:
                self.var = tok.text
            elif tok.text != self.var:
                self.error(f"second variable {tok.text!r} (already using {self.var!r})", tok)
            return Poly.x()
        if tok.kind == "op" and tok.text == "(":
            inner = self.sum()
            close = self.advance()
            if close.kind != "op" or close.text != ")":
                self.error("expected ')'", close)
            return inner
        if tok.kind == "end":
            self.error("unexpected end of input", tok)
        self.error(f"unexpected {tok.text!r}", tok)


def parse(expr: str) -> Poly:
    """Parse ``expr`` into an exact polynomial.

    >>> parse("x^2 + 1/4").coeffs
    (Fraction(1, 4), Fraction(0, 1), Fraction(1, 1))
    """
    return _Parser(expr).parse()
