"""Recursive-descent parser for the expression grammar:

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := '-' factor | power
    power  := atom ('^' factor)?
    atom   := NUMBER | IDENT | IDENT '(' expr ')' | '(' expr ')'

'+', '-', '*', '/' associate left; '^' associates right and binds tighter
than unary minus ("-t^2" is -(t^2)).  Whitespace is insignificant.  Errors
carry the byte offset of the offending token.
"""

import math
import re

from ..errors import ExprSyntaxError, UnknownIdentifierError
from .nodes import FUNCTIONS, VARIABLES, Bin, Call, Expr, Neg, Num, Var

_TOKEN_RE = re.compile(
    r"\s*(?:"
    r"(?P<num>(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()])"
    r")"
)

_CONSTANTS = {"pi": math.pi, "e": math.e}


class _Token:
    __slots__ = ("kind", "text", "offset")

    def __init__(self, kind, text, offset):
        self.kind = kind
        self.text = text
        self.offset = offset


def _tokenize(src: str) -> list[_Token]:
    tokens = []
    pos = 0
    n = len(src)
    while pos < n:
        m = _TOKEN_RE.match(src, pos)
        if m is None or m.end() == pos:
            stripped = src[pos:].lstrip()
            if not stripped:
                break
            raise ExprSyntaxError(f"unexpected character {stripped[0]!r}",
                                  n - len(stripped))
        offset = m.end() - len(m.group(m.lastgroup))
        tokens.append(_Token(m.lastgroup, m.group(m.lastgroup), offset))
        pos = m.end()
    tokens.append(_Token("end", "", n))
    return tokens


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.tokens = _tokenize(src)
        self.pos = 0

    @property
    def current(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, text: str):
        tok = self.current
        if tok.kind != "op" or tok.text != text:
            raise ExprSyntaxError(f"expected {text!r}", tok.offset)
        return self.advance()

    def at_op(self, *texts: str) -> bool:
        tok = self.current
        return tok.kind == "op" and tok.text in texts

    def parse(self) -> Expr:
        e = self.expr()
        tok = self.current
        if tok.kind != "end":
            raise ExprSyntaxError(f"unexpected token {tok.text!r}", tok.offset)
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.at_op("+", "-"):
            op = self.advance().text
            e = Bin(op, e, self.term())
        return e

    def term(self) -> Expr:
        e = self.factor()
        while self.at_op("*", "/"):
            op = self.advance().text
            e = Bin(op, e, self.factor())
        return e

    def factor(self) -> Expr:
        if self.at_op("-"):
            self.advance()
            return Neg(self.factor())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.at_op("^"):
            self.advance()
            return Bin("^", base, self.factor())
        return base

    def atom(self) -> Expr:
        tok = self.current
        if tok.kind == "num":
            self.advance()
            return Num(float(tok.text))
        if tok.kind == "ident":
            self.advance()
            if self.at_op("("):
                if tok.text not in FUNCTIONS:
                    raise UnknownIdentifierError(tok.text, tok.offset)
                self.advance()
                arg = self.expr()
                self.expect_op(")")
                return Call(tok.text, arg)
            if tok.text in VARIABLES:
                return Var(tok.text)
            if tok.text in _CONSTANTS:
                return Num(_CONSTANTS[tok.text])
            raise UnknownIdentifierError(tok.text, tok.offset)
        if self.at_op("("):
            self.advance()
            e = self.expr()
            self.expect_op(")")
            return e
        raise ExprSyntaxError("expected an expression", tok.offset)


def parse(src: str) -> Expr:
    """Parse expression text into an AST."""
    return _Parser(src).parse()
