"""Tiny expression grammar for entering field elements on the CLI.

    expr   := term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' integer)*
    atom   := integer | 'p' | 'w' | 'z' | '(' expr ')' | '-' atom

'w' denotes the canonical uniformiser, 'z' the Teichmueller residue
generator, 'p' the prime.  The unicode aliases for w and z are accepted.
Round-trips through the element JSON format.
"""

from __future__ import annotations

import re

_TOKEN = re.compile(r"\s*(\d+|[pwz+\-*^()]|ϖ|ζ)", re.UNICODE)

_ALIAS = {"ϖ": "w", "ζ": "z"}


class ExprError(ValueError):
    pass


def _tokenize(text):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExprError(f"cannot tokenize element expression at {text[pos:]!r}")
        tok = m.group(1)
        out.append(_ALIAS.get(tok, tok))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens, field):
        self.toks = tokens
        self.i = 0
        self.field = field

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expr(self):
        out = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self):
        out = self.factor()
        while self.peek() == "*":
            self.take()
            out = out * self.factor()
        return out

    def factor(self):
        out = self.atom()
        while self.peek() == "^":
            self.take()
            tok = self.take()
            neg = False
            if tok == "-":
                neg = True
                tok = self.take()
            if tok is None or not tok.isdigit():
                raise ExprError("exponent must be an integer")
            k = int(tok)
            out = out ** (-k if neg else k)
        return out

    def atom(self):
        tok = self.take()
        if tok is None:
            raise ExprError("unexpected end of expression")
        if tok == "(":
            out = self.expr()
            if self.take() != ")":
                raise ExprError("unbalanced parentheses")
            return out
        if tok == "-":
            return -self.atom()
        if tok == "p":
            return self.field.from_int(self.field.p)
        if tok == "w":
            return self.field.uniformizer()
        if tok == "z":
            return self.field.zeta(min(2, self.field.f))
        if tok.isdigit():
            return self.field.from_int(int(tok))
        raise ExprError(f"unexpected token {tok!r}")


def parse_element(text: str, field):
    parser = _Parser(_tokenize(text), field)
    out = parser.expr()
    if parser.peek() is not None:
        raise ExprError(f"trailing input {parser.toks[parser.i:]!r}")
    return out
