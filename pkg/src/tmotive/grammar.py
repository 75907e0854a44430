"""Text grammar for polynomials: variables `t`, `th`, extension generator `a`.

Operators ``+ - * ^`` with parentheses; integer literals are reduced mod p.
Example: ``(th+1)*t^2 + a*t``.
"""

from __future__ import annotations

from .bivar import BivarPoly
from .ffield import Field, Poly


class GrammarError(ValueError):
    pass


def _tokenize(s):
    toks = []
    i = 0
    while i < len(s):
        c = s[i]
        if c.isspace():
            i += 1
        elif c.isdigit():
            j = i
            while j < len(s) and s[j].isdigit():
                j += 1
            toks.append(("int", int(s[i:j])))
            i = j
        elif c.isalpha():
            j = i
            while j < len(s) and s[j].isalpha():
                j += 1
            toks.append(("name", s[i:j]))
            i = j
        elif c in "+-*^()":
            toks.append((c, c))
            i += 1
        else:
            raise GrammarError(f"unexpected character {c!r} in polynomial")
    toks.append(("end", None))
    return toks


class _Parser:
    def __init__(self, ff: Field, toks):
        self.ff = ff
        self.toks = toks
        self.pos = 0

    def peek(self):
        return self.toks[self.pos][0]

    def next(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expr(self):
        if self.peek() == "-":
            self.next()
            acc = -self.term()
        else:
            acc = self.term()
        while self.peek() in "+-":
            op = self.next()[0]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self):
        acc = self.factor()
        while self.peek() == "*":
            self.next()
            acc = acc * self.factor()
        return acc

    def factor(self):
        base = self.atom()
        if self.peek() == "^":
            self.next()
            kind, val = self.next()
            neg = False
            if kind == "-":
                neg = True
                kind, val = self.next()
            if kind != "int":
                raise GrammarError("exponent must be an integer")
            if neg:
                raise GrammarError("negative exponents are not part of the grammar")
            return base**val
        return base

    def atom(self):
        kind, val = self.next()
        ff = self.ff
        if kind == "int":
            return BivarPoly.const(ff, ff.from_int(val))
        if kind == "name":
            if val == "t":
                return BivarPoly.t(ff)
            if val == "th":
                return BivarPoly.theta(ff)
            if val == "a":
                if ff.e == 1:
                    raise GrammarError("generator `a` needs an extension field (e > 1)")
                return BivarPoly.const(ff, ff.gen())
            raise GrammarError(f"unknown name {val!r} (expected t, th or a)")
        if kind == "(":
            inner = self.expr()
            if self.next()[0] != ")":
                raise GrammarError("missing closing parenthesis")
            return inner
        raise GrammarError(f"unexpected token {kind!r}")


def parse_bivar(ff: Field, s: str) -> BivarPoly:
    p = _Parser(ff, _tokenize(s))
    out = p.expr()
    if p.peek() != "end":
        raise GrammarError(f"trailing input in polynomial {s!r}")
    return out


def parse_t_poly(ff: Field, s: str) -> Poly:
    """Parse a polynomial in `t` alone (used for place strings)."""
    b = parse_bivar(ff, s)
    if not b.is_t_only():
        raise GrammarError(f"{s!r} must be a polynomial in t only")
    return b.as_t_poly()
