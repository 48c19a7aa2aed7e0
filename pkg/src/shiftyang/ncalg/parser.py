"""Recursive-descent parser for the expression mini-language.

    expr   := term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := rational | 'hbar' | 'eps' | symvar | gen | '(' expr ')'
            | factor '^' uint | 'ox(' expr (',' expr)+ ')'
    gen    := ('E'|'F'|'H'|'S') '[' uint ',' int ']'

A leading unary minus is also accepted so that printed values round-trip.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .ncpoly import ArityMismatch, NCPoly
from .scalars import ScalarRing, get_ring
from .words import FAMILY_INDEX


class ParseError(ValueError):
    def __init__(self, msg: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{msg} at line {line}, column {col}")
        self.line = line
        self.column = col


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^(),\[\]]))"
)


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                bad = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
                raise ParseError(f"unexpected character {text[bad]!r}", text, bad)
            kind = m.lastgroup
            start = m.start(kind)
            self.toks.append((kind, m.group(kind), start))
            pos = m.end()
        self.toks.append(("end", "", len(text)))
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, val, pos = self.take()
        if val != value:
            raise ParseError(f"expected {value!r}, found {val or 'end of input'!r}", self.text, pos)
        return pos


def _lift(p: NCPoly, arity: int) -> NCPoly:
    if p.arity == arity:
        return p
    if p.arity == 1 and all(k == ((),) for k in p.terms):
        return NCPoly.scalar(p.ring, p.terms.get(((),), p.ring.zero), arity) if p.terms else NCPoly.zero(p.ring, arity)
    raise ArityMismatch(f"tensor arity differs: {p.arity} vs {arity}")


def _unify(a: NCPoly, b: NCPoly):
    if a.arity == b.arity:
        return a, b
    if a.arity < b.arity:
        return _lift(a, b.arity), b
    return a, _lift(b, a.arity)


class _Parser:
    def __init__(self, text: str, ring: ScalarRing, symbols: tuple[str, ...]):
        self.lx = _Lexer(text)
        self.text = text
        self.ring = ring
        self.symbols = set(symbols)

    def parse(self) -> NCPoly:
        val = self.expr()
        kind, tok, pos = self.lx.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {tok!r}", self.text, pos)
        return val

    def expr(self) -> NCPoly:
        kind, tok, pos = self.lx.peek()
        if tok == "-":
            self.lx.take()
            val = -self.term()
        else:
            val = self.term()
        while True:
            kind, tok, pos = self.lx.peek()
            if tok not in ("+", "-"):
                return val
            self.lx.take()
            rhs = self.term()
            val, rhs = self._unify(val, rhs, pos)
            val = val + rhs if tok == "+" else val - rhs

    def term(self) -> NCPoly:
        val = self.power()
        while self.lx.peek()[1] == "*":
            pos = self.lx.take()[2]
            rhs = self.power()
            val, rhs = self._unify(val, rhs, pos)
            val = val * rhs
        return val

    def _unify(self, a, b, pos):
        try:
            return _unify(a, b)
        except ArityMismatch as exc:
            raise ParseError(str(exc), self.text, pos) from None

    def power(self) -> NCPoly:
        val = self.factor()
        while self.lx.peek()[1] == "^":
            self.lx.take()
            kind, tok, pos = self.lx.take()
            if kind != "num" or "/" in tok:
                raise ParseError("exponent must be a non-negative integer", self.text, pos)
            val = val ** int(tok)
        return val

    def factor(self) -> NCPoly:
        kind, tok, pos = self.lx.take()
        ring = self.ring
        if kind == "num":
            return NCPoly.scalar(ring, Fraction(tok))
        if tok == "-":
            return -self.power()
        if tok == "(":
            val = self.expr()
            self.lx.expect(")")
            return val
        if kind == "ident":
            if tok == "ox" and self.lx.peek()[1] == "(":
                return self.tensor()
            if tok in FAMILY_INDEX and self.lx.peek()[1] == "[":
                return self.generator(tok, pos)
            if tok in ("hbar", "eps") or tok in self.symbols:
                if not ring.has(tok):
                    raise ParseError(f"variable {tok!r} not in ring {ring.id}", self.text, pos)
                return NCPoly.scalar(ring, ring.gen(tok))
            if tok in "EFHS" or (len(tok) == 1 and tok.isupper()):
                raise ParseError(f"unknown generator family {tok!r}", self.text, pos)
            raise ParseError(f"unknown identifier {tok!r}", self.text, pos)
        raise ParseError(f"unexpected token {tok or 'end of input'!r}", self.text, pos)

    def generator(self, fam: str, pos: int) -> NCPoly:
        self.lx.expect("[")
        kind, node, npos = self.lx.take()
        if kind != "num" or "/" in node:
            raise ParseError("node index must be an unsigned integer", self.text, npos)
        self.lx.expect(",")
        sign = 1
        if self.lx.peek()[1] == "-":
            self.lx.take()
            sign = -1
        kind, lev, lpos = self.lx.take()
        if kind != "num" or "/" in lev:
            raise ParseError("level must be an integer", self.text, lpos)
        self.lx.expect("]")
        level = sign * int(lev)
        if fam in ("E", "F") and level < 1:
            raise ParseError(f"{fam} level must be >= 1, got {level}", self.text, lpos)
        return NCPoly.gen(self.ring, FAMILY_INDEX[fam], int(node), level)

    def tensor(self) -> NCPoly:
        lpos = self.lx.expect("(")
        parts = [self.expr()]
        while self.lx.peek()[1] == ",":
            self.lx.take()
            parts.append(self.expr())
        self.lx.expect(")")
        if len(parts) < 2:
            raise ParseError("ox(...) needs at least two arguments", self.text, lpos)
        out = parts[0]
        for p in parts[1:]:
            if p.arity != 1 or out.arity < 1:
                raise ParseError("nested tensor arguments are not allowed", self.text, lpos)
            out = out.tensor(p)
        return out


def parse_expr(text: str, ring: ScalarRing | str | None = None, symbols=()) -> NCPoly:
    """Parse ``text`` into an NCPoly over ``ring`` (default ``QQ[hbar]``)."""
    if ring is None:
        ring = get_ring(("hbar",))
    elif isinstance(ring, str):
        from .scalars import ring_from_id

        ring = ring_from_id(ring)
    return _Parser(text, ring, tuple(symbols) or tuple(n for n in ring.names if n not in ("hbar", "eps"))).parse()
