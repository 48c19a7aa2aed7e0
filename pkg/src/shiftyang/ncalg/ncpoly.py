"""Sparse noncommutative polynomials and their tensor powers."""

from __future__ import annotations

from typing import Callable, Iterable

from .scalars import RingMismatch, ScalarRing, check_same, split_sign
from .words import letter, word_sort_key, word_str


class ArityMismatch(ValueError):
    pass


def _check(a: "NCPoly", b: "NCPoly"):
    check_same(a.ring, b.ring)
    if a.arity != b.arity:
        raise ArityMismatch(f"tensor arity differs: {a.arity} vs {b.arity}")


def _add_into(acc: dict, key, coeff):
    new = acc.get(key)
    if new is None:
        if coeff:
            acc[key] = coeff
        return
    new = new + coeff
    if new:
        acc[key] = new
    else:
        del acc[key]


class NCPoly:
    """Linear combination of tensor words with coefficients in a ScalarRing.

    A key is a tuple of ``arity`` words; a word is a tuple of packed letters.
    Arity 1 is an ordinary noncommutative polynomial.  Values are treated as
    immutable once built.
    """

    __slots__ = ("ring", "arity", "terms")

    def __init__(self, ring: ScalarRing, terms: dict | None = None, arity: int = 1):
        self.ring = ring
        self.arity = arity
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    # constructors
    @classmethod
    def zero(cls, ring, arity=1):
        return cls(ring, {}, arity)

    @classmethod
    def scalar(cls, ring, c, arity=1):
        return cls(ring, {((),) * arity: ring(c) if not _is_elem(ring, c) else c}, arity)

    @classmethod
    def one(cls, ring, arity=1):
        return cls.scalar(ring, 1, arity)

    @classmethod
    def word(cls, ring, word, coeff=1, arity=1, slot=0):
        key = tuple(tuple(word) if i == slot else () for i in range(arity))
        c = coeff if _is_elem(ring, coeff) else ring(coeff)
        return cls(ring, {key: c}, arity)

    @classmethod
    def gen(cls, ring, family: int, node: int, level: int, arity=1, slot=0):
        return cls.word(ring, (letter(family, node, level),), 1, arity, slot)

    @classmethod
    def from_words(cls, ring, items: dict, arity=1):
        """Build from {word: coeff} (arity 1) or {key: coeff}."""
        if arity == 1:
            return cls(ring, {(w,): c for w, c in items.items()}, 1)
        return cls(ring, dict(items), arity)

    # inspection
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def words(self) -> dict:
        """{word: coeff} view for arity-1 values."""
        if self.arity != 1:
            raise ArityMismatch("words() needs arity 1")
        return {k[0]: c for k, c in self.terms.items()}

    def coefficient(self, key):
        if self.arity == 1 and (not key or isinstance(key[0], int)):
            key = (tuple(key),)
        return self.terms.get(key, self.ring.zero)

    def letters(self) -> set:
        out = set()
        for key in self.terms:
            for w in key:
                out.update(w)
        return out

    # arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        _check(self, other)
        acc = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(acc, k, c)
        return NCPoly(self.ring, acc, self.arity)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly(self.ring, {k: -c for k, c in self.terms.items()}, self.arity)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, NCPoly):
            return self.scale(other)
        _check(self, other)
        acc: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(k1, k2))
                _add_into(acc, key, c1 * c2)
        return NCPoly(self.ring, acc, self.arity)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        out = NCPoly.one(self.ring, self.arity)
        for _ in range(n):
            out = out * self
        return out

    def scale(self, c):
        if isinstance(c, NCPoly):
            raise TypeError("use * for products")
        c = c if _is_elem(self.ring, c) else self.ring(c)
        if not c:
            return NCPoly.zero(self.ring, self.arity)
        return NCPoly(self.ring, {k: v * c for k, v in self.terms.items()}, self.arity)

    def commutator(self, other):
        return self * other - other * self

    def tensor(self, other):
        """Outer tensor product: arity adds up."""
        check_same(self.ring, other.ring)
        acc = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                _add_into(acc, k1 + k2, c1 * c2)
        return NCPoly(self.ring, acc, self.arity + other.arity)

    def _coerce(self, other):
        if isinstance(other, NCPoly):
            return other
        return NCPoly.scalar(self.ring, other, self.arity)

    # comparison
    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            if self.arity and (other == 0):
                return not self.terms
            return NotImplemented
        return self.ring is other.ring and self.arity == other.arity and self.terms == other.terms

    def __hash__(self):
        return hash((self.arity, frozenset(self.terms.items())))

    # maps
    def map_words(self, f: Callable, slot: int | None = None):
        """Apply a linear map word -> NCPoly (same arity 1) slotwise.

        With ``slot`` given only that tensor slot is rewritten; ``f`` must
        return arity-1 values which are spliced back in.
        """
        acc: dict = {}
        for key, c in self.terms.items():
            slots = range(self.arity) if slot is None else [slot]
            partial = {key: c}
            for s in slots:
                nxt: dict = {}
                for k, cc in partial.items():
                    img = f(k[s])
                    for w, ci in img.words().items():
                        _add_into(nxt, k[:s] + (w,) + k[s + 1:], cc * ci)
                partial = nxt
            for k, cc in partial.items():
                _add_into(acc, k, cc)
        return NCPoly(self.ring, acc, self.arity)

    def map_letters(self, f: Callable):
        """Algebra map defined letterwise; ``f(code)`` returns an arity-1 NCPoly."""
        cache: dict = {}

        def on_word(w):
            out = NCPoly.one(self.ring)
            for code in w:
                img = cache.get(code)
                if img is None:
                    img = cache[code] = f(code)
                out = out * img
            return out

        return self.map_words(on_word)

    def map_coeffs(self, f: Callable, ring: ScalarRing | None = None):
        ring = ring or self.ring
        return NCPoly(ring, {k: f(c) for k, c in self.terms.items()}, self.arity)

    def change_ring(self, ring: ScalarRing):
        """Embed coefficients into a larger ring with a superset of variables."""
        if ring is self.ring:
            return self
        conv = _converter(self.ring, ring)
        return NCPoly(ring, {k: conv(c) for k, c in self.terms.items()}, self.arity)

    # printing
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: tuple(word_sort_key(w) for w in t[0]))

    def to_str(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for key, c in self.sorted_terms():
            if self.arity == 1:
                body = word_str(key[0])
            else:
                body = "ox(" + ", ".join(word_str(w) for w in key) + ")"
            neg, ctext = split_sign(self.ring, c)
            if ctext and body == "1":
                text = ctext
            elif ctext:
                text = f"{ctext}*{body}"
            else:
                text = body
            pieces.append((neg, text))
        out = ""
        for i, (neg, text) in enumerate(pieces):
            if i == 0:
                out = f"-{text}" if neg else text
            else:
                out += f" - {text}" if neg else f" + {text}"
        return out

    __str__ = to_str

    def __repr__(self):
        return f"NCPoly[{self.ring.id}, arity={self.arity}]({self.to_str()})"


def _is_elem(ring: ScalarRing, c) -> bool:
    return getattr(c, "ring", None) is ring.domain or getattr(c, "field", None) is ring.domain


def _converter(src: ScalarRing, dst: ScalarRing):
    missing = [n for n in src.names if n not in dst.names]
    if missing:
        raise RingMismatch(f"cannot embed {src.id} into {dst.id}")
    if src.fraction and not dst.fraction:
        raise RingMismatch(f"cannot embed {src.id} into {dst.id}")

    def conv_poly(p):
        out = dst.poly_ring.zero
        idx = [dst.names.index(n) for n in src.names]
        for mono, coeff in p.items():
            m = [0] * len(dst.names)
            for i, k in zip(idx, mono):
                m[i] = k
            out += dst.poly_ring({tuple(m): coeff})
        return out

    if dst.fraction:
        if src.fraction:
            return lambda c: dst.domain((conv_poly(c.numer), conv_poly(c.denom)))
        return lambda c: dst.domain(conv_poly(c))
    return conv_poly


def nc_arith(a: NCPoly, b: NCPoly, op: str) -> NCPoly:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "commutator":
        return a.commutator(b)
    if op == "tensor_mul":
        if a.arity < 2:
            raise ArityMismatch("tensor_mul needs tensor operands")
        return a * b
    raise ValueError(f"unknown op {op!r}")


def total(polys: Iterable[NCPoly], ring: ScalarRing, arity: int = 1) -> NCPoly:
    acc: dict = {}
    for p in polys:
        _check(NCPoly.zero(ring, arity), p)
        for k, c in p.terms.items():
            _add_into(acc, k, c)
    return NCPoly(ring, acc, arity)


__all__ = ["NCPoly", "ArityMismatch", "RingMismatch", "nc_arith", "total"]
