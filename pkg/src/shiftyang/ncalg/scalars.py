"""Exact coefficient rings.

A ring is fixed per computation: the rationals, a polynomial ring over the
rationals (hbar, eps, named parameters), or a field of rational functions.
Elements are sympy ``PolyElement``/``FracElement`` objects, which are kept in
canonical form by sympy, so equality is structural.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from sympy import QQ
from sympy.polys.fields import FracField
from sympy.polys.rings import PolyRing


class RingMismatch(TypeError):
    pass


class ScalarRing:
    """A commutative coefficient ring with a textual id like ``QQ[hbar,eps]``."""

    def __init__(self, names: tuple[str, ...], fraction: bool = False):
        self.names = tuple(names)
        self.fraction = fraction
        if fraction:
            self.domain = FracField(self.names, QQ)
            self.poly_ring = self.domain.ring
        else:
            self.domain = PolyRing(self.names, QQ)
            self.poly_ring = self.domain
        self.zero = self.domain.zero
        self.one = self.domain.one
        self._gens = dict(zip(self.names, self.domain.gens))

    @property
    def id(self) -> str:
        if not self.names:
            return "QQ"
        inner = ",".join(self.names)
        return f"QQ({inner})" if self.fraction else f"QQ[{inner}]"

    def __repr__(self):
        return f"ScalarRing({self.id})"

    def has(self, name: str) -> bool:
        return name in self._gens

    def gen(self, name: str):
        try:
            return self._gens[name]
        except KeyError:
            raise KeyError(f"ring {self.id} has no variable {name!r}") from None

    def __call__(self, value):
        if isinstance(value, Fraction):
            return self.domain(QQ(value.numerator, value.denominator))
        return self.domain(value)

    def rational(self, num: int, den: int = 1):
        return self.domain(QQ(num, den))

    def degree_in(self, c, name: str) -> int:
        """Largest power of ``name`` occurring in a polynomial coefficient."""
        idx = self.names.index(name)
        poly = c.numer if self.fraction else c
        return max((m[idx] for m in poly.keys()), default=0)

    def specialize(self, c, name: str, value):
        """Substitute a rational value for one variable (result stays in this ring)."""
        return _subs_poly(self, c, name, value)

    def to_str(self, c) -> str:
        return format_scalar(self, c)


def _subs_poly(ring: ScalarRing, c, name, value):
    if ring.fraction:
        num = _subs_poly_elem(ring.poly_ring, c.numer, name, value)
        den = _subs_poly_elem(ring.poly_ring, c.denom, name, value)
        return ring.domain((num, den))
    return _subs_poly_elem(ring.domain, c, name, value)


def _subs_poly_elem(pring, p, name, value):
    idx = pring.symbols.index(next(s for s in pring.symbols if str(s) == name))
    out = pring.zero
    val = QQ(value) if not isinstance(value, Fraction) else QQ(value.numerator, value.denominator)
    for mono, coeff in p.items():
        k = mono[idx]
        new_mono = mono[:idx] + (0,) + mono[idx + 1:]
        out += pring({new_mono: coeff * val**k})
    return out


@lru_cache(maxsize=None)
def get_ring(names: tuple[str, ...] = ("hbar",), fraction: bool = False) -> ScalarRing:
    """Shared ring instances, so that identity comparison detects mixing."""
    return ScalarRing(tuple(names), fraction)


def ring_from_id(text: str) -> ScalarRing:
    text = text.strip().replace(" ", "")
    if text == "QQ":
        return get_ring(())
    if text.startswith("QQ[") and text.endswith("]"):
        return get_ring(tuple(n for n in text[3:-1].split(",") if n))
    if text.startswith("QQ(") and text.endswith(")"):
        return get_ring(tuple(n for n in text[3:-1].split(",") if n), True)
    raise ValueError(f"unknown ring id {text!r}")


def check_same(a: ScalarRing, b: ScalarRing):
    if a is not b:
        raise RingMismatch(f"coefficient rings differ: {a.id} vs {b.id}")


def _fmt_rat(q) -> str:
    q = Fraction(int(q.numerator), int(q.denominator))
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _fmt_mono(names, mono) -> str:
    parts = []
    for name, k in zip(names, mono):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def _poly_terms(names, poly):
    """Terms of a polynomial as (sign, text) pairs, highest total degree first."""
    items = sorted(poly.items(), key=lambda t: (-sum(t[0]), tuple(-k for k in t[0])))
    out = []
    for mono, coeff in items:
        neg = coeff < 0
        c = -coeff if neg else coeff
        mono_s = _fmt_mono(names, mono)
        if not mono_s:
            body = _fmt_rat(c)
        elif c == 1:
            body = mono_s
        else:
            body = f"{_fmt_rat(c)}*{mono_s}"
        out.append((neg, body))
    return out


def _join(terms) -> str:
    s = ""
    for i, (neg, body) in enumerate(terms):
        if i == 0:
            s = f"-{body}" if neg else body
        else:
            s += f" - {body}" if neg else f" + {body}"
    return s


def format_poly(names, poly) -> str:
    terms = _poly_terms(names, poly)
    return _join(terms) if terms else "0"


def format_scalar(ring: ScalarRing, c) -> str:
    if ring.fraction:
        num = format_poly(ring.names, c.numer)
        if c.denom == ring.poly_ring.one:
            return num
        return f"({num})/({format_poly(ring.names, c.denom)})"
    return format_poly(ring.names, c)


def split_sign(ring: ScalarRing, c):
    """Return (negative, text) for use as a term prefix; text is '' for 1."""
    if ring.fraction and c.denom != ring.poly_ring.one:
        return False, f"({format_scalar(ring, c)})"
    poly = c.numer if ring.fraction else c
    terms = _poly_terms(ring.names, poly)
    if len(terms) == 1:
        neg, body = terms[0]
        return neg, ("" if body == "1" else body)
    neg = terms[0][0]
    if neg:
        terms = [(not n, b) for n, b in terms]
    return neg, f"({_join(terms)})"
