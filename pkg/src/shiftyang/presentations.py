"""Relation sets of the Cartan doubled Yangian and its quotients, shift maps,
H/S generator conversion and the spectral-shift twist T_eps.

Graded mode: every right-hand side carries the single hbar factor that makes
the relation homogeneous for deg E^(q) = <nu1,a> + q, deg F^(q) = <nu2,a> + q,
deg H^(p) = <mu,a> + p, deg hbar = 1.  Specialized mode sets hbar = 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .ncalg import NCPoly, ScalarRing, get_ring
from .ncalg.words import E, F, H, S, letter, unpack
from .rootdata import CartanDatum, build_cartan, is_antidominant

KINDS = ("Yinf", "Ymu", "Ytilde", "Ymu1mu2")


class PresentationError(ValueError):
    pass


class NotInImage(ValueError):
    def __init__(self, code: int, reason: str):
        from .ncalg.words import letter_str

        super().__init__(f"not in image: {letter_str(code)} ({reason})")
        self.letter = code


@dataclass(frozen=True)
class RelationInstance:
    family: str
    indices: tuple
    poly: NCPoly = field(compare=False)

    def to_report(self) -> dict:
        return {"family": self.family, "indices": list(self.indices), "relation": self.poly.to_str()}


@dataclass
class Presentation:
    datum: CartanDatum
    kind: str = "Ymu"
    shift: tuple = ()
    mu1: tuple = ()
    mu2: tuple = ()
    mode: str = "graded"
    level_bound: int = 8
    ring: ScalarRing = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise PresentationError(f"unknown presentation kind {self.kind!r}")
        if self.mode not in ("graded", "hbar1"):
            raise PresentationError(f"unknown hbar mode {self.mode!r}")
        n = self.datum.rank
        if self.kind == "Ymu1mu2":
            self.mu1 = tuple(self.mu1) or (0,) * n
            self.mu2 = tuple(self.mu2) or (0,) * n
            if not (is_antidominant(self.mu1) and is_antidominant(self.mu2)):
                raise PresentationError("Y_{mu1,mu2} needs antidominant mu1 and mu2")
            self.shift = tuple(a + b for a, b in zip(self.mu1, self.mu2))
        else:
            self.shift = tuple(self.shift) or (0,) * n
        if len(self.shift) != n:
            raise PresentationError(f"shift has {len(self.shift)} entries, rank is {n}")
        if self.ring is None:
            self.ring = get_ring(("hbar",))

    @classmethod
    def sl2(cls, m: int = 0, kind: str = "Ymu", **kw):
        return cls(build_cartan("A", 1), kind, shift=(m,), **kw)

    @property
    def hbar(self):
        return self.ring.gen("hbar") if self.mode == "graded" else self.ring.one

    def h_status(self, node: int, level: int):
        """'zero', 'one' or 'letter' for H_node^(level) in this quotient."""
        if self.kind == "Yinf":
            return "letter"
        if self.kind == "Ytilde":
            return "zero" if level < 0 else "letter"
        m = self.shift[node - 1]
        if level < -m:
            return "zero"
        if level == -m:
            return "one"
        return "letter"

    def h_poly(self, node: int, level: int) -> NCPoly:
        status = self.h_status(node, level)
        if status == "zero":
            return NCPoly.zero(self.ring)
        if status == "one":
            return NCPoly.one(self.ring)
        return NCPoly.gen(self.ring, H, node, level)

    def h_range(self, node: int):
        """H levels that are genuine letters, within the bound."""
        L = self.level_bound
        if self.kind == "Yinf":
            return range(-L, L + 1)
        if self.kind == "Ytilde":
            return range(0, L + 1)
        return range(-self.shift[node - 1] + 1, L + 1)

    def relations(self) -> list[RelationInstance]:
        return relations_for(self)


def _gen(ring, fam, node, level):
    return NCPoly.gen(ring, fam, node, level)


def _comm(a, b):
    return a * b - b * a


def _half_pairing(datum, i, j):
    return Fraction(datum.pairing[i - 1][j - 1], 2)


def relations_for(pres: Presentation) -> list[RelationInstance]:
    if pres.kind == "Ymu1mu2":
        return _relations_mu1mu2(pres)
    out: list[RelationInstance] = []
    ring, hb, datum, L = pres.ring, pres.hbar, pres.datum, pres.level_bound
    nodes = range(1, datum.rank + 1)

    def add(fam, idx, poly):
        if poly:
            out.append(RelationInstance(fam, idx, poly))

    # HH: pairs (i,p) < (j,q)
    hs = [(i, p) for i in nodes for p in pres.h_range(i)]
    for a, (i, p) in enumerate(hs):
        for j, q in hs[a + 1:]:
            add("HH", (i, j, p, q), _comm(pres.h_poly(i, p), pres.h_poly(j, q)))

    for i, j in product(nodes, nodes):
        for p, q in product(range(1, L + 1), repeat=2):
            rhs = pres.h_poly(i, p + q - 1).scale(hb) if i == j else NCPoly.zero(ring)
            add("EF", (i, j, p, q), _comm(_gen(ring, E, i, p), _gen(ring, F, j, q)) - rhs)

    for i, j in product(nodes, nodes):
        c = _half_pairing(datum, i, j)
        lo = pres.h_range(i).start - 1
        for p in range(lo, L):
            for q in range(1, L):
                for fam, X, sign in (("HE", E, 1), ("HF", F, -1)):
                    hp, hp1 = pres.h_poly(i, p), pres.h_poly(i, p + 1)
                    xq, xq1 = _gen(ring, X, j, q), _gen(ring, X, j, q + 1)
                    lhs = _comm(hp1, xq) - _comm(hp, xq1)
                    rhs = (hp * xq + xq * hp).scale(hb * ring(sign * c))
                    add(fam, (i, j, p, q), lhs - rhs)

    # EE/FF: (i,p,j,q) and (j,q,i,p) give the same relation, keep (i,p) <= (j,q)
    for fam, X, sign in (("EE", E, 1), ("FF", F, -1)):
        for i, j in product(nodes, nodes):
            c = _half_pairing(datum, i, j)
            for p, q in product(range(1, L), repeat=2):
                if (i, p) > (j, q):
                    continue
                lhs = _comm(_gen(ring, X, i, p + 1), _gen(ring, X, j, q)) - _comm(
                    _gen(ring, X, i, p), _gen(ring, X, j, q + 1)
                )
                xp, xq = _gen(ring, X, i, p), _gen(ring, X, j, q)
                rhs = (xp * xq + xq * xp).scale(hb * ring(sign * c))
                add(fam, (i, j, p, q), lhs - rhs)

    for fam, X in (("SerreE", E), ("SerreF", F)):
        for i, j in product(nodes, nodes):
            if i == j:
                continue
            n_ad = 1 - datum.pairing[i - 1][j - 1]
            for q in range(1, L + 1):
                for ps in product(range(1, L + 1), repeat=n_ad):
                    if list(ps) != sorted(ps):
                        continue
                    add(fam, (i, j) + ps + (q,), _serre_sym(ring, X, i, j, ps, q))
    return out


def _serre_sym(ring, X, i, j, ps, q):
    from itertools import permutations

    total = NCPoly.zero(ring)
    for perm in sorted(set(permutations(ps))):
        inner = _gen(ring, X, j, q)
        for p in reversed(perm):
            inner = _comm(_gen(ring, X, i, p), inner)
        total = total + inner
    return total


def s_letters(pres_or_shift, node: int):
    """The two distinguished S offsets -m+1, -m+2 for a node."""
    shift = pres_or_shift.shift if isinstance(pres_or_shift, Presentation) else pres_or_shift
    m = shift[node - 1]
    return -m + 1, -m + 2


def _relations_mu1mu2(pres: Presentation) -> list[RelationInstance]:
    out: list[RelationInstance] = []
    ring, hb, datum = pres.ring, pres.hbar, pres.datum
    mu, mu1, mu2 = pres.shift, pres.mu1, pres.mu2
    nodes = range(1, datum.rank + 1)
    pair = lambda i, j: datum.pairing[i - 1][j - 1]  # noqa: E731

    def add(fam, idx, poly):
        if poly:
            out.append(RelationInstance(fam, idx, poly))

    def s1(i):
        return _gen(ring, S, i, -mu[i - 1] + 1)

    def s2(i):
        return _gen(ring, S, i, -mu[i - 1] + 2)

    def e_top(i):
        return -mu1[i - 1] + 2

    def f_top(i):
        return -mu2[i - 1] + 2

    svars = [(i, k) for i in nodes for k in (1, 2)]
    for a, (i, k) in enumerate(svars):
        for j, l in svars[a + 1:]:
            x = s1(i) if k == 1 else s2(i)
            y = s1(j) if l == 1 else s2(j)
            add("SS", (i, k, j, l), _comm(x, y))

    # the r-range for S1E..S2F is 1 <= r <= -<mu1,a_j> + 1 (resp. mu2)
    for i, j in product(nodes, nodes):
        c = ring(pair(i, j)) * hb
        for r in range(1, e_top(j)):
            add("S1E", (i, j, r), _comm(s1(i), _gen(ring, E, j, r)) - _gen(ring, E, j, r).scale(c))
            add("S2E", (i, j, r), _comm(s2(i), _gen(ring, E, j, r)) - _gen(ring, E, j, r + 1).scale(c))
        for r in range(1, f_top(j)):
            add("S1F", (i, j, r), _comm(s1(i), _gen(ring, F, j, r)) + _gen(ring, F, j, r).scale(c))
            add("S2F", (i, j, r), _comm(s2(i), _gen(ring, F, j, r)) + _gen(ring, F, j, r + 1).scale(c))

    for i, j in product(nodes, nodes):
        for r in range(1, e_top(i) + 1):
            for s in range(1, f_top(j) + 1):
                lhs = _comm(_gen(ring, E, i, r), _gen(ring, F, j, s))
                if i != j:
                    add("EF-table", (i, j, r, s), lhs)
                    continue
                m = mu[i - 1]
                if r + s < -m + 1:
                    rhs = NCPoly.zero(ring)
                elif r + s == -m + 1:
                    rhs = NCPoly.one(ring)
                elif r + s == -m + 2:
                    rhs = s1(i)
                elif r + s == -m + 3:
                    rhs = s2(i) + (s1(i) * s1(i)).scale(ring(Fraction(1, 2)))
                else:
                    continue
                add("EF-table", (i, j, r, s), lhs - rhs.scale(hb))

    for fam, X, top, sign in (("EE", E, e_top, 1), ("FF", F, f_top, -1)):
        for i, j in product(nodes, nodes):
            c = ring(sign * Fraction(pair(i, j), 2)) * hb
            for r in range(1, top(i)):
                for s in range(1, top(j)):
                    if (i, r) > (j, s):
                        continue
                    lhs = _comm(_gen(ring, X, i, r + 1), _gen(ring, X, j, s)) - _comm(
                        _gen(ring, X, i, r), _gen(ring, X, j, s + 1)
                    )
                    xr, xs = _gen(ring, X, i, r), _gen(ring, X, j, s)
                    add(fam, (i, j, r, s), lhs - (xr * xs + xs * xr).scale(c))

    for fam, X in (("Eserre", E), ("Fserre", F)):
        for i, j in product(nodes, nodes):
            if i == j:
                continue
            inner = _gen(ring, X, j, 1)
            for _ in range(1 - pair(i, j)):
                inner = _comm(_gen(ring, X, i, 1), inner)
            add(fam, (i, j), inner)

    for i in nodes:
        inner = _comm(_gen(ring, E, i, e_top(i)), _gen(ring, F, i, f_top(i)))
        add("FSE", (i,), _comm(s2(i), inner))
    return out


# shift homomorphisms


def _as_tuple(v, rank=None):
    if isinstance(v, int):
        return (v,)
    return tuple(v)


def shift_hom_apply(x: NCPoly, mu, mu1, mu2) -> NCPoly:
    """iota_{mu,mu1,mu2}: E^(r) -> E^(r-<mu1>), F^(r) -> F^(r-<mu2>), H^(r) -> H^(r-<mu1+mu2>)."""
    mu, mu1, mu2 = _as_tuple(mu), _as_tuple(mu1), _as_tuple(mu2)
    if not (is_antidominant(mu1) and is_antidominant(mu2)):
        raise PresentationError("shift maps need antidominant mu1 and mu2")
    ring = x.ring

    def on_letter(code):
        fam, node, level = unpack(code)
        k = node - 1
        if fam == E:
            return NCPoly.word(ring, (letter(E, node, level - mu1[k]),))
        if fam == F:
            return NCPoly.word(ring, (letter(F, node, level - mu2[k]),))
        if fam == H:
            new = level - mu1[k] - mu2[k]
            if level < -mu[k]:
                return NCPoly.zero(ring)
            if level == -mu[k]:
                return NCPoly.one(ring)
            return NCPoly.word(ring, (letter(H, node, new),))
        raise PresentationError("convert S letters to H before applying a shift map")

    return x.map_letters(on_letter)


def shift_hom_preimage(y: NCPoly, mu, mu1, mu2) -> NCPoly:
    """Letterwise inverse of shift_hom_apply; raises NotInImage."""
    mu, mu1, mu2 = _as_tuple(mu), _as_tuple(mu1), _as_tuple(mu2)
    if not (is_antidominant(mu1) and is_antidominant(mu2)):
        raise PresentationError("shift maps need antidominant mu1 and mu2")
    ring = y.ring

    def on_letter(code):
        fam, node, level = unpack(code)
        k = node - 1
        if fam == E:
            src = level + mu1[k]
            if src < 1:
                raise NotInImage(code, f"E levels must exceed {-mu1[k]}")
            return NCPoly.word(ring, (letter(E, node, src),))
        if fam == F:
            src = level + mu2[k]
            if src < 1:
                raise NotInImage(code, f"F levels must exceed {-mu2[k]}")
            return NCPoly.word(ring, (letter(F, node, src),))
        if fam == H:
            src = level + mu1[k] + mu2[k]
            if src <= -mu[k]:
                raise NotInImage(code, f"H levels must exceed {-mu[k] - mu1[k] - mu2[k]}")
            return NCPoly.word(ring, (letter(H, node, src),))
        raise NotInImage(code, "S letters are not PBW letters")

    return y.map_letters(on_letter)


def s_h_convert(x: NCPoly, mu, direction: str = "s_to_h") -> NCPoly:
    """Convert between S and H letters at the offsets -m+1, -m+2."""
    mu = _as_tuple(mu)
    ring = x.ring
    half = ring(Fraction(1, 2))

    def on_letter(code):
        fam, node, level = unpack(code)
        m = mu[node - 1]
        if direction == "s_to_h":
            if fam != S:
                return NCPoly.word(ring, (code,))
            h1 = NCPoly.gen(ring, H, node, -m + 1)
            if level == -m + 1:
                return h1
            if level == -m + 2:
                return NCPoly.gen(ring, H, node, -m + 2) - (h1 * h1).scale(half)
            raise PresentationError(f"S letter at unsupported level {level} (shift {m})")
        if direction == "h_to_s":
            if fam == S:
                raise PresentationError("input already contains S letters")
            if fam != H:
                return NCPoly.word(ring, (code,))
            s1 = NCPoly.gen(ring, S, node, -m + 1)
            if level == -m + 1:
                return s1
            if level == -m + 2:
                return NCPoly.gen(ring, S, node, -m + 2) + (s1 * s1).scale(half)
            return NCPoly.word(ring, (code,))
        raise ValueError(f"unknown direction {direction!r}")

    return x.map_letters(on_letter)


def generalized_binomial(top: int, k: int) -> Fraction:
    if k < 0:
        return Fraction(0)
    num = Fraction(1)
    for i in range(k):
        num *= top - i
        num /= i + 1
    return num


def twist_T_eps(x: NCPoly, m: int, eps=None) -> NCPoly:
    """Rank-1 twist X(u) -> X(u - eps), read off coefficientwise.

    ``eps`` is a ring element (default: the ring variable ``eps``).
    T(X^(q)) = sum_p binom(-p, q-p) (-eps)^(q-p) X^(p); for H the sum also
    runs over the leading term H^(-m) = 1 of H(u) = u^m + ...
    """
    ring = x.ring
    if eps is None:
        eps = ring.gen("eps")
    elif isinstance(eps, str):
        eps = ring.gen(eps)
    minus_eps = -eps
    for key in x.terms:
        for w in key:
            for code in w:
                fam, node, _ = unpack(code)
                if node != 1:
                    raise PresentationError("T_eps is only defined in rank 1")

    def on_letter(code):
        fam, node, q = unpack(code)
        if fam == S:
            raise PresentationError("convert S letters to H before twisting")
        lo = 1 if fam in (E, F) else -m
        if fam == H and q <= -m:
            return NCPoly.one(ring) if q == -m else NCPoly.zero(ring)
        out = NCPoly.zero(ring)
        for p in range(lo, q + 1):
            coeff = ring(generalized_binomial(-p, q - p)) * minus_eps ** (q - p)
            term = NCPoly.one(ring) if (fam == H and p == -m) else NCPoly.gen(ring, fam, node, p)
            out = out + term.scale(coeff)
        return out

    return x.map_letters(on_letter)
