"""PBW normal form for the rank-1 shifted Yangian Y_m(sl2).

Ordered monomials are E...F...H... with ascending levels inside each block;
with the packed letter codes this is exactly a non-decreasing code tuple.

Straightening works with a table of pair corrections: for letters x > y,
``x*y = y*x + C(x, y)`` where C is already in normal form.  Every letter of
C(x, y) is >= min(x, y), so inserting a letter into a normal word only needs
to walk right past smaller letters:

    insert(x, y*rest) = y * insert(x, rest) + C(x, y) * rest

and the first product is already ordered.  Both ``insert`` and ``C`` are
memoized per engine.
"""

from __future__ import annotations

import heapq
import random

from .ncalg import NCPoly, ScalarRing, get_ring
from .ncalg.words import E, F, H, S, letter, letter_str, unpack


class EngineError(ValueError):
    pass


def _acc(target: dict, word, coeff):
    old = target.get(word)
    if old is None:
        if coeff:
            target[word] = coeff
        return
    new = old + coeff
    if new:
        target[word] = new
    else:
        del target[word]


class Sl2Engine:
    """Equality oracle for Y_m(sl2) (or for Y-tilde with ``tilde=True``).

    ``mode`` is ``graded`` (hbar a ring variable) or ``hbar1`` (hbar = 1).
    In the tilde algebra H^(p) vanishes for p < 0 and H^(0) is an ordinary
    central letter.
    """

    def __init__(self, m: int = 0, ring: ScalarRing | None = None, mode: str = "graded",
                 tilde: bool = False):
        if mode not in ("graded", "hbar1"):
            raise EngineError(f"unknown mode {mode!r}")
        self.m = 0 if tilde else m
        self.tilde = tilde
        self.mode = mode
        self.ring = ring or get_ring(("hbar",))
        if mode == "graded":
            self.hbar = self.ring.gen("hbar")
        else:
            self.hbar = self.ring.one
        self._one = self.ring.one
        self._corr: dict = {}
        self._ins: dict = {}
        self._nfw: dict = {}
        self._kE: dict = {}
        self._kF: dict = {}
        self._mE: dict = {}
        self._mF: dict = {}

    # letters

    def lowest_h(self) -> int:
        """Smallest H level that is a PBW letter."""
        return 0 if self.tilde else -self.m + 1

    def h_status(self, level: int) -> str:
        if self.tilde:
            return "zero" if level < 0 else "letter"
        if level < -self.m:
            return "zero"
        if level == -self.m:
            return "one"
        return "letter"

    def _h_term(self, level: int) -> dict:
        st = self.h_status(level)
        if st == "zero":
            return {}
        if st == "one":
            return {(): self._one}
        return {(letter(H, 1, level),): self._one}

    def _check_letter(self, code: int):
        fam, node, level = unpack(code)
        if node != 1:
            raise EngineError(f"rank-1 engine got letter {letter_str(code)}")
        if fam == S:
            raise EngineError("S letters must be converted to H first")
        if fam in (E, F) and level < 1:
            raise EngineError(f"invalid letter {letter_str(code)}")

    # pair corrections

    def correction(self, x: int, y: int) -> dict:
        """C(x, y) with x*y = y*x + C(x, y), for letters x > y."""
        key = (x, y)
        got = self._corr.get(key)
        if got is not None:
            return got
        fx, _, lx = unpack(x)
        fy, _, ly = unpack(y)
        if fx == F and fy == E:
            out = {w: -self.hbar * c for w, c in self._h_term(lx + ly - 1).items()}
        elif fx == E and fy == E:
            out = self._m_table(E, lx, ly)
        elif fx == F and fy == F:
            out = self._m_table(F, lx, ly)
        elif fx == H and fy == E:
            out = self._k_table(E, lx, ly)
        elif fx == H and fy == F:
            out = self._k_table(F, lx, ly)
        elif fx == H and fy == H:
            out = {}
        else:
            raise EngineError(f"no correction for {letter_str(x)}, {letter_str(y)}")
        self._corr[key] = out
        return out

    def _m_table(self, fam: int, a: int, b: int) -> dict:
        """[X^(a), X^(b)] for a > b in normal form, X = E or F.

        From [X^(a), X^(b)] = [X^(a-1), X^(b+1)] + s*hbar*(X^(a-1)X^(b) + X^(b)X^(a-1)),
        s = +1 for E and -1 for F.
        """
        table = self._mE if fam == E else self._mF
        key = (a, b)
        if key in table:
            return table[key]
        s = self.hbar if fam == E else -self.hbar
        xb = letter(fam, 1, b)
        if a == b + 1:
            out = {(xb, xb): s}
        else:
            out = {}
            if a - 1 > b + 1:
                out = dict(self._m_table(fam, a - 1, b + 1))
            xa1 = letter(fam, 1, a - 1)
            _acc(out, (xb, xa1), s * 2)
            for w, c in self._m_table(fam, a - 1, b).items():
                _acc(out, w, s * c)
        table[key] = out
        return out

    def _k_table(self, fam: int, p: int, q: int) -> dict:
        """[H^(p), X^(q)] in normal form, via
        K(p, q) = K(p-1, q+1) + s*hbar*K(p-1, q) + 2*s*hbar*X^(q)H^(p-1).
        """
        table = self._kE if fam == E else self._kF
        key = (p, q)
        if key in table:
            return table[key]
        base = 0 if self.tilde else -self.m
        if p <= base:
            table[key] = {}
            return table[key]
        s = self.hbar if fam == E else -self.hbar
        out = dict(self._k_table(fam, p - 1, q + 1))
        for w, c in self._k_table(fam, p - 1, q).items():
            _acc(out, w, s * c)
        xq = letter(fam, 1, q)
        for w, c in self._h_term(p - 1).items():
            _acc(out, (xq,) + w, s * 2 * c)
        table[key] = out
        return out

    # straightening

    def insert(self, x: int, word: tuple) -> dict:
        """Normal form of x * word for a normal word."""
        if not word or x <= word[0]:
            return {(x,) + word: self._one}
        key = (x, word)
        got = self._ins.get(key)
        if got is not None:
            return got
        y, rest = word[0], word[1:]
        out: dict = {}
        for w, c in self.insert(x, rest).items():
            out[(y,) + w] = c
        for cw, cc in self.correction(x, y).items():
            for w, c in self.mul_normal(cw, rest).items():
                _acc(out, w, cc * c)
        self._ins[key] = out
        return out

    def mul_normal(self, left: tuple, right: tuple) -> dict:
        """Normal form of left*right for two normal words."""
        cur = {right: self._one}
        for x in reversed(left):
            nxt: dict = {}
            for w, c in cur.items():
                for w2, c2 in self.insert(x, w).items():
                    _acc(nxt, w2, c * c2)
            cur = nxt
        return cur

    def _substitute_h(self, word: tuple):
        """Drop H letters equal to 1; return None if some H letter vanishes."""
        out = []
        for code in word:
            self._check_letter(code)
            fam, _, level = unpack(code)
            if fam == H:
                st = self.h_status(level)
                if st == "zero":
                    return None
                if st == "one":
                    continue
            out.append(code)
        return tuple(out)

    def nf_word(self, word: tuple) -> dict:
        got = self._nfw.get(word)
        if got is not None:
            return got
        w = self._substitute_h(word)
        if w is None:
            out = {}
        elif len(w) <= 1:
            out = {w: self._one}
        else:
            out = {}
            for tail, c in self.nf_word(w[1:]).items():
                for w2, c2 in self.insert(w[0], tail).items():
                    _acc(out, w2, c * c2)
        self._nfw[word] = out
        return out

    def _coeff_in(self, c):
        if self.mode == "hbar1" and self.ring.has("hbar"):
            return self.ring.specialize(c, "hbar", 1)
        return c

    def normal_form(self, x: NCPoly) -> NCPoly:
        if x.arity != 1:
            raise EngineError("normal_form takes arity-1 input; use normal_form_tensor")
        if x.ring is not self.ring:
            from .ncalg import RingMismatch

            raise RingMismatch(f"engine ring {self.ring.id} vs input ring {x.ring.id}")
        out: dict = {}
        for (w,), c in x.terms.items():
            c = self._coeff_in(c)
            for w2, c2 in self.nf_word(w).items():
                _acc(out, w2, c * c2)
        return NCPoly(self.ring, {(w,): c for w, c in out.items()}, 1)

    def equal(self, a: NCPoly, b: NCPoly) -> bool:
        return self.normal_form(a - b).is_zero()

    def is_normal_word(self, word: tuple) -> bool:
        if any(a > b for a, b in zip(word, word[1:])):
            return False
        for code in word:
            fam, node, level = unpack(code)
            if node != 1 or fam == S:
                return False
            if fam == H and self.h_status(level) != "letter":
                return False
            if fam in (E, F) and level < 1:
                return False
        return True

    # randomized reduction order, for path-independence checks

    def reduce_randomly(self, x: NCPoly, rng: random.Random) -> NCPoly:
        """Rewrite a randomly chosen descent at each step.

        Words are processed largest-first for the order (length, level sum,
        inversions), which every rewrite strictly decreases, so equal words
        merge before being expanded.
        """
        def rank(w):
            inv = sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])
            return (len(w), sum(unpack(c)[2] for c in w), inv)

        work: dict = {}
        for (w,), c in x.terms.items():
            w2 = self._substitute_h(w)
            if w2 is not None:
                _acc(work, w2, self._coeff_in(c))
        heap = [(tuple(-k for k in rank(w)), w) for w in work]
        heapq.heapify(heap)
        done: dict = {}
        while heap:
            _, w = heapq.heappop(heap)
            c = work.pop(w, None)
            if c is None:
                continue
            descents = [i for i in range(len(w) - 1) if w[i] > w[i + 1]]
            if not descents:
                _acc(done, w, c)
                continue
            i = rng.choice(descents)
            head, xl, yl, tail = w[:i], w[i], w[i + 1], w[i + 2:]
            pieces = [(head + (yl, xl) + tail, c)]
            pieces += [(head + cw + tail, c * cc) for cw, cc in self.correction(xl, yl).items()]
            for w2, c2 in pieces:
                if w2 not in work:
                    heapq.heappush(heap, (tuple(-k for k in rank(w2)), w2))
                _acc(work, w2, c2)
        return NCPoly(self.ring, {(w,): c for w, c in done.items()}, 1)


def normal_form_tensor(x: NCPoly, engines) -> NCPoly:
    """Slotwise normal form of a tensor element, one engine per slot."""
    if len(engines) != x.arity:
        raise EngineError(f"need {x.arity} engines, got {len(engines)}")
    out = x
    for slot, eng in enumerate(engines):
        out = out.map_words(lambda w, e=eng: e.normal_form(NCPoly.word(out.ring, w)), slot=slot)
    return out


_ENGINES: dict = {}


def engine_for(m: int, ring: ScalarRing | None = None, mode: str = "graded", tilde: bool = False) -> Sl2Engine:
    """Shared engines keyed by (m, ring, mode, tilde) so memo tables are reused."""
    ring = ring or get_ring(("hbar",))
    key = (m, ring.id, mode, tilde)
    eng = _ENGINES.get(key)
    if eng is None:
        eng = _ENGINES[key] = Sl2Engine(m, ring, mode, tilde)
    return eng


def normal_form(x: NCPoly, m: int, mode: str = "graded") -> NCPoly:
    return engine_for(m, x.ring, mode).normal_form(x)


# PBW monomials and degrees


def variable_degrees(m: int, nu1: int, nu2: int, d: int):
    """PBW variables of degree <= d with their degrees, for deg E^(q) = nu1+q,
    deg F^(q) = nu2+q, deg H^(p) = m+p (p > -m)."""
    if nu1 + 1 <= 0 or nu2 + 1 <= 0:
        raise EngineError(
            f"degree assignment (nu1, nu2) = ({nu1}, {nu2}) has PBW variables of degree <= 0"
        )
    out = []
    for q in range(1, d - nu1 + 1):
        out.append((letter(E, 1, q), nu1 + q))
    for q in range(1, d - nu2 + 1):
        out.append((letter(F, 1, q), nu2 + q))
    for p in range(-m + 1, d - m + 1):
        out.append((letter(H, 1, p), m + p))
    return out


def enumerate_pbw(m: int, nu1: int, nu2: int, d: int):
    """All ordered PBW monomials of degree <= d and the count per exact degree."""
    variables = variable_degrees(m, nu1, nu2, d)
    deg = dict(variables)
    codes = sorted(deg)
    monos: list[tuple] = [()]

    def extend(prefix, start, total):
        for idx in range(start, len(codes)):
            c = codes[idx]
            t = total + deg[c]
            if t > d:
                continue
            w = prefix + (c,)
            monos.append(w)
            extend(w, idx, t)

    extend((), 0, 0)
    counts = [0] * (d + 1)
    for w in monos:
        counts[sum(deg[c] for c in w)] += 1
    monos.sort(key=lambda w: (sum(deg[c] for c in w), w))
    return monos, counts


def word_degree(word, m: int, nu1: int, nu2: int) -> int:
    total = 0
    for code in word:
        fam, _, level = unpack(code)
        total += {E: nu1, F: nu2, H: m}[fam] + level
    return total


def audit_splitting(m: int) -> tuple[int, int]:
    """(nu1, nu2) used by the dimension audit: (0, 0) for m <= 0, (0, m) for m > 0."""
    return (0, max(m, 0))


def generator_words(m: int, nu1: int, nu2: int, d: int):
    """All words in PBW letters of exact total degree d (any letter order)."""
    variables = variable_degrees(m, nu1, nu2, d)
    out = []

    def rec(prefix, total):
        if total == d:
            out.append(prefix)
            return
        for code, dg in variables:
            if total + dg <= d:
                rec(prefix + (code,), total + dg)

    rec((), 0)
    return out


def dimension_audit(m: int, d_max: int = 3, engine: Sl2Engine | None = None):
    """Normal-form every generator word up to degree d_max.

    Checks that every term hbar^k * w of nf(word) has deg w + k <= deg word
    and that the top-degree monomials reached at degree d number exactly the
    enumerate_pbw count.
    """
    eng = engine or engine_for(m)
    nu1, nu2 = audit_splitting(m)
    _, counts = enumerate_pbw(m, nu1, nu2, d_max)
    rows = []
    for d in range(d_max + 1):
        reached = set()
        bad = None
        for w in generator_words(m, nu1, nu2, d):
            nf = eng.nf_word(w)
            for w2, c in nf.items():
                k = eng.ring.degree_in(c, "hbar") if eng.mode == "graded" else 0
                dg = word_degree(w2, m, nu1, nu2)
                if dg + k > d or not eng.is_normal_word(w2):
                    bad = (w, w2)
                if dg == d:
                    reached.add(w2)
        rows.append({"degree": d, "pbw_count": counts[d], "span_count": len(reached), "ok": bad is None and len(reached) == counts[d],
                     "witness": None if bad is None else [list(bad[0]), list(bad[1])]})
    return rows


def random_degree_word(rng: random.Random, m: int, d: int, nu1: int | None = None, nu2: int | None = None):
    """Random word in PBW letters of exact total degree d (audit splitting by default)."""
    if nu1 is None:
        nu1, nu2 = audit_splitting(m)
    variables = variable_degrees(m, nu1, nu2, d)
    word, total = (), 0
    while total < d:
        code, dg = rng.choice([v for v in variables if v[1] <= d - total])
        word += (code,)
        total += dg
    return word


def random_word(rng: random.Random, m: int, length: int, max_level: int = 4):
    letters = [letter(E, 1, q) for q in range(1, max_level + 1)]
    letters += [letter(F, 1, q) for q in range(1, max_level + 1)]
    letters += [letter(H, 1, p) for p in range(-m + 1, -m + max_level + 1)]
    return tuple(rng.choice(letters) for _ in range(length))




# presentation self-verification


def _check(name, ok, witness=None, **extra):
    out = {"name": name, "status": "pass" if ok else "fail", "witness": witness or ""}
    out.update(extra)
    return out


def verify_presentation(m: int, bound: int = 8, audit_degree: int = 3, fuzz: int = 30, seed: int = 0):
    """Relation vanishing, dimension audit and path-independence fuzz for Y_m(sl2)."""
    from .presentations import Presentation

    eng = engine_for(m)
    checks = []
    pres = Presentation.sl2(m, level_bound=bound)
    by_family: dict = {}
    for rel in pres.relations():
        res = eng.normal_form(rel.poly)
        fam = by_family.setdefault(rel.family, [0, None])
        fam[0] += 1
        if res and fam[1] is None:
            fam[1] = f"{rel.family}{rel.indices}: {res.to_str()}"
    for fam, (count, bad) in sorted(by_family.items()):
        checks.append(_check(f"relations/{fam}", bad is None, bad, count=count))
    for row in dimension_audit(m, audit_degree, eng):
        w = "" if row["ok"] else f"pbw={row['pbw_count']} span={row['span_count']} {row['witness']}"
        checks.append(_check(f"dimension/degree{row['degree']}", row["ok"], w))
    rng = random.Random(seed)
    bad = None
    for _ in range(fuzz):
        w = random_degree_word(rng, m, 6)
        x = NCPoly.word(eng.ring, w)
        if eng.reduce_randomly(x, rng) != eng.normal_form(x):
            from .ncalg.words import word_str

            bad = word_str(w)
            break
    checks.append(_check("path-independence", bad is None, bad, samples=fuzz))
    return checks


def ytilde_ring():
    return get_ring(("hbar", "h0"))


def ytilde_embedding(x: NCPoly) -> NCPoly:
    """E~(q) -> E(q)*h0, F~(q) -> F(q), H~(p) -> H(p)*h0 into Y (x) Q[h0], with H(0) = 1 in Y."""
    ring = ytilde_ring()
    x = x.change_ring(ring)
    h0 = ring.gen("h0")

    def on_letter(code):
        fam, node, level = unpack(code)
        if fam == E:
            return NCPoly.word(ring, (code,), h0)
        if fam == F:
            return NCPoly.word(ring, (code,))
        if fam == H:
            if level < 0:
                return NCPoly.zero(ring)
            if level == 0:
                return NCPoly.scalar(ring, h0)
            return NCPoly.word(ring, (code,), h0)
        raise EngineError("S letters are not part of Y-tilde")

    return x.map_letters(on_letter)


def verify_ytilde(bound: int = 6):
    """All Y-tilde relations map to zero in Y (x) Q[h0], and vanish in the Y-tilde engine."""
    from .presentations import Presentation
    from .rootdata import build_cartan

    pres = Presentation(build_cartan("A", 1), "Ytilde", level_bound=bound)
    target = engine_for(0, ytilde_ring())
    own = engine_for(0, pres.ring, tilde=True)
    bad_embed = bad_own = None
    rels = pres.relations()
    for rel in rels:
        img = target.normal_form(ytilde_embedding(rel.poly))
        if img and bad_embed is None:
            bad_embed = f"{rel.family}{rel.indices}: {img.to_str()}"
        res = own.normal_form(rel.poly)
        if res and bad_own is None:
            bad_own = f"{rel.family}{rel.indices}: {res.to_str()}"
    return [
        _check("ytilde/embedding", bad_embed is None, bad_embed, count=len(rels)),
        _check("ytilde/relations", bad_own is None, bad_own, count=len(rels)),
    ]


def left_ideal_check(s_max: int = 3, r_max: int = 4):
    """[H~(s), E~(r)] lies in the left ideal generated by H~(0..s-1)."""
    ring = get_ring(("hbar",))
    eng = engine_for(0, ring, tilde=True)
    checks = []
    for s in range(0, s_max + 1):
        for r in range(1, r_max + 1):
            hs = NCPoly.gen(ring, H, 1, s)
            er = NCPoly.gen(ring, E, 1, r)
            res = eng.normal_form(hs * er - er * hs)
            bad = None
            for (w,), _ in res.terms.items():
                if not any(unpack(c)[0] == H and unpack(c)[2] < s for c in w):
                    bad = res.to_str()
                    break
            checks.append(_check(f"left-ideal/s{s}/r{r}", bad is None, bad))
    return checks
