"""Coproducts Delta: Y_{mu1+mu2} -> Y_{mu1} (x) Y_{mu2}.

Three routes:

* ``delta_on_generators``: closed formulas on the distinguished generators
  for antidominant mu1, mu2 (any simply-laced type; data only in rank >= 2).
* ``MolevCoproduct``: rank-1 current-series formulas, exact per coefficient.
  The j-th summand of each series starts at order u^-(2j + 1 + const), so
  the coefficient of u^-p only involves j <= (p + const)/2 and no
  truncation error is possible.
* ``GeneralCoproduct``: arbitrary rank-1 shifts via the square
  Delta = (iota (x) iota)^-1 o Delta_antidominant o iota.

Slot 1 always carries the shift mu1.
"""

from __future__ import annotations


from .ncalg import NCPoly, ScalarRing, get_ring
from .ncalg.words import E, F, H, S, unpack
from .pbw import Sl2Engine, engine_for
from .presentations import (
    Presentation,
    generalized_binomial,
    s_h_convert,
    shift_hom_apply,
    shift_hom_preimage,
)
from .rootdata import CartanDatum, build_cartan, default_pbw_choice, is_antidominant


class CoproductError(ValueError):
    pass


def _as_shift(v):
    return (v,) if isinstance(v, int) else tuple(v)


# tensor products of normal forms


class TensorNF:
    """Slotwise normal forms and products in Y_{m1} (x) ... (x) Y_{mk} (rank 1)."""

    def __init__(self, shifts, ring: ScalarRing | None = None, mode: str = "graded"):
        self.ring = ring or get_ring(("hbar",))
        self.shifts = tuple(shifts)
        self.engines = [engine_for(m, self.ring, mode) for m in self.shifts]
        self.arity = len(self.shifts)

    def nf(self, x: NCPoly) -> NCPoly:
        if x.arity != self.arity:
            raise CoproductError(f"arity {x.arity} vs {self.arity} slots")
        acc: dict = {}
        for key, c in x.terms.items():
            parts = [eng.nf_word(w) for eng, w in zip(self.engines, key)]
            _cartesian_into(acc, parts, c)
        return NCPoly(self.ring, acc, self.arity)

    def mul(self, a: NCPoly, b: NCPoly) -> NCPoly:
        """Product of two normal-form tensors, returned in normal form."""
        acc: dict = {}
        for ka, ca in a.terms.items():
            for kb, cb in b.terms.items():
                parts = [eng.mul_normal(x, y) for eng, x, y in zip(self.engines, ka, kb)]
                _cartesian_into(acc, parts, ca * cb)
        return NCPoly(self.ring, acc, self.arity)

    def one(self) -> NCPoly:
        return NCPoly.one(self.ring, self.arity)


def _cartesian_into(acc: dict, parts, coeff):
    combos = [((), coeff)]
    for part in parts:
        nxt = []
        for key, c in combos:
            for w, cw in part.items():
                nxt.append((key + (w,), c * cw))
        combos = nxt
    for key, c in combos:
        old = acc.get(key)
        new = c if old is None else old + c
        if new:
            acc[key] = new
        elif old is not None:
            del acc[key]


class AlgebraMap:
    """Extends letter images multiplicatively; images are normal-form tensors."""

    def __init__(self, target: TensorNF, letter_image, source_engine: Sl2Engine | None = None):
        self.target = target
        self.letter_image = letter_image
        self.source = source_engine
        self._letters: dict = {}
        self._words: dict = {(): target.one()}

    def image_of_letter(self, code):
        got = self._letters.get(code)
        if got is None:
            got = self._letters[code] = self.target.nf(self.letter_image(code))
        return got

    def image_of_word(self, word):
        got = self._words.get(word)
        if got is not None:
            return got
        if self.source is not None:
            sub = self.source._substitute_h(word)
            if sub is None:
                got = NCPoly.zero(self.target.ring, self.target.arity)
                self._words[word] = got
                return got
            if sub != word:
                got = self._words[word] = self.image_of_word(sub)
                return got
        got = self.target.mul(self.image_of_letter(word[0]), self.image_of_word(word[1:]))
        self._words[word] = got
        return got

    def __call__(self, x: NCPoly) -> NCPoly:
        if x.arity != 1:
            raise CoproductError("coproducts take arity-1 input")
        acc = NCPoly.zero(self.target.ring, self.target.arity)
        for (w,), c in x.terms.items():
            acc = acc + self.image_of_word(w).scale(c)
        return acc


# truncated series in u^-1: {n: NCPoly} meaning sum c_n u^-n, kept for n <= order


def _ser_mul(a: dict, b: dict, order: int) -> dict:
    out: dict = {}
    for i, x in a.items():
        for j, y in b.items():
            if i + j <= order:
                out[i + j] = out[i + j] + x * y if i + j in out else x * y
    return out


def _ser_tensor(a: dict, b: dict, order: int) -> dict:
    out: dict = {}
    for i, x in a.items():
        for j, y in b.items():
            if i + j <= order:
                t = x.tensor(y)
                out[i + j] = out[i + j] + t if i + j in out else t
    return out


def _ser_pow(a: dict, k: int, order: int, ring) -> dict:
    out = {0: NCPoly.one(ring)}
    for _ in range(k):
        out = _ser_mul(out, a, order)
    return out


def _low(series: dict) -> int:
    return min((n for n, v in series.items() if v), default=10**9)


class MolevCoproduct(AlgebraMap):
    """Delta: Y_{k+l}(sl2) -> Y_k (x) Y_l for k, l <= 0 from the current series."""

    def __init__(self, k: int, l: int, ring: ScalarRing | None = None, mode: str = "graded"):
        if k > 0 or l > 0:
            raise CoproductError("the current-series coproduct needs k, l <= 0")
        self.k, self.l, self.m = k, l, k + l
        target = TensorNF((k, l), ring, mode)
        super().__init__(target, self._generator_image, engine_for(k + l, target.ring, mode))
        self.hbar = target.engines[0].hbar
        self.ring = target.ring

    def _e(self, order, shift=False):
        return self._xseries(E, order, shift)

    def _xseries(self, fam, order, shifted):
        ring = self.ring
        out: dict = {}
        for q in range(1, order + 1):
            gen = NCPoly.gen(ring, fam, 1, q)
            if not shifted:
                out[q] = out.get(q, NCPoly.zero(ring)) + gen
                continue
            # (u + hbar)^-q = sum_i binom(-q, i) hbar^i u^(-q-i)
            for i in range(0, order - q + 1):
                c = ring(generalized_binomial(-q, i)) * self.hbar**i
                out[q + i] = out.get(q + i, NCPoly.zero(ring)) + gen.scale(c)
        return out

    def _hseries(self, shift, order):
        ring = self.ring
        out = {-shift: NCPoly.one(ring)}
        for p in range(-shift + 1, order + 1):
            out[p] = NCPoly.gen(ring, H, 1, p)
        return out

    def _generator_image(self, code) -> NCPoly:
        fam, node, p = unpack(code)
        if node != 1:
            raise CoproductError("rank-1 coproduct")
        ring, k, l = self.ring, self.k, self.l
        one = NCPoly.one(ring)
        total: dict = {}
        if fam == E:
            total = _ser_tensor(self._xseries(E, p, False), {0: one}, p)
            f_sh, h1 = self._xseries(F, p, True), self._hseries(k, p + max(-k, 0))
            e2 = self._xseries(E, p, False)
            j = 0
            while 2 * j + 1 - k <= p:
                left = _ser_mul(_ser_pow(f_sh, j, p - k, ring), h1, p - k)
                right = _ser_pow(e2, j + 1, p - k, ring)
                term = _ser_tensor(left, right, p)
                _ser_add(total, term, (-1) ** j)
                j += 1
        elif fam == F:
            total = _ser_tensor({0: one}, self._xseries(F, p, False), p)
            f1 = self._xseries(F, p, False)
            h2, e_sh = self._hseries(l, p - l), self._xseries(E, p, True)
            j = 0
            while 2 * j + 1 - l <= p:
                left = _ser_pow(f1, j + 1, p - l, ring)
                right = _ser_mul(h2, _ser_pow(e_sh, j, p - l, ring), p - l)
                _ser_add(total, _ser_tensor(left, right, p), (-1) ** j)
                j += 1
        elif fam == H:
            if p <= -self.m:
                return NCPoly.one(ring, 2) if p == -self.m else NCPoly.zero(ring, 2)
            f_sh, e_sh = self._xseries(F, p, True), self._xseries(E, p, True)
            h1, h2 = self._hseries(k, p - l), self._hseries(l, p - k)
            j = 0
            while 2 * j - k - l <= p:
                left = _ser_mul(_ser_pow(f_sh, j, p - l, ring), h1, p - l)
                right = _ser_mul(h2, _ser_pow(e_sh, j, p - k, ring), p - k)
                _ser_add(total, _ser_tensor(left, right, p), (-1) ** j * (j + 1))
                j += 1
        else:
            raise CoproductError("convert S letters to H first")
        return total.get(p, NCPoly.zero(ring, 2))


def _ser_add(total: dict, term: dict, sign):
    for n, v in term.items():
        v = v.scale(sign)
        total[n] = total[n] + v if n in total else v


# generator table (antidominant, any simply-laced type)


def _bracket_chain(ring, fam, seq, levels):
    """[X_{i1}^(q1), [X_{i2}^(q2), ... X_{il}^(ql)]] as an NCPoly."""
    inner = NCPoly.gen(ring, fam, seq[-1], levels[-1])
    for node, q in zip(reversed(seq[:-1]), reversed(levels[:-1])):
        x = NCPoly.gen(ring, fam, node, q)
        inner = x * inner - inner * x
    return inner


def root_vector(ring, datum: CartanDatum, fam, beta, q=1, choice=None):
    choice = choice or default_pbw_choice(datum)
    seq = choice.sequence(beta)
    return _bracket_chain(ring, fam, seq, choice.level_split(beta, q))


def delta_on_generators(datum: CartanDatum, mu1, mu2, ring: ScalarRing | None = None) -> dict:
    """{generator NCPoly text: image in Y_{mu1} (x) Y_{mu2}} for antidominant mu1, mu2.

    Returned as a list of (generator, image) pairs keyed by a label.  S
    letters appear with their absolute levels on each side.
    """
    mu1, mu2 = _as_shift(mu1), _as_shift(mu2)
    if not (is_antidominant(mu1) and is_antidominant(mu2)):
        raise CoproductError("the generator table needs antidominant mu1 and mu2")
    ring = ring or get_ring(("hbar",))
    choice = default_pbw_choice(datum)
    mu = tuple(a + b for a, b in zip(mu1, mu2))
    one = NCPoly.one(ring)

    def g(fam, i, lvl):
        return NCPoly.gen(ring, fam, i, lvl)

    def t(a, b):
        return a.tensor(b)

    roots = datum.positive_roots
    table: dict = {}
    for i in range(1, datum.rank + 1):
        m1, m2, m = mu1[i - 1], mu2[i - 1], mu[i - 1]
        for r in range(1, -m1 + 1):
            table[("E", i, r)] = (g(E, i, r), t(g(E, i, r), one))
        table[("E", i, -m1 + 1)] = (g(E, i, -m1 + 1), t(g(E, i, -m1 + 1), one) + t(one, g(E, i, 1)))
        img = t(g(E, i, -m1 + 2), one) + t(one, g(E, i, 2)) + t(g(S, i, -m1 + 1), g(E, i, 1))
        for gamma in roots:
            fg = root_vector(ring, datum, F, gamma, 1, choice)
            eg = root_vector(ring, datum, E, gamma, 1, choice)
            ei = g(E, i, 1)
            br = ei * eg - eg * ei
            if br:
                img = img - t(fg, br)
        table[("E", i, -m1 + 2)] = (g(E, i, -m1 + 2), img)
        for r in range(1, -m2 + 1):
            table[("F", i, r)] = (g(F, i, r), t(one, g(F, i, r)))
        table[("F", i, -m2 + 1)] = (g(F, i, -m2 + 1), t(one, g(F, i, -m2 + 1)) + t(g(F, i, 1), one))
        img = t(one, g(F, i, -m2 + 2)) + t(g(F, i, 2), one) + t(g(F, i, 1), g(S, i, -m2 + 1))
        for gamma in roots:
            fg = root_vector(ring, datum, F, gamma, 1, choice)
            eg = root_vector(ring, datum, E, gamma, 1, choice)
            fi = g(F, i, 1)
            br = fi * fg - fg * fi
            if br:
                img = img + t(br, eg)
        table[("F", i, -m2 + 2)] = (g(F, i, -m2 + 2), img)
        table[("S", i, -m + 1)] = (g(S, i, -m + 1), t(g(S, i, -m1 + 1), one) + t(one, g(S, i, -m2 + 1)))
        img = t(g(S, i, -m1 + 2), one) + t(one, g(S, i, -m2 + 2))
        for gamma in roots:
            pairing = datum.pairing_with_simple(i - 1, gamma)
            if pairing:
                fg = root_vector(ring, datum, F, gamma, 1, choice)
                eg = root_vector(ring, datum, E, gamma, 1, choice)
                img = img - t(fg, eg).scale(ring(pairing))
        table[("S", i, -m + 2)] = (g(S, i, -m + 2), img)
    return table


def table_in_h_letters(table: dict, mu1, mu2) -> dict:
    """Rewrite S letters of a rank-1 table through H on each slot and source."""
    mu1, mu2 = _as_shift(mu1), _as_shift(mu2)
    mu = tuple(a + b for a, b in zip(mu1, mu2))
    out = {}
    for key, (gen, img) in table.items():
        src = s_h_convert(gen, mu)
        img = img.map_words(lambda w: s_h_convert(NCPoly.word(img.ring, w), mu1), slot=0)
        img = img.map_words(lambda w: s_h_convert(NCPoly.word(img.ring, w), mu2), slot=1)
        out[key] = (src, img)
    return out


# general shifts (rank 1)


def smallest_eta(m1: int, m2: int) -> tuple[int, int]:
    return (-max(m1, 0), -max(m2, 0))


class GeneralCoproduct(AlgebraMap):
    """Delta_{m1,m2}: Y_{m1+m2} -> Y_{m1} (x) Y_{m2} for arbitrary rank-1 shifts."""

    def __init__(self, m1: int, m2: int, eta=None, ring: ScalarRing | None = None, mode="graded"):
        self.m1, self.m2, self.m = m1, m2, m1 + m2
        eta1, eta2 = eta if eta is not None else smallest_eta(m1, m2)
        if eta1 > 0 or eta2 > 0 or m1 + eta1 > 0 or m2 + eta2 > 0:
            raise CoproductError(f"eta = ({eta1}, {eta2}) is not admissible for ({m1}, {m2})")
        self.eta = (eta1, eta2)
        target = TensorNF((m1, m2), ring, mode)
        self.inner = MolevCoproduct(m1 + eta1, m2 + eta2, target.ring, mode)
        super().__init__(target, self._letter, engine_for(self.m, target.ring, mode))

    def _letter(self, code):
        eta1, eta2 = self.eta
        ring = self.target.ring
        x = NCPoly.word(ring, (code,))
        up = shift_hom_apply(x, (self.m,), (eta1,), (eta2,))
        img = self.inner(up)
        img = img.map_words(lambda w: shift_hom_preimage(NCPoly.word(ring, w), (self.m1,), (eta1,), (0,)), slot=0)
        img = img.map_words(lambda w: shift_hom_preimage(NCPoly.word(ring, w), (self.m2,), (0,), (eta2,)), slot=1)
        return img


_GENERAL: dict = {}


def general_coproduct(m1: int, m2: int, eta=None, ring=None, mode="graded") -> GeneralCoproduct:
    ring = ring or get_ring(("hbar",))
    eta = tuple(eta) if eta is not None else smallest_eta(m1, m2)
    key = (m1, m2, eta, ring.id, mode)
    got = _GENERAL.get(key)
    if got is None:
        got = _GENERAL[key] = GeneralCoproduct(m1, m2, eta, ring, mode)
    return got


def delta_molev_sl2(x: NCPoly, k: int, l: int) -> NCPoly:
    return general_coproduct(k, l, (0, 0), x.ring)(x) if k <= 0 and l <= 0 else _raise_kl()


def _raise_kl():
    raise CoproductError("the current-series coproduct needs k, l <= 0")


def delta_general(x: NCPoly, m1: int, m2: int, eta=None) -> NCPoly:
    return general_coproduct(m1, m2, eta, x.ring)(x)


# verification


def _check(name, ok, witness="", **extra):
    out = {"name": name, "status": "pass" if ok else "fail", "witness": witness}
    out.update(extra)
    return out


def verify_delta_homomorphism(k: int, l: int, bound: int = 6):
    """Delta(relation) == 0 for every Y_{k+l} relation with indices <= bound,
    plus table-route relation checks and Molev/table agreement on generators."""
    checks = []
    delta = general_coproduct(k, l, (0, 0))
    tnf = delta.target
    pres = Presentation.sl2(k + l, level_bound=bound)
    fams: dict = {}
    for rel in pres.relations():
        res = delta(rel.poly)
        slot = fams.setdefault(rel.family, [0, ""])
        slot[0] += 1
        if res and not slot[1]:
            slot[1] = f"{rel.family}{rel.indices}: {res.to_str()}"
    for fam, (count, bad) in sorted(fams.items()):
        checks.append(_check(f"molev/{fam}", not bad, bad, count=count))

    table = table_in_h_letters(delta_on_generators(build_cartan("A", 1), (k,), (l,)), (k,), (l,))
    bad = ""
    for key, (src, img) in sorted(table.items()):
        diff = tnf.nf(img) - delta(src)
        if diff and not bad:
            bad = f"{key}: {diff.to_str()}"
    checks.append(_check("table-vs-molev", not bad, bad, count=len(table)))

    # table route: Y_{k,l} relations pushed through the table
    pres2 = Presentation(build_cartan("A", 1), "Ymu1mu2", mu1=(k,), mu2=(l,))
    gen_images = {src_key(src): img for src, img in table.values()}
    bad, count = "", 0
    for rel in pres2.relations():
        count += 1
        res = _apply_table(rel.poly, gen_images, tnf, (k + l,))
        if res and not bad:
            bad = f"{rel.family}{rel.indices}: {res.to_str()}"
    checks.append(_check("table-route/relations", not bad, bad, count=count))
    return checks


def src_key(src: NCPoly):
    return src.to_str()


def _apply_table(x: NCPoly, images: dict, tnf: TensorNF, mu):
    """Apply the table to an expression in S/E/F letters of Y_{mu1,mu2}."""
    ring = x.ring
    acc = NCPoly.zero(ring, 2)
    for (w,), c in x.terms.items():
        img = tnf.one()
        for code in w:
            src = s_h_convert(NCPoly.word(ring, (code,)), mu)
            im = images.get(src_key(src))
            if im is None:
                raise CoproductError(f"no table entry for {src.to_str()}")
            img = tnf.mul(img, tnf.nf(im))
        acc = acc + img.scale(c)
    return acc


def coassoc_generators(m: int, top: int = 2):
    ring = get_ring(("hbar",))
    gens = [NCPoly.gen(ring, E, 1, r) for r in range(1, top + 1)]
    gens += [NCPoly.gen(ring, F, 1, r) for r in range(1, top + 1)]
    gens += [NCPoly.gen(ring, H, 1, -m + 1), NCPoly.gen(ring, H, 1, -m + 2)]
    return gens


def _apply_on_slot(x: NCPoly, delta: AlgebraMap, slot: int, tnf3: TensorNF) -> NCPoly:
    acc: dict = {}
    for key, c in x.terms.items():
        img = delta.image_of_word(key[slot])
        for k2, c2 in img.terms.items():
            new = key[:slot] + k2 + key[slot + 1:]
            v = acc.get(new)
            v = c * c2 if v is None else v + c * c2
            if v:
                acc[new] = v
            else:
                acc.pop(new, None)
    return tnf3.nf(NCPoly(x.ring, acc, 3))


def coassoc_check(m1: int, m2: int, m3: int, top: int = 2):
    """Compare (1 (x) D_{m2,m3}) D_{m1,m2+m3} with (D_{m1,m2} (x) 1) D_{m1+m2,m3} on generators."""
    m = m1 + m2 + m3
    tnf3 = TensorNF((m1, m2, m3))
    left_outer, left_inner = general_coproduct(m1, m2 + m3), general_coproduct(m2, m3)
    right_outer, right_inner = general_coproduct(m1 + m2, m3), general_coproduct(m1, m2)
    checks = []
    for gen in coassoc_generators(m, top):
        lhs = _apply_on_slot(left_outer(gen), left_inner, 1, tnf3)
        rhs = _apply_on_slot(right_outer(gen), right_inner, 0, tnf3)
        diff = lhs - rhs
        checks.append(_check(f"coassoc/{gen.to_str()}", not diff, diff.to_str() if diff else ""))
    return checks
