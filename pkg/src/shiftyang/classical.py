"""Classical limits of the rank-1 shifted Yangians.

Coordinates on W_m (one or two tensor slots) live in a commutative
polynomial ring whose variables are the functions p^(r), p^-(r) and the
Cartan coordinates, indexed exactly like the PBW letters E^(r), F^(r),
H^(p).  The Poisson bracket is the hbar-linear part of the commutator of
ordered lifts, and the multiplication map of the Gauss-triple model is
compared with the hbar = 0 part of the coproduct.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from sympy import QQ, Symbol
from sympy.polys.rings import PolyRing

from .ncalg import E, F, H, NCPoly, get_ring, letter, unpack
from .pbw import engine_for, enumerate_pbw, variable_degrees


class ClassicalError(ValueError):
    pass


class NotAlmostCommutative(ClassicalError):
    """A commutator of PBW monomials that is not divisible by hbar."""


class PrecisionLoss(ClassicalError):
    pass


FAM_NAME = {E: "E", F: "F", H: "H"}
HB = get_ring(("hbar",))


def _q(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def _at_hbar0(c) -> Fraction:
    """Constant term of an element of QQ[hbar]."""
    return _q(c.get((0,), QQ.zero)) if c else Fraction(0)


def _hbar_linear(c) -> Fraction:
    return _q(c.get((1,), QQ.zero)) if c else Fraction(0)


# coordinate rings


class Coordinates:
    """Polynomial ring in the coordinates of W_{m_1} x ... x W_{m_s}.

    Each slot keeps E and F up to level ``top`` and H^(p) for
    -m < p <= -m + top, i.e. ``top`` relative levels per family.
    """

    def __init__(self, shifts, top: int):
        self.shifts = tuple(shifts)
        self.top = top
        names = []
        self.index = {}
        for s, m in enumerate(self.shifts):
            tag = "" if len(self.shifts) == 1 else str(s + 1)
            for fam in (E, F, H):
                levels = range(1, top + 1) if fam != H else range(-m + 1, -m + top + 1)
                for lv in levels:
                    self.index[(s, fam, lv)] = len(names)
                    names.append(Symbol(f"{FAM_NAME[fam]}{tag}_{lv}"))
        self.ring = PolyRing(names, QQ)
        self.gens = self.ring.gens
        self.keys = sorted(self.index, key=self.index.get)

    def var(self, slot: int, fam: int, level: int):
        """Coordinate as a ring element; H at level -m is 1 and below is 0."""
        if fam == H:
            m = self.shifts[slot]
            if level == -m:
                return self.ring.one
            if level < -m:
                return self.ring.zero
        idx = self.index.get((slot, fam, level))
        if idx is None:
            raise PrecisionLoss(f"coordinate {FAM_NAME[fam]}^({level}) in slot {slot + 1} exceeds the kept levels")
        return self.gens[idx]

    def key_of(self, i: int):
        return self.keys[i]

    def relative_level(self, key) -> int:
        s, fam, lv = key
        return lv + self.shifts[s] if fam == H else lv

    def coordinate_keys(self, slot: int, level: int):
        """Keys of one slot with relative level <= level, in the order E, F, H."""
        m = self.shifts[slot]
        out = [(slot, E, r) for r in range(1, level + 1)]
        out += [(slot, F, r) for r in range(1, level + 1)]
        out += [(slot, H, -m + r) for r in range(1, level + 1)]
        return out

    def from_nc(self, x: NCPoly, at_zero: bool = True):
        """hbar = 0 part of a (tensor) NCPoly over QQ[hbar] in normal order."""
        if x.arity != len(self.shifts):
            raise ClassicalError("arity and number of slots differ")
        out = self.ring.zero
        for key, c in x.terms.items():
            val = _at_hbar0(c) if at_zero else c
            if not val:
                continue
            term = self.ring(QQ(val.numerator, val.denominator))
            for s, w in enumerate(key):
                for code in w:
                    fam, _, lv = unpack(code)
                    term *= self.var(s, fam, lv)
            out += term
        return out

    def lift(self, p, slot: int = 0) -> NCPoly:
        """Ordered-monomial lift of a one-slot polynomial to Y_m over QQ[hbar]."""
        terms = {}
        for mono, c in p.items():
            word = []
            for i, k in enumerate(mono):
                if k:
                    s, fam, lv = self.keys[i]
                    if s != slot:
                        raise ClassicalError("lift expects a single-slot polynomial")
                    word += [letter(fam, 1, lv)] * k
            terms[(tuple(sorted(word)),)] = HB(_q(c))
        return NCPoly(HB, terms, 1)

    def rename(self, p, image, target: "Coordinates"):
        """Algebra map given on variables by ``image(key) -> element of target.ring``."""
        cache = {}
        out = target.ring.zero
        for mono, c in p.items():
            term = target.ring(c)
            for i, k in enumerate(mono):
                if k:
                    img = cache.get(i)
                    if img is None:
                        img = cache[i] = image(self.keys[i])
                    term *= img**k
            out += term
        return out

    def to_str(self, p) -> str:
        return str(p.as_expr()) if p else "0"


# Poisson bracket from the commutator


def poisson_bracket_gr(a: NCPoly, b: NCPoly, m: int) -> NCPoly:
    """hbar^{-1}[a, b] at hbar = 0, on ordered lifts of a and b in Y_m(sl2).

    The result uses normal-ordered words as commutative monomials and has
    rational coefficients.  Raises NotAlmostCommutative if the commutator
    has an hbar-free term.
    """
    eng = engine_for(m, HB)
    nf = eng.normal_form(a * b - b * a)
    out = {}
    for key, c in nf.terms.items():
        if _at_hbar0(c):
            raise NotAlmostCommutative(f"[{a.to_str()}, {b.to_str()}] has hbar-free term {key}")
        lin = _hbar_linear(c)
        if lin:
            out[key] = HB(lin)
    return NCPoly(HB, out, 1)


def commutative_product(a: NCPoly, b: NCPoly) -> NCPoly:
    """Product in gr Y_m: concatenate and sort words."""
    acc = {}
    for (w1,), c1 in a.terms.items():
        for (w2,), c2 in b.terms.items():
            key = (tuple(sorted(w1 + w2)),)
            acc[key] = acc.get(key, HB.zero) + c1 * c2
    return NCPoly(HB, acc, 1)


class Bracket:
    """The Poisson bracket on a coordinate ring, extended as a biderivation.

    Brackets of coordinates come from poisson_bracket_gr in each slot;
    coordinates in different slots commute.
    """

    def __init__(self, coords: Coordinates):
        self.coords = coords
        self._pair: dict = {}

    def on_coordinates(self, i: int, j: int):
        key = (i, j)
        got = self._pair.get(key)
        if got is not None:
            return got
        ki, kj = self.coords.key_of(i), self.coords.key_of(j)
        if ki[0] != kj[0] or i == j:
            out = self.coords.ring.zero
        else:
            s = ki[0]
            x = NCPoly.gen(HB, ki[1], 1, ki[2])
            y = NCPoly.gen(HB, kj[1], 1, kj[2])
            br = poisson_bracket_gr(x, y, self.coords.shifts[s])
            single = NCPoly(HB, {((), ) * s + k + ((),) * (len(self.coords.shifts) - s - 1): c
                                 for k, c in br.terms.items()}, len(self.coords.shifts))
            out = self.coords.from_nc(single)
        self._pair[key] = out
        self._pair[(j, i)] = -out
        return out

    def __call__(self, p, q):
        ring = self.coords.ring
        out = ring.zero
        pv = [i for i in range(ring.ngens) if any(mono[i] for mono in p.keys())]
        qv = [j for j in range(ring.ngens) if any(mono[j] for mono in q.keys())]
        for i in pv:
            dp = p.diff(ring.gens[i])
            for j in qv:
                c = self.on_coordinates(i, j)
                if c:
                    out += dp * q.diff(ring.gens[j]) * c
        return out


# filtrations and Hilbert series


def _series_product(degrees, order):
    out = [0] * (order + 1)
    out[0] = 1
    for d in degrees:
        if d <= 0:
            raise ClassicalError(f"degree assignment has a PBW variable of degree {d}")
        if d > order:
            continue
        for k in range(d, order + 1):
            out[k] += out[k - d]
    return out


def _pair(nu, root):
    return sum(a * b for a, b in zip(nu, root))


def filtration_and_hilbert(datum, mu, nu1, nu2, order: int) -> dict:
    """Degrees of PBW variables for F_{nu1,nu2} on Y_mu and the Hilbert series
    of gr Y_mu to ``order``, as a product over PBW variables."""
    mu, nu1, nu2 = tuple(mu), tuple(nu1), tuple(nu2)
    if any(a + b != c for a, b, c in zip(nu1, nu2, mu)):
        raise ClassicalError("nu1 + nu2 must equal mu")
    table = []
    for beta in datum.positive_roots:
        for fam, nu in (("E", nu1), ("F", nu2)):
            base = _pair(nu, beta)
            if base + 1 <= 0:
                raise ClassicalError(f"{fam}_{beta}^(1) has degree {base + 1} <= 0")
            for q in range(1, order - base + 1):
                table.append((f"{fam}_{','.join(map(str, beta))}^({q})", base + q))
    for i in range(datum.rank):
        mi = mu[i]
        for p in range(-mi + 1, order - mi + 1):
            table.append((f"H_{i + 1}^({p})", mi + p))
    counts = _series_product([d for _, d in table], order)
    out = {"degrees": table, "hilbert": counts}
    if datum.rank == 1:
        _, enum = enumerate_pbw(mu[0], nu1[0], nu2[0], order)
        out["enumeration"] = enum
        out["agree"] = enum == counts
    return out


def hilbert_oracle(dim_n: int, order: int, copies: int = 3) -> list[int]:
    """Coefficients of prod_i (1 - q^i)^{-copies*dim_n}, by plain series multiplication."""
    coeffs = [1] + [0] * order
    for i in range(1, order + 1):
        for _ in range(copies * dim_n):
            for k in range(i, order + 1):
                coeffs[k] += coeffs[k - i]
    return coeffs


# Gauss-triple model


class Series:
    """Laurent series in z, exact for exponents >= prec.

    ``coeffs`` maps exponents to ring elements; nothing above ``top`` is stored.
    """

    __slots__ = ("ring", "coeffs", "prec")

    def __init__(self, ring, coeffs, prec: int):
        self.ring = ring
        self.prec = prec
        self.coeffs = {k: c for k, c in coeffs.items() if c and k >= prec}

    @property
    def top(self):
        return max(self.coeffs, default=None)

    def __add__(self, other):
        prec = max(self.prec, other.prec)
        acc = dict(self.coeffs)
        for k, c in other.coeffs.items():
            acc[k] = acc.get(k, self.ring.zero) + c
        return Series(self.ring, acc, prec)

    def __neg__(self):
        return Series(self.ring, {k: -c for k, c in self.coeffs.items()}, self.prec)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Series):
            return Series(self.ring, {k: c * other for k, c in self.coeffs.items()}, self.prec)
        ta, tb = self.top, other.top
        if ta is None or tb is None:
            return Series(self.ring, {}, max(self.prec + (tb or 0), other.prec + (ta or 0)))
        prec = max(self.prec + tb, other.prec + ta)
        acc = {}
        for ka, ca in self.coeffs.items():
            for kb, cb in other.coeffs.items():
                k = ka + kb
                if k >= prec:
                    acc[k] = acc.get(k, self.ring.zero) + ca * cb
        return Series(self.ring, acc, prec)

    def shifted(self, k: int):
        """Multiply by z^k."""
        return Series(self.ring, {e + k: c for e, c in self.coeffs.items()}, self.prec + k)

    def strip_nonnegative(self):
        return Series(self.ring, {e: c for e, c in self.coeffs.items() if e < 0}, self.prec)

    def coefficient(self, k: int):
        if k < self.prec:
            raise PrecisionLoss(f"z^{k} is below the truncation z^{self.prec}")
        return self.coeffs.get(k, self.ring.zero)

    def equal_to(self, other, prec: int) -> bool:
        keys = set(self.coeffs) | set(other.coeffs)
        return all(self.coeffs.get(k, self.ring.zero) == other.coeffs.get(k, self.ring.zero)
                   for k in keys if k >= prec)


def inverse_one_plus(x: Series) -> Series:
    """(1 + x)^{-1} for x with only negative powers of z."""
    if x.top is not None and x.top >= 0:
        raise ClassicalError("1 + x is not a unit in C[[z^-1]]")
    floor = x.prec
    one = Series(x.ring, {0: x.ring.one}, floor)
    out, power = one, one
    while True:
        # x has no constant term, so every power is exact down to floor
        power = Series(x.ring, (-(power * x)).coeffs, floor)
        if not power.coeffs:
            break
        out = out + power
    return out


class GaussTriple:
    """g = (1 0; e 1)(1 0; 0 h)(1 f; 0 1) in W_m, truncated at relative order N."""

    def __init__(self, e: Series, h: Series, f: Series, m: int, order: int):
        self.e, self.h, self.f, self.m, self.order = e, h, f, m, order

    @classmethod
    def symbolic(cls, coords: Coordinates, slot: int, order: int):
        m = coords.shifts[slot]
        ring = coords.ring
        e = Series(ring, {-r: coords.var(slot, E, r) for r in range(1, order + 1)}, -order)
        f = Series(ring, {-r: coords.var(slot, F, r) for r in range(1, order + 1)}, -order)
        h = {m: ring.one}
        h.update({m - r: coords.var(slot, H, -m + r) for r in range(1, order + 1)})
        return cls(e, Series(ring, h, m - order), f, m, order)

    @classmethod
    def identity(cls, ring, m: int, order: int):
        return cls(Series(ring, {}, -order), Series(ring, {m: ring.one}, m - order),
                   Series(ring, {}, -order), m, order)

    @classmethod
    def from_coefficients(cls, ring, m: int, es, hs, fs):
        order = len(es)
        if not (len(hs) == len(fs) == order):
            raise ClassicalError("coefficient lists must have equal length")
        e = Series(ring, {-r - 1: ring(c) for r, c in enumerate(es)}, -order)
        f = Series(ring, {-r - 1: ring(c) for r, c in enumerate(fs)}, -order)
        h = {m: ring.one}
        h.update({m - r - 1: ring(c) for r, c in enumerate(hs)})
        return cls(e, Series(ring, h, m - order), f, m, order)

    def coordinates(self) -> dict:
        """{(fam, level): value} for relative levels 1..order."""
        out = {}
        for r in range(1, self.order + 1):
            out[(E, r)] = self.e.coefficient(-r)
            out[(F, r)] = self.f.coefficient(-r)
            out[(H, -self.m + r)] = self.h.coefficient(self.m - r)
        return out

    def multiply(self, other: "GaussTriple") -> "GaussTriple":
        if self.order != other.order:
            raise ClassicalError(f"truncation orders differ: {self.order} vs {other.order}")
        if self.m > 0 or other.m > 0:
            raise ClassicalError("direct Gauss multiplication needs antidominant shifts")
        inv = inverse_one_plus(self.f * other.e)
        e = self.e + self.h * other.e * inv
        h = self.h * other.h * inv * inv
        f = self.f * other.h * inv + other.f
        return GaussTriple(e, h, f, self.m + other.m, self.order)

    def shift(self, n1: int, n2: int) -> "GaussTriple":
        """pi(z^{-n1} g z^{-n2}) for antidominant n1, n2; relative order drops by |n1|, |n2|."""
        if n1 > 0 or n2 > 0:
            raise ClassicalError("shift maps need antidominant n1, n2")
        e = self.e.shifted(-n1).strip_nonnegative()
        f = self.f.shifted(-n2).strip_nonnegative()
        h = self.h.shifted(-n1 - n2)
        order = self.order - max(-n1, -n2)
        return GaussTriple(e, h, f, self.m - n1 - n2, order)

    def equal_to(self, other: "GaussTriple") -> bool:
        if self.m != other.m:
            return False
        order = min(self.order, other.order)
        return (self.e.equal_to(other.e, -order) and self.f.equal_to(other.f, -order)
                and self.h.equal_to(other.h, self.m - order))


def gauss_w_model(op: str, *args):
    """Dispatch: multiply(t1, t2), shift(t, n1, n2), coordinates(t)."""
    if op == "multiply":
        return args[0].multiply(args[1])
    if op == "shift":
        return args[0].shift(args[1], args[2])
    if op == "coordinates":
        return args[0].coordinates()
    raise ClassicalError(f"unknown Gauss-model operation {op!r}")


# Delta^1 (multiplication) and Delta^2 (coproduct at hbar = 0)


def _embedding_shifts(m1: int, m2: int):
    from .coproduct import smallest_eta

    return smallest_eta(m1, m2)


class MultiplicationPullback:
    """Delta^1_{m1,m2}: C[W_{m1+m2}] -> C[W_m1] (x) C[W_m2] on coordinates.

    Antidominant shifts use the Gauss product directly.  Otherwise the
    product is moved into an antidominant situation with shift maps
    (n1, n2) and pulled back letterwise.
    """

    def __init__(self, m1: int, m2: int, level: int, top: int | None = None):
        self.m1, self.m2 = m1, m2
        self.n1, self.n2 = _embedding_shifts(m1, m2)
        self.level = level
        pad = -self.n1 - self.n2
        self.order = level + pad
        self.top = max(top or 0, self.order + pad + 2)
        self.target = Coordinates((m1, m2), self.top)
        self.source = Coordinates((m1 + m2,), self.top)
        a1, a2 = m1 + self.n1, m2 + self.n2
        self.work = Coordinates((a1, a2), self.order)
        g1 = GaussTriple.symbolic(self.work, 0, self.order)
        g2 = GaussTriple.symbolic(self.work, 1, self.order)
        self.product = g1.multiply(g2).coordinates()
        self._cache: dict = {}

    def _back(self, key):
        """Inverse of the slotwise shift pullbacks on one work-ring variable."""
        s, fam, lv = key
        n = self.n1 if s == 0 else self.n2
        if (s == 0 and fam == F) or (s == 1 and fam == E):
            return self.target.var(s, fam, lv)
        src = lv + n
        lowest = 1 if fam != H else -(self.m1, self.m2)[s] + 1
        if src < lowest:
            raise ClassicalError(f"{FAM_NAME[fam]}^({lv}) in slot {s + 1} is outside the image of the shift map")
        return self.target.var(s, fam, src)

    def of_coordinate(self, fam: int, level: int):
        key = (fam, level)
        got = self._cache.get(key)
        if got is not None:
            return got
        m = self.m1 + self.m2
        if fam == H and level == -m:
            return self.target.ring.one
        if fam == H and level < -m:
            return self.target.ring.zero
        if fam == E:
            src = (E, level - self.n1)
        elif fam == F:
            src = (F, level - self.n2)
        else:
            src = (H, level - self.n1 - self.n2)
        rel = src[1] + (self.m1 + self.n1 + self.m2 + self.n2) if fam == H else src[1]
        if rel > self.order:
            raise PrecisionLoss(f"coordinate needs Gauss order {rel} > {self.order}")
        val = self.product[src]
        out = self.work.rename(val, self._back, self.target)
        self._cache[key] = out
        return out

    def __call__(self, p):
        """Pull back a polynomial in the source coordinates."""
        return self.source.rename(p, lambda k: self.of_coordinate(k[1], k[2]), self.target)


class CoproductAtZero:
    """Delta^2_{m1,m2}: the coproduct at hbar = 0 on coordinates."""

    def __init__(self, m1: int, m2: int, target: Coordinates, source: Coordinates):
        from .coproduct import general_coproduct

        self.delta = general_coproduct(m1, m2, None, HB)
        self.target, self.source = target, source
        self._cache: dict = {}

    def of_coordinate(self, fam, level):
        key = (fam, level)
        if key not in self._cache:
            x = NCPoly.gen(HB, fam, 1, level)
            self._cache[key] = self.target.from_nc(self.delta(x))
        return self._cache[key]

    def __call__(self, p):
        return self.source.rename(p, lambda k: self.of_coordinate(k[1], k[2]), self.target)


def _check(name, ok, witness="", **extra):
    out = {"name": name, "status": "pass" if ok else "fail", "witness": witness}
    out.update(extra)
    return out


def verify_delta1_eq_delta2(k: int, l: int, order: int = 4) -> list[dict]:
    """Delta^1 = Delta^2 on every coordinate of W_{k+l} up to relative level ``order``."""
    if k > 0 or l > 0:
        raise ClassicalError("the comparison is stated for antidominant k, l")
    d1 = MultiplicationPullback(k, l, order)
    d2 = CoproductAtZero(k, l, d1.target, d1.source)
    checks = []
    for key in d1.source.coordinate_keys(0, order):
        _, fam, lv = key
        a = d1.of_coordinate(fam, lv)
        b = d2.of_coordinate(fam, lv)
        name = f"delta1=delta2/{FAM_NAME[fam]}[1,{lv}]"
        checks.append(_check(name, a == b, "" if a == b else d1.target.to_str(a - b),
                             image=d1.target.to_str(a)))
    return checks


# almost commutativity, Jacobi and Leibniz


def pbw_monomials(m: int, d: int):
    """Ordered PBW monomials of degree 1..d for the audit splitting."""
    from .pbw import audit_splitting

    nu1, nu2 = audit_splitting(m)
    monos, _ = enumerate_pbw(m, nu1, nu2, d)
    deg = dict(variable_degrees(m, nu1, nu2, d))
    return [(w, sum(deg[c] for c in w)) for w in monos if w]


def hbar_divisibility_check(m: int, degree: int = 5) -> dict:
    """[a, b] is divisible by hbar for all pairs of PBW monomials of degree <= degree."""
    eng = engine_for(m, HB)
    monos = pbw_monomials(m, degree)
    checked = 0
    for (wa, da), (wb, db) in itertools.combinations(monos, 2):
        a, b = NCPoly.word(HB, wa), NCPoly.word(HB, wb)
        nf = eng.normal_form(a * b - b * a)
        checked += 1
        for key, c in nf.terms.items():
            if _at_hbar0(c):
                return _check(f"hbar-divisible/m={m}", False, f"[{a.to_str()}, {b.to_str()}]", pairs=checked)
    return _check(f"hbar-divisible/m={m}", True, pairs=checked)


def _random_element(rng: random.Random, monos, terms: int = 2) -> NCPoly:
    out = NCPoly.zero(HB)
    for w, _ in rng.sample(monos, terms):
        out = out + NCPoly.word(HB, w, rng.choice([-2, -1, 1, 2, 3]))
    return out


def jacobi_leibniz_check(triples: int = 200, seed: int = 0, shifts=range(-2, 3), degree: int = 3) -> list[dict]:
    """Jacobi and Leibniz for poisson_bracket_gr on random triples."""
    rng = random.Random(seed)
    shifts = list(shifts)
    pools = {m: pbw_monomials(m, degree) for m in shifts}
    bad_j, bad_l = [], []
    for t in range(triples):
        m = shifts[t % len(shifts)]
        a, b, c = (_random_element(rng, pools[m]) for _ in range(3))

        def br(x, y):
            return poisson_bracket_gr(x, y, m)

        jac = br(a, br(b, c)) + br(b, br(c, a)) + br(c, br(a, b))
        if jac:
            bad_j.append(f"m={m}: {a.to_str()} | {b.to_str()} | {c.to_str()}")
        lhs = br(a, commutative_product(b, c))
        rhs = commutative_product(br(a, b), c) + commutative_product(b, br(a, c))
        if lhs != rhs:
            bad_l.append(f"m={m}: {a.to_str()} | {b.to_str()} | {c.to_str()}")
    return [
        _check("jacobi", not bad_j, bad_j[0] if bad_j else "", triples=triples),
        _check("leibniz", not bad_l, bad_l[0] if bad_l else "", triples=triples),
    ]


# Poisson generation


def poisson_generation_closure(m: int, level: int) -> dict:
    """Close {E^(1), F^(1), H^(-m+1), H^(-m+2)} under brackets until every
    coordinate of relative level <= ``level`` is reached.

    A coordinate v is reached when some bracket of reached elements equals
    c*v + (polynomial in reached coordinates) with c a nonzero rational.
    """
    if m > 0:
        raise ClassicalError("generation closure is stated for m <= 0")
    cap = level - m + 1
    coords = Coordinates((m,), 2 * cap + 2)
    br = Bracket(coords)
    start = [(0, E, 1), (0, F, 1), (0, H, -m + 1), (0, H, -m + 2)]
    reached = {coords.index[k] for k in start}
    certificate = {coords.to_str(coords.gens[coords.index[k]]): "generator" for k in start}
    targets = {coords.index[k] for k in coords.coordinate_keys(0, level)}
    changed = True
    while changed and not targets <= reached:
        changed = False
        order = sorted(reached)
        for i, j in itertools.combinations(order, 2):
            val = br.on_coordinates(i, j)
            new = [v for v in range(coords.ring.ngens)
                   if v not in reached and any(mono[v] for mono in val.keys())]
            if len(new) != 1:
                continue
            v = new[0]
            if coords.relative_level(coords.key_of(v)) > cap:
                continue
            lin = [(mono, c) for mono, c in val.items() if mono[v]]
            if not all(sum(mono) == 1 for mono, _ in lin):
                continue
            reached.add(v)
            certificate[coords.to_str(coords.gens[v])] = (
                f"{{{coords.to_str(coords.gens[i])}, {coords.to_str(coords.gens[j])}}} = {coords.to_str(val)}")
            changed = True
            break
    missing = sorted(coords.to_str(coords.gens[v]) for v in targets - reached)
    return {
        "check": _check(f"generation/m={m}/level={level}", not missing, ", ".join(missing)),
        "certificate": certificate,
    }


# conjecture evidence


def conjecture_poisson_evidence(m1: int, m2: int, level: int = 3) -> list[dict]:
    """{Delta^1 x, Delta^1 y} = Delta^1 {x, y} for coordinates x, y of W_{m1+m2}
    up to relative level ``level``."""
    m = m1 + m2
    probe = Coordinates((m,), 2 * level + abs(m) + 2)
    br_src = Bracket(probe)
    keys = probe.coordinate_keys(0, level)
    brackets = {}
    need = level
    for a, b in itertools.combinations(keys, 2):
        val = br_src.on_coordinates(probe.index[a], probe.index[b])
        brackets[(a, b)] = val
        for mono in val.keys():
            for i, k in enumerate(mono):
                if k:
                    need = max(need, probe.relative_level(probe.key_of(i)))
    mult = MultiplicationPullback(m1, m2, need, top=2 * need + abs(m1) + abs(m2) + 2)
    src = mult.source
    br_tgt = Bracket(mult.target)
    checks = []
    for (a, b), val in brackets.items():
        val = probe.rename(val, lambda k: src.var(*k), src)
        lhs = mult(val)
        x = mult.of_coordinate(a[1], a[2])
        y = mult.of_coordinate(b[1], b[2])
        rhs = br_tgt(x, y)
        name = f"poisson/{FAM_NAME[a[1]]}[1,{a[2]}],{FAM_NAME[b[1]]}[1,{b[2]}]"
        ok = lhs == rhs
        checks.append(_check(name, ok, "" if ok else mult.target.to_str(rhs - lhs)))
    return checks


def conjecture_matrix(shifts=range(-2, 3), level: int = 3) -> dict:
    """Pass/fail of the Poisson property for every (m1, m2) pair."""
    out = {}
    for m1 in shifts:
        for m2 in shifts:
            checks = conjecture_poisson_evidence(m1, m2, level)
            out[(m1, m2)] = {"status": "pass" if all(c["status"] == "pass" for c in checks) else "fail",
                             "checks": checks}
    return out


__all__ = [
    "Bracket",
    "ClassicalError",
    "Coordinates",
    "CoproductAtZero",
    "GaussTriple",
    "MultiplicationPullback",
    "NotAlmostCommutative",
    "PrecisionLoss",
    "Series",
    "commutative_product",
    "conjecture_matrix",
    "conjecture_poisson_evidence",
    "filtration_and_hilbert",
    "gauss_w_model",
    "hbar_divisibility_check",
    "hilbert_oracle",
    "jacobi_leibniz_check",
    "poisson_bracket_gr",
    "poisson_generation_closure",
    "verify_delta1_eq_delta2",
]
