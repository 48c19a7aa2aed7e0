"""Type A Toda lattice and zastava matrices.

Phase space: w_r, t_r^{+-1} with {w_r, t_s} = delta_rs t_s.  Zastava points
are coprime pairs (Q, R); the completion Psi(Q, R) = (Q R'; R Q') has
determinant 1 and turns the zastava multiplication into matrix
multiplication.  The rational R-matrix bracket
{T_ij(u), T_kl(v)} = (T_il(u) T_kj(v) - T_il(v) T_kj(u)) / (u - v)
is evaluated on matrix coefficients.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache

import sympy
from sympy import QQ
from sympy.polys.fields import FracField
from sympy.polys.rings import PolyRing


class TodaError(ValueError):
    pass


class CompletionImpossible(TodaError):
    """(Q, R) have a common factor."""


def _check(name, ok, witness="", **extra):
    out = {"name": name, "status": "pass" if ok else "fail", "witness": witness}
    out.update(extra)
    return out


# canonical phase space and Lax matrices


@lru_cache(maxsize=None)
def phase_field(n: int):
    """Rational functions in z, w_1..w_n, t_1..t_n."""
    names = ["z"] + [f"w{r}" for r in range(1, n + 1)] + [f"t{r}" for r in range(1, n + 1)]
    return FracField(names, QQ)


def _gen(K, name):
    return K.gens[[str(s) for s in K.symbols].index(name)]


def canonical_bracket(K, n: int, f, g):
    """{f, g} = sum_r t_r (df/dw_r dg/dt_r - df/dt_r dg/dw_r)."""
    out = K.zero
    for r in range(1, n + 1):
        w, t = _gen(K, f"w{r}"), _gen(K, f"t{r}")
        out += t * (f.diff(w) * g.diff(t) - f.diff(t) * g.diff(w))
    return out


def _matmul(a, b, zero):
    size = len(a)
    return [[sum((a[i][k] * b[k][j] for k in range(size)), zero) for j in range(size)] for i in range(size)]


def lax_matrix(K, r: int, primed: bool = False):
    z, w, t = _gen(K, "z"), _gen(K, f"w{r}"), _gen(K, f"t{r}")
    if primed:
        return [[z + w, 1 / t], [-t, K.zero]]
    return [[z - w, t], [-1 / t, K.zero]]


def monodromy(n: int, variant: str = "GL"):
    K = phase_field(n)
    out = [[K.one, K.zero], [K.zero, K.one]]
    for r in range(1, n + 1):
        out = _matmul(out, lax_matrix(K, r), K.zero)
    if variant == "Sp":
        for r in range(n, 0, -1):
            out = _matmul(out, lax_matrix(K, r, primed=True), K.zero)
    elif variant != "GL":
        raise TodaError(f"unknown variant {variant!r}")
    return K, out


def z_coefficients(K, elem) -> dict:
    """{k: coefficient of z^k} for an element polynomial in z."""
    zi = [str(s) for s in K.symbols].index("z")
    num, den = elem.numer, elem.denom
    if den.degree(den.ring.gens[zi]) > 0:
        raise TodaError("element is not polynomial in z")
    out = {}
    for mono, c in num.items():
        k = mono[zi]
        rest = list(mono)
        rest[zi] = 0
        out[k] = out.get(k, K.zero) + K(num.ring({tuple(rest): c})) / K(den)
    return {k: v for k, v in out.items() if v}


def lax_and_hamiltonians(n: int, variant: str = "GL") -> dict:
    """Monodromy, its determinant and the Hamiltonians.

    GL: the coefficients q_1..q_n of Q(z) = z^n + q_1 z^{n-1} + ... .
    Sp: the even-degree coefficients of the (1,1) entry below the leading one.
    """
    K, mono = monodromy(n, variant)
    det = mono[0][0] * mono[1][1] - mono[0][1] * mono[1][0]
    coeffs = z_coefficients(K, mono[0][0])
    top = max(coeffs)
    if variant == "GL":
        hams = [coeffs.get(n - k, K.zero) for k in range(1, n + 1)]
    else:
        hams = [coeffs.get(k, K.zero) for k in range(top - 2, -1, -2)]
    return {"field": K, "monodromy": mono, "det": det, "Q": mono[0][0], "hamiltonians": hams, "degree": top}


def involutivity_check(n: int, variant: str = "GL") -> list[dict]:
    data = lax_and_hamiltonians(n, variant)
    K, hams = data["field"], data["hamiltonians"]
    checks = [_check(f"{variant}/n={n}/det=1", data["det"] == K.one, str(data["det"].as_expr()))]
    for a, b in itertools.combinations(range(len(hams)), 2):
        val = canonical_bracket(K, n, hams[a], hams[b])
        checks.append(_check(f"{variant}/n={n}/{{h{a + 1},h{b + 1}}}", not val, str(val.as_expr()) if val else ""))
    return checks


# zastava points and the completion Psi


@dataclass(frozen=True)
class ZastavaPoint:
    Q: sympy.Poly
    R: sympy.Poly

    def __post_init__(self):
        if not self.Q.is_monic:
            raise TodaError("Q must be monic")
        if not self.R.is_zero and self.R.degree() >= self.Q.degree():
            raise TodaError("deg R must be below deg Q")

    @property
    def n(self) -> int:
        return self.Q.degree()

    def to_report(self) -> dict:
        return {"Q": str(self.Q.as_expr()), "R": str(self.R.as_expr())}


Z = sympy.Symbol("z")


def zastava_point(q, r, domain=QQ) -> ZastavaPoint:
    return ZastavaPoint(sympy.Poly(q, Z, domain=domain), sympy.Poly(r, Z, domain=domain))


def psi_complete(p: ZastavaPoint) -> list[list[sympy.Poly]]:
    """(Q R'; R Q') with QQ' - RR' = 1, deg R' < n, deg Q' < n - 1."""
    Q, R = p.Q, p.R
    s, _, g = sympy.gcdex(R, Q)
    if g.degree() != 0:
        raise CompletionImpossible(f"gcd(Q, R) = {g.as_expr()}")
    s = s.quo_ground(g.LC()) if g.LC() != 1 else s
    R1 = (-s).rem(Q)
    num = R * R1 + sympy.Poly(1, Z, domain=Q.domain)
    Q1, rem = num.div(Q)
    if not rem.is_zero:
        raise TodaError("internal: 1 + R R' is not divisible by Q")
    if (Q * Q1 - R * R1) != sympy.Poly(1, Z, domain=Q.domain):
        raise TodaError("internal: determinant is not 1")
    return [[Q, R1], [R, Q1]]


def psi_det(m) -> sympy.Poly:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def from_matrix(m) -> ZastavaPoint:
    return ZastavaPoint(m[0][0], m[1][0])


def zastava_ops(op: str, *points: ZastavaPoint):
    """multiply, involution or factorize."""
    if op == "multiply":
        a, b = points
        return from_matrix(_matmul(psi_complete(a), psi_complete(b), sympy.Poly(0, Z, domain=a.Q.domain)))
    if op == "involution":
        (a,) = points
        m = psi_complete(a)
        return ZastavaPoint(m[0][0], m[0][1])
    if op == "factorize":
        (a,) = points
        return a.Q
    raise TodaError(f"unknown zastava operation {op!r}")


def random_coprime_point(rng: random.Random, n: int, bound: int = 5) -> ZastavaPoint:
    while True:
        q = [1] + [sympy.Rational(rng.randint(-bound, bound), rng.randint(1, 3)) for _ in range(n)]
        r = [sympy.Rational(rng.randint(-bound, bound), rng.randint(1, 3)) for _ in range(n)]
        Q = sympy.Poly(q, Z, domain=QQ)
        R = sympy.Poly(r, Z, domain=QQ)
        if R.is_zero and n > 0:
            continue
        if sympy.gcd(Q, R).degree() == 0:
            return ZastavaPoint(Q, R)


def zastava_checks(samples: int = 100, seed: int = 0, max_n: int = 4) -> list[dict]:
    """det Psi = 1, intertwining with matrix multiplication, associativity,
    involution squared, anti-multiplicativity of the transpose."""
    rng = random.Random(seed)
    one = sympy.Poly(1, Z, domain=QQ)
    bad = {"det": [], "intertwine": [], "assoc": [], "involution": [], "transpose": [], "degree": []}
    for i in range(samples):
        p = random_coprime_point(rng, rng.randint(1, max_n))
        m = psi_complete(p)
        if psi_det(m) != one:
            bad["det"].append(p.to_report())
        if zastava_ops("involution", zastava_ops("involution", p)) != p:
            bad["involution"].append(p.to_report())
        a, b, c = (random_coprime_point(rng, rng.randint(1, 3)) for _ in range(3))
        ab = zastava_ops("multiply", a, b)
        zero = sympy.Poly(0, Z, domain=QQ)
        prod = _matmul(psi_complete(a), psi_complete(b), zero)
        if psi_complete(ab) != prod:
            bad["intertwine"].append([a.to_report(), b.to_report()])
        if zastava_ops("multiply", ab, c) != zastava_ops("multiply", a, zastava_ops("multiply", b, c)):
            bad["assoc"].append([a.to_report(), b.to_report(), c.to_report()])
        if ab.Q.degree() != a.n + b.n or not ab.Q.is_monic:
            bad["degree"].append([a.to_report(), b.to_report()])
        lhs = _transpose(prod)
        rhs = _matmul(_transpose(psi_complete(b)), _transpose(psi_complete(a)), zero)
        if lhs != rhs:
            bad["transpose"].append([a.to_report(), b.to_report()])
    return [_check(f"zastava/{key}", not v, str(v[0]) if v else "", samples=samples) for key, v in bad.items()]


def _transpose(m):
    return [[m[j][i] for j in range(len(m))] for i in range(len(m))]


# R-matrix bracket on polynomial 2x2 matrices


class MatrixCoordinates:
    """Generic 2x2 matrix T(z) of the zastava shape, one or more independent copies.

    T11 = z^n + sum a_k z^k (k < n), T12 = sum b_k z^k (k < n),
    T21 = sum c_k z^k (k < n), T22 = sum d_k z^k (k < n - 1).
    """

    LETTERS = {(0, 0): "a", (0, 1): "b", (1, 0): "c", (1, 1): "d"}

    def __init__(self, degrees):
        self.degrees = tuple(degrees)
        names, self.slots = [], []
        for s, n in enumerate(self.degrees):
            keys = {}
            for (i, j), letter in self.LETTERS.items():
                top = n - 1 if (i, j) == (1, 1) else n
                for k in range(top):
                    keys[(i, j, k)] = len(names)
                    names.append(f"{letter}{s + 1}_{k}")
            self.slots.append(keys)
        names += ["u", "v"]
        self.ring = PolyRing(names, QQ)
        self.u, self.v = self.ring.gens[-2], self.ring.gens[-1]
        self.nvars = len(names) - 2

    def entry(self, s: int, i: int, j: int, x):
        """T^{(s)}_ij evaluated at x (u or v)."""
        n = self.degrees[s]
        out = x**n if (i, j) == (0, 0) else self.ring.zero
        for (a, b, k), idx in self.slots[s].items():
            if (a, b) == (i, j):
                out += self.ring.gens[idx] * x**k
        return out

    def matrix(self, s: int, x):
        return [[self.entry(s, i, j, x) for j in range(2)] for i in range(2)]

    def coordinate_of(self, idx):
        for s, keys in enumerate(self.slots):
            for key, j in keys.items():
                if j == idx:
                    return s, key
        raise KeyError(idx)


def rmatrix_formula(Tu, Tv, u, v, i, j, k, l):
    """(T_il(u) T_kj(v) - T_il(v) T_kj(u)) / (u - v), exact."""
    num = Tu[i][l] * Tv[k][j] - Tv[i][l] * Tu[k][j]
    q, r = num.div(u - v)
    if r:
        raise TodaError("internal: R-matrix numerator not divisible by u - v")
    return q


def _uv_coefficients(poly, ring):
    """{(a, b): coefficient polynomial} in u^a v^b."""
    nu, nv = ring.ngens - 2, ring.ngens - 1
    out = {}
    for mono, c in poly.items():
        key = (mono[nu], mono[nv])
        rest = list(mono)
        rest[nu] = rest[nv] = 0
        out[key] = out.get(key, ring.zero) + ring({tuple(rest): c})
    return out


class RMatrixBracket:
    """Coordinate brackets from the R-matrix formula, extended as a biderivation.

    ``sign = -1`` gives the opposite bracket.  Coordinates of different
    copies Poisson-commute.
    """

    def __init__(self, coords: MatrixCoordinates, sign: int = 1):
        self.coords = coords
        self.sign = sign
        self.table = {}
        self.defects = []
        ring = coords.ring
        for s, n in enumerate(coords.degrees):
            Tu, Tv = coords.matrix(s, coords.u), coords.matrix(s, coords.v)
            for i, j, k, l in itertools.product(range(2), repeat=4):
                val = rmatrix_formula(Tu, Tv, coords.u, coords.v, i, j, k, l)
                for (a, b), c in _uv_coefficients(val, ring).items():
                    x = coords.slots[s].get((i, j, a))
                    y = coords.slots[s].get((k, l, b))
                    if x is None or y is None:
                        self.defects.append(((s, i, j, a), (s, k, l, b), c))
                        continue
                    self.table[(x, y)] = c * sign

    def well_defined(self) -> bool:
        return not self.defects

    def antisymmetric(self) -> bool:
        zero = self.coords.ring.zero
        keys = set(self.table) | {(y, x) for x, y in self.table}
        return all(self.table.get((x, y), zero) == -self.table.get((y, x), zero) for x, y in keys)

    def __call__(self, f, g):
        ring = self.coords.ring
        out = ring.zero
        fv = [i for i in range(self.coords.nvars) if any(m[i] for m in f.keys())]
        gv = [j for j in range(self.coords.nvars) if any(m[j] for m in g.keys())]
        for i in fv:
            df = f.diff(ring.gens[i])
            for j in gv:
                c = self.table.get((i, j))
                if c:
                    out += df * g.diff(ring.gens[j]) * c
        return out


def rmatrix_bracket_check(n: int, jacobi: bool = True) -> list[dict]:
    """Well-definedness, antisymmetry, Jacobi, compatibility with products and
    the zastava identities for the R-matrix bracket in degree n."""
    checks = []
    coords = MatrixCoordinates((n,))
    br = RMatrixBracket(coords)
    checks.append(_check(f"rmatrix/n={n}/well-defined", br.well_defined(),
                         "" if br.well_defined() else str(br.defects[0])))
    checks.append(_check(f"rmatrix/n={n}/antisymmetric", br.antisymmetric()))
    if jacobi:
        bad = ""
        gens = coords.ring.gens[: coords.nvars]
        for x, y, z in itertools.combinations(gens, 3):
            jac = br(x, br(y, z)) + br(y, br(z, x)) + br(z, br(x, y))
            if jac:
                bad = f"{x}, {y}, {z}"
                break
        checks.append(_check(f"rmatrix/n={n}/jacobi", not bad, bad))
    # zastava identities, for the opposite bracket
    u, v = coords.u, coords.v
    Qu, Qv = coords.entry(0, 0, 0, u), coords.entry(0, 0, 0, v)
    Ru, Rv = coords.entry(0, 1, 0, u), coords.entry(0, 1, 0, v)
    std = RMatrixBracket(coords, sign=-1)
    qq = std(Qu, Qv)
    rr = std(Ru, Rv)
    qr = std(Qu, Rv)
    expected, rem = (-(Qu * Rv - Qv * Ru)).div(u - v)
    checks.append(_check(f"rmatrix/n={n}/{{Q,Q}}=0", not qq, str(qq.as_expr()) if qq else ""))
    checks.append(_check(f"rmatrix/n={n}/{{R,R}}=0", not rr, str(rr.as_expr()) if rr else ""))
    ok = not rem and qr == expected
    checks.append(_check(f"rmatrix/n={n}/{{Q,R}}-formula", ok, "" if ok else str((qr - expected).as_expr())))
    # compatibility with matrix multiplication
    pair = MatrixCoordinates((n, n))
    pbr = RMatrixBracket(pair)
    Pu = _matmul(pair.matrix(0, pair.u), pair.matrix(1, pair.u), pair.ring.zero)
    Pv = _matmul(pair.matrix(0, pair.v), pair.matrix(1, pair.v), pair.ring.zero)
    bad = ""
    for i, j, k, l in itertools.product(range(2), repeat=4):
        lhs = pbr(Pu[i][j], Pv[k][l])
        rhs = rmatrix_formula(Pu, Pv, pair.u, pair.v, i, j, k, l)
        if lhs != rhs:
            bad = f"T{i + 1}{j + 1}(u), T{k + 1}{l + 1}(v)"
            break
    checks.append(_check(f"rmatrix/n={n}/product-compatible", not bad, bad))
    return checks


def canonical_vs_rmatrix(n: int) -> dict:
    """Compare the canonical bracket of monodromy coefficients with the
    R-matrix bracket evaluated on the monodromy.  Returns the sign s with
    canonical = s * R-matrix, or a failing check."""
    K, mono = monodromy(n)
    coeffs = {}
    for i, j in itertools.product(range(2), repeat=2):
        for k, c in z_coefficients(K, mono[i][j]).items():
            coeffs[(i, j, k)] = c
    coords = MatrixCoordinates((n,))
    br = RMatrixBracket(coords)
    names = [str(s) for s in coords.ring.symbols]
    values = []
    for idx in range(coords.nvars):
        _, key = coords.coordinate_of(idx)
        values.append(coeffs.get(key, K.zero))

    def evaluate(poly):
        out = K.zero
        for mono_, c in poly.items():
            term = K(c)
            for idx, e in enumerate(mono_[: coords.nvars]):
                if e:
                    term *= values[idx] ** e
            out += term
        return out

    signs = set()
    bad = ""
    for x, y in itertools.combinations(range(coords.nvars), 2):
        can = canonical_bracket(K, n, values[x], values[y])
        rm = evaluate(br.table.get((x, y), coords.ring.zero))
        if can == rm and can:
            signs.add(1)
        elif can == -rm and can:
            signs.add(-1)
        elif can != rm:
            bad = f"{{{names[x]}, {names[y]}}}: canonical {can.as_expr()} vs R-matrix {rm.as_expr()}"
            break
    ok = not bad and len(signs) <= 1
    sign = signs.pop() if len(signs) == 1 else None
    return _check(f"canonical-vs-rmatrix/n={n}", ok, bad or ("" if ok else "mixed signs"), sign=sign)


# series recursions


def _inverse_monic(q_coeffs, n: int, depth: int, ring):
    """Coefficients s_k of z^n / Q(z) = sum_k s_k z^{-k}, k = 0..depth."""
    s = [ring.one]
    for k in range(1, depth + 1):
        acc = ring.zero
        for j in range(1, min(k, n) + 1):
            acc -= q_coeffs[j] * s[k - j]
        s.append(acc)
    return s


def series_functions(coords: MatrixCoordinates, depth: int):
    """y_k, y'_k (k <= depth) and x_k (k <= 2n + depth) as polynomials in the
    matrix coordinates, from R/Q, R'/Q and 1/Q^2 with Q = T11, R = T21, R' = T12."""
    n = coords.degrees[0]
    ring = coords.ring
    g = ring.gens
    keys = coords.slots[0]
    q = [ring.one] + [g[keys[(0, 0, n - j)]] for j in range(1, n + 1)]
    rr = [g[keys[(1, 0, n - j)]] for j in range(1, n + 1)]  # r_1..r_n
    rp = [g[keys[(0, 1, n - j)]] for j in range(1, n + 1)]
    span = 2 * n + depth + 2
    s = _inverse_monic(q, n, span, ring)

    def ratio(num):
        # (sum_j num_j z^{n-j}) * z^{-n} * sum_k s_k z^{-k}; coefficient of z^{-m}
        out = [ring.zero] * (span + 1)
        for j, c in enumerate(num, start=1):
            for k, sk in enumerate(s):
                if j + k <= span:
                    out[j + k] += c * sk
        return out

    y = ratio(rr)
    yp = ratio(rp)
    # 1/Q^2 = z^{-2n} (sum s_k z^{-k})^2
    x = [ring.zero] * (span + 2 * n + 1)
    for a, sa in enumerate(s):
        for b, sb in enumerate(s):
            if a + b + 2 * n < len(x):
                x[a + b + 2 * n] += sa * sb
    return y, yp, x, q, rr, rp


def series_recursion_check(n: int, depth: int = 3) -> list[dict]:
    """Identities among y_k, y'_k, x_k under the standard bracket (the opposite
    of the R-matrix bracket), evaluated on the Toda monodromy locus."""
    coords = MatrixCoordinates((n,))
    std = RMatrixBracket(coords, sign=-1)
    y, yp, x, q, rr, rp = series_functions(coords, depth + 1)
    K, mono = monodromy(n)
    coeffs = {}
    for i, j in itertools.product(range(2), repeat=2):
        for k, c in z_coefficients(K, mono[i][j]).items():
            coeffs[(i, j, k)] = c
    values = [coeffs.get(coords.coordinate_of(idx)[1], K.zero) for idx in range(coords.nvars)]

    def on_locus(poly):
        out = K.zero
        for mono_, c in poly.items():
            term = K(c)
            for idx, e in enumerate(mono_[: coords.nvars]):
                if e:
                    term *= values[idx] ** e
            out += term
        return out

    checks = []

    def add(name, diff):
        val = on_locus(diff)
        checks.append(_check(f"series/n={n}/{name}", not val, str(val.as_expr()) if val else ""))

    for k in range(1, 2 * n):
        add(f"x{k}=0", x[k])
    add(f"x{2 * n}=1", x[2 * n] - coords.ring.one)
    add(f"x{2 * n + 1}=-2q1", x[2 * n + 1] + 2 * q[1])
    add(f"x{2 * n + 2}=3q1^2-2q2", x[2 * n + 2] - (3 * q[1] ** 2 - 2 * (q[2] if n >= 2 else 0)))
    add("y1=r1", y[1] - rr[0])
    add("y'1=r'1", yp[1] - rp[0])
    X = x[2 * n + 2]
    for k in range(1, depth + 1):
        add(f"{{x{2 * n + 2},y{k}}}", std(X, y[k]) - 2 * y[k + 1] - 2 * x[2 * n + 1] * y[k])
        add(f"{{x{2 * n + 2},y'{k}}}", std(X, yp[k]) + 2 * yp[k + 1] + 2 * x[2 * n + 1] * yp[k])
    for a in range(1, depth + 1):
        for b in range(1, depth + 1):
            add(f"{{y{a},y'{b}}}", std(y[a], yp[b]) - x[a + b - 1])
    return checks


# Kostant slice


def kostant_to_zastava(x: sympy.Matrix, g: sympy.Matrix) -> dict:
    """(x, g) -> (Q, R) with Q = charpoly(x) and R'(x) = g, deg R' < n."""
    n = x.shape[0]
    if x * g != g * x:
        raise TodaError("x and g do not commute")
    if g.det() == 0:
        raise TodaError("g is not invertible")
    Q = sympy.Poly(x.charpoly(Z).as_expr(), Z, domain=QQ)
    powers = [sympy.eye(n)]
    for _ in range(1, n):
        powers.append(powers[-1] * x)
    A = sympy.Matrix([[p[i, j] for p in powers] for i in range(n) for j in range(n)])
    b = sympy.Matrix([g[i, j] for i in range(n) for j in range(n)])
    try:
        sol, params = A.gauss_jordan_solve(b)
    except ValueError:
        raise TodaError("g is not a polynomial in x") from None
    if params.shape[0]:
        raise TodaError("x is not regular: the powers of x are dependent")
    coeffs = list(sol)
    R1 = sympy.Poly(sum(c * Z**k for k, c in enumerate(coeffs)), Z, domain=QQ)
    # R is the partner of R' in the completion: R = -R'^{-1} mod Q
    partner = zastava_ops("involution", ZastavaPoint(Q, R1))
    # cyclic-basis reading of the first column: g e_1 = sum_k c_k x^k e_1
    e1 = sympy.Matrix([1] + [0] * (n - 1))
    cyclic = sympy.Matrix.hstack(*[p * e1 for p in powers])
    column_ok = cyclic * sympy.Matrix(coeffs) == g[:, 0]
    # literal reading g_{k+1,1} when x^k e_1 = e_{k+1}
    literal = cyclic == sympy.eye(n)
    literal_ok = literal and all(coeffs[k] == g[k, 0] for k in range(n))
    return {"point": partner, "R_prime": R1, "Q": Q, "first_column": column_ok,
            "literal_first_column": literal_ok if literal else None}


def companion_slice(coeffs) -> sympy.Matrix:
    """e + (last column): x e_j = e_{j+1} for j < n and x e_n = sum c_k e_k."""
    n = len(coeffs)
    x = sympy.zeros(n, n)
    for i in range(n - 1):
        x[i + 1, i] = 1
    for k, c in enumerate(coeffs):
        x[k, n - 1] = c
    return x


# multiplication versus the operator coproduct at hbar = 0


def _tensor_symbols(prefix):
    return {name: sympy.Symbol(f"{name}{prefix}") for name in ("q1", "q2", "r1", "rp1")}


def classi_check(k: int = 2, l: int = 2) -> list[dict]:
    """mu^* of r1, r1', q1, q2 from symbolic 2x2 multiplication, compared with
    the expected closed forms and with the tau_{k,l} formulas at hbar = 0."""
    if k < 1 or l < 1:
        raise TodaError("k, l >= 1")
    A, B = _tensor_symbols("_a"), _tensor_symbols("_b")
    zs = sympy.Symbol("z")

    def generic(n, syms, tag):
        # leading coefficients named, the rest generic
        Q = zs**n + syms["q1"] * zs ** (n - 1) + (syms["q2"] * zs ** (n - 2) if n >= 2 else 0)
        Q += sum(sympy.Symbol(f"q{j}{tag}") * zs ** (n - j) for j in range(3, n + 1))
        R = syms["r1"] * zs ** (n - 1) + sum(sympy.Symbol(f"r{j}{tag}") * zs ** (n - j) for j in range(2, n + 1))
        Rp = syms["rp1"] * zs ** (n - 1) + sum(sympy.Symbol(f"rp{j}{tag}") * zs ** (n - j) for j in range(2, n + 1))
        Qp = sum(sympy.Symbol(f"qp{j}{tag}") * zs**j for j in range(0, n - 1))
        return [[Q, Rp], [R, Qp]]

    # q_2 does not exist in degree 1
    if k == 1:
        A["q2"] = sympy.Integer(0)
    if l == 1:
        B["q2"] = sympy.Integer(0)
    m1, m2 = generic(k, A, "_a"), generic(l, B, "_b")
    prod = [[sympy.expand(sum(m1[i][s] * m2[s][j] for s in range(2))) for j in range(2)] for i in range(2)]
    n = k + l
    Q, R, Rp = (sympy.Poly(prod[0][0], zs), sympy.Poly(prod[1][0], zs), sympy.Poly(prod[0][1], zs))
    mu = {
        "r1": R.coeff_monomial(zs ** (n - 1)),
        "rp1": Rp.coeff_monomial(zs ** (n - 1)),
        "q1": Q.coeff_monomial(zs ** (n - 1)),
        "q2": Q.coeff_monomial(zs ** (n - 2)),
    }
    expected = {
        "r1": A["r1"],
        "rp1": B["rp1"],
        "q1": A["q1"] + B["q1"],
        "q2": A["q2"] + B["q2"] + A["q1"] * B["q1"] + A["rp1"] * B["r1"],
    }
    # tau_{k,l} at hbar = 0 under r1 <-> -Delta, r1' <-> Delta', q1 <-> C1, q2 <-> C2
    hbar = sympy.Symbol("hbar")
    ops = {s: {name: sympy.Symbol(f"{name}{s}") for name in ("C1", "C2", "Dp", "D")} for s in ("_a", "_b")}
    a, b = ops["_a"], ops["_b"]
    tau = {
        "D": a["D"],
        "Dp": b["Dp"],
        "C1": a["C1"] + b["C1"],
        "C2": a["C2"] + b["C2"] + a["C1"] * b["C1"] - a["Dp"] * b["D"]
        - sympy.Rational(l, 2) * hbar * a["C1"] + sympy.Rational(k, 2) * hbar * b["C1"],
    }
    dictionary = {}
    for s, syms in (("_a", A), ("_b", B)):
        dictionary.update({ops[s]["D"]: -syms["r1"], ops[s]["Dp"]: syms["rp1"],
                           ops[s]["C1"]: syms["q1"], ops[s]["C2"]: syms["q2"]})
    via_tau = {
        "r1": -tau["D"],
        "rp1": tau["Dp"],
        "q1": tau["C1"],
        "q2": tau["C2"],
    }
    checks = []
    for key in ("r1", "rp1", "q1", "q2"):
        diff = sympy.expand(mu[key] - expected[key])
        checks.append(_check(f"mult-pullback/k={k},l={l}/mu*({key})=expected", diff == 0, str(diff) if diff else "",
                             value=str(mu[key])))
        tv = sympy.expand(via_tau[key].subs(hbar, 0).subs(dictionary))
        diff = sympy.expand(tv - mu[key])
        checks.append(_check(f"mult-pullback/k={k},l={l}/tau({key})|hbar=0=mu*", diff == 0, str(diff) if diff else ""))
    return checks


__all__ = [
    "CompletionImpossible",
    "MatrixCoordinates",
    "RMatrixBracket",
    "TodaError",
    "ZastavaPoint",
    "canonical_bracket",
    "canonical_vs_rmatrix",
    "classi_check",
    "companion_slice",
    "involutivity_check",
    "kostant_to_zastava",
    "lax_and_hamiltonians",
    "monodromy",
    "psi_complete",
    "rmatrix_bracket_check",
    "series_recursion_check",
    "zastava_checks",
    "zastava_ops",
    "zastava_point",
]
