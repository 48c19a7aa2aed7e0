"""Simply-laced Cartan data, positive roots and pinned PBW-variable choices."""

from __future__ import annotations

from dataclasses import dataclass, field


class UnsupportedType(ValueError):
    pass


def _dynkin_edges(kind: str, rank: int) -> list[tuple[int, int]]:
    if kind == "A":
        if rank < 1:
            raise UnsupportedType("A_n needs n >= 1")
        return [(i, i + 1) for i in range(rank - 1)]
    if kind == "D":
        if rank < 4:
            raise UnsupportedType("D_n needs n >= 4")
        edges = [(i, i + 1) for i in range(rank - 2)]
        edges.append((rank - 3, rank - 1))
        return edges
    if kind == "E":
        if rank not in (6, 7, 8):
            raise UnsupportedType("E_n needs n in 6, 7, 8")
        # Bourbaki labelling: 1-3-4-5-6(-7-8), with 2 attached to 4.
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)]
        edges += [(i, i + 1) for i in range(4, rank - 1)]
        return edges
    raise UnsupportedType(f"unsupported Cartan type {kind!r} (only A, D, E)")


@dataclass(frozen=True)
class CartanDatum:
    kind: str
    rank: int
    pairing: tuple[tuple[int, ...], ...]
    positive_roots: tuple[tuple[int, ...], ...]

    @property
    def label(self) -> str:
        return f"{self.kind}{self.rank}"

    def dot(self, a, b) -> int:
        n = self.rank
        return sum(a[i] * self.pairing[i][j] * b[j] for i in range(n) for j in range(n))

    def simple_root(self, i: int) -> tuple[int, ...]:
        return tuple(1 if k == i else 0 for k in range(self.rank))

    def pairing_with_simple(self, i: int, root) -> int:
        """<alpha_i, root> for the symmetric form."""
        return sum(self.pairing[i][j] * root[j] for j in range(self.rank))

    def height(self, root) -> int:
        return sum(root)

    def to_report(self, choice: "RootVectorChoice | None" = None) -> dict:
        out = {
            "type": self.kind,
            "rank": self.rank,
            "positive_roots": [list(r) for r in self.positive_roots],
        }
        if choice is not None:
            out["pbw_choice"] = {
                ",".join(map(str, beta)): list(seq) for beta, seq in choice.decompositions.items()
            }
        return out


def build_cartan(kind: str, rank: int) -> CartanDatum:
    kind = kind.upper()
    edges = _dynkin_edges(kind, rank)
    mat = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for i, j in edges:
        mat[i][j] = mat[j][i] = -1
    pairing = tuple(tuple(r) for r in mat)
    roots = _positive_roots(pairing)
    return CartanDatum(kind, rank, pairing, roots)


def _positive_roots(pairing) -> tuple[tuple[int, ...], ...]:
    """Closure of the simple roots under adding simple roots while staying a root.

    For simply-laced types beta + alpha_i is a root exactly when
    (beta, alpha_i) = -1, for a positive root beta != alpha_i.
    """
    n = len(pairing)
    simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(n):
                if sum(pairing[i][j] * beta[j] for j in range(n)) == -1:
                    gamma = tuple(b + (1 if k == i else 0) for k, b in enumerate(beta))
                    if gamma not in found:
                        found.add(gamma)
                        nxt.append(gamma)
        frontier = nxt
    # height first, then lexicographic with the larger leading coefficient first
    # (so alpha_1 precedes alpha_2)
    return tuple(sorted(found, key=lambda r: (sum(r), tuple(-x for x in r))))


def leading_minors_positive(datum: CartanDatum) -> bool:
    from sympy import Matrix

    m = Matrix(datum.pairing)
    return all(m[:k, :k].det() > 0 for k in range(1, datum.rank + 1))


@dataclass(frozen=True)
class RootVectorChoice:
    """Decomposition sequences beta = alpha_{i1} + ... + alpha_{il} per positive root.

    Node indices are 1-based, matching generator letters.
    """

    datum: CartanDatum
    decompositions: dict = field(hash=False)

    def sequence(self, beta) -> tuple[int, ...]:
        return self.decompositions[tuple(beta)]

    def level_split(self, beta, q: int) -> tuple[int, ...]:
        """Levels q_1..q_l with sum q + l - 1: q on the last factor, 1 elsewhere."""
        if q < 1:
            raise ValueError("level must be >= 1")
        ell = len(self.sequence(beta))
        return (1,) * (ell - 1) + (q,)


def _bracket_nonzero(datum: CartanDatum, seq) -> bool:
    """Whether [e_{i1},[e_{i2},...,e_{il}]] is nonzero.

    Root-space bookkeeping: going from the innermost letter outward, each
    partial sum must be a root and each step must add a simple root alpha_i
    with (partial, alpha_i) = -1.
    """
    partial = datum.simple_root(seq[-1])
    for i in reversed(seq[:-1]):
        if datum.pairing_with_simple(i, partial) != -1:
            return False
        partial = tuple(p + (1 if k == i else 0) for k, p in enumerate(partial))
    return partial in datum.positive_roots


def default_pbw_choice(datum: CartanDatum) -> RootVectorChoice:
    """Lex-least decomposition sequence giving a nonzero left-normed bracket."""
    decomps = {}
    for beta in datum.positive_roots:
        decomps[beta] = tuple(i + 1 for i in _lex_least_sequence(datum, beta))
    return RootVectorChoice(datum, decomps)


def _lex_least_sequence(datum, beta):
    # depth-first over sequences in lexicographic order; the first complete
    # sequence is the lex-least one.  A prefix letter i is only viable when
    # the remaining sum is a positive root gamma with (alpha_i, gamma) = -1.
    n = datum.rank
    roots = set(datum.positive_roots)

    def rec(remaining):
        if sum(remaining) == 1:
            return (remaining.index(1),)
        for i in range(n):
            if remaining[i] == 0:
                continue
            rem = tuple(r - (1 if k == i else 0) for k, r in enumerate(remaining))
            if rem not in roots or datum.pairing_with_simple(i, rem) != -1:
                continue
            tail = rec(rem)
            if tail is not None:
                return (i,) + tail
        return None

    seq = rec(tuple(beta))
    if seq is None or not _bracket_nonzero(datum, seq):
        raise AssertionError(f"no nonzero bracket for root {beta}")
    return seq


def coweight(values) -> tuple[int, ...]:
    return tuple(int(v) for v in values)


def is_antidominant(mu) -> bool:
    return all(m <= 0 for m in mu)


def is_dominant(mu) -> bool:
    return all(m >= 0 for m in mu)

