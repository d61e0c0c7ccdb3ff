"""Root systems of the simple Lie algebras, Bourbaki numbering.

Roots are integer coordinate vectors in the basis of simple roots.  The
inner product is carried as an exact rational Gram matrix of the simple
roots, derived from the Bourbaki realisations in Euclidean space.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

TYPES = "ABCDEFG"

Root = tuple  # tuple[int, ...], coordinates on the simple roots


class RootSystemError(ValueError):
    pass


def _half(*xs):
    return [Fraction(x, 2) for x in xs]


def _e(n, *pairs):
    v = [Fraction(0)] * n
    for i, c in pairs:
        v[i - 1] += c
    return v


def _simple_vectors(type_label: str, rank: int) -> list[list[Fraction]]:
    """Euclidean simple roots, following the planches of Bourbaki ch. VI."""
    l = rank
    if type_label == "A":
        return [_e(l + 1, (i, 1), (i + 1, -1)) for i in range(1, l + 1)]
    if type_label in "BCD":
        roots = [_e(l, (i, 1), (i + 1, -1)) for i in range(1, l)]
        if type_label == "B":
            roots.append(_e(l, (l, 1)))
        elif type_label == "C":
            roots.append(_e(l, (l, 2)))
        else:
            roots.append(_e(l, (l - 1, 1), (l, 1)))
        return roots
    if type_label == "E":
        e8 = [
            _half(1, -1, -1, -1, -1, -1, -1, 1),
            _e(8, (1, 1), (2, 1)),
            _e(8, (2, 1), (1, -1)),
            _e(8, (3, 1), (2, -1)),
            _e(8, (4, 1), (3, -1)),
            _e(8, (5, 1), (4, -1)),
            _e(8, (6, 1), (5, -1)),
            _e(8, (7, 1), (6, -1)),
        ]
        return e8[:l]
    if type_label == "F":
        return [
            _e(4, (2, 1), (3, -1)),
            _e(4, (3, 1), (4, -1)),
            _e(4, (4, 1)),
            _half(1, -1, -1, -1),
        ]
    if type_label == "G":
        return [_e(3, (1, 1), (2, -1)), _e(3, (1, -2), (2, 1), (3, 1))]
    raise RootSystemError(f"unknown type {type_label!r}")


def check_type(type_label: str, rank: int) -> None:
    """Raise RootSystemError if (type_label, rank) is not a simple type."""
    if type_label not in TYPES or len(type_label) != 1:
        raise RootSystemError(f"type must be one of {', '.join(TYPES)}, got {type_label!r}")
    if not isinstance(rank, int) or isinstance(rank, bool):
        raise RootSystemError(f"rank must be an integer, got {rank!r}")
    bounds = {
        "A": (rank >= 1, "A requires rank >= 1"),
        "B": (rank >= 2, "B requires rank >= 2"),
        "C": (rank >= 3, "C requires rank >= 3"),
        "D": (rank >= 4, "D requires rank >= 4"),
        "E": (rank in (6, 7, 8), "E requires rank in {6, 7, 8}"),
        "F": (rank == 4, "F requires rank 4"),
        "G": (rank == 2, "G requires rank 2"),
    }
    ok, msg = bounds[type_label]
    if not ok:
        raise RootSystemError(f"{msg}, got {type_label}{rank}")


def positive_root_count(type_label: str, rank: int) -> int:
    l = rank
    return {
        "A": l * (l + 1) // 2,
        "B": l * l,
        "C": l * l,
        "D": l * (l - 1),
        "E": {6: 36, 7: 63, 8: 120}.get(l, 0),
        "F": 24,
        "G": 6,
    }[type_label]


@dataclass(frozen=True)
class RootSystem:
    type_label: str
    rank: int
    gram: tuple  # (beta_i, beta_j) as Fractions
    cartan: tuple  # cartan[i][j] = <beta_i, beta_j^vee>
    positive_roots: tuple
    dynkin_adjacency: tuple = field(repr=False)

    @property
    def label(self) -> str:
        return f"{self.type_label}{self.rank}"

    @property
    def simple_roots(self) -> tuple:
        return self.positive_roots[: self.rank]

    @property
    def n_positive(self) -> int:
        return len(self.positive_roots)

    @property
    def dim(self) -> int:
        """Dimension of the Lie algebra, 2n + rank."""
        return 2 * self.n_positive + self.rank

    @cached_property
    def roots(self) -> tuple:
        return self.positive_roots + tuple(neg(a) for a in self.positive_roots)

    @cached_property
    def root_set(self) -> frozenset:
        return frozenset(self.roots)

    @cached_property
    def positive_index(self) -> dict:
        return {a: i for i, a in enumerate(self.positive_roots)}

    @cached_property
    def highest_root(self) -> Root:
        return self.positive_roots[-1]

    def is_root(self, a: Root) -> bool:
        return a in self.root_set

    def inner(self, a: Root, b: Root) -> Fraction:
        g = self.gram
        return sum(
            (a[i] * b[j] * g[i][j] for i in range(self.rank) if a[i] for j in range(self.rank) if b[j]),
            Fraction(0),
        )

    def norm2(self, a: Root) -> Fraction:
        return self.inner(a, a)

    def pairing(self, a: Root, b: Root) -> int:
        """Cartan integer <a, b^vee> = 2 (a, b) / (b, b)."""
        v = 2 * self.inner(a, b) / self.norm2(b)
        assert v.denominator == 1
        return int(v)

    def coroot_coordinates(self, a: Root) -> tuple:
        """Coordinates of a^vee on the simple coroots beta_i^vee."""
        na = self.norm2(a)
        out = []
        for i in range(self.rank):
            c = a[i] * self.gram[i][i] / na
            assert c.denominator == 1
            out.append(int(c))
        return tuple(out)

    def evaluate(self, a: Root, i: int) -> int:
        """a(H_{beta_i}) for a root (or any weight) a and 0-based simple index i."""
        return sum(a[j] * self.cartan[j][i] for j in range(self.rank))


def neg(a: Root) -> Root:
    return tuple(-c for c in a)


def add(a: Root, b: Root) -> Root:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Root, b: Root) -> Root:
    return tuple(x - y for x, y in zip(a, b))


def height(a: Root) -> int:
    return sum(a)


def is_positive(a: Root) -> bool:
    return sum(a) > 0


def _sort_key(a: Root):
    # by height, then lexicographic with beta_1 ahead of beta_2
    return (sum(a), tuple(-c for c in a))


def build_root_system(type_label: str, rank: int) -> RootSystem:
    """Enumerate R_+ for a simple type by the root-string algorithm."""
    check_type(type_label, rank)
    vecs = _simple_vectors(type_label, rank)
    gram = tuple(
        tuple(sum((x * y for x, y in zip(vecs[i], vecs[j])), Fraction(0)) for j in range(rank))
        for i in range(rank)
    )
    cartan = tuple(
        tuple(int(2 * gram[i][j] / gram[j][j]) for j in range(rank)) for i in range(rank)
    )

    simple = [tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)]
    found = set(simple)
    layer = list(simple)
    while layer:
        nxt = set()
        for a in layer:
            for i in range(rank):
                # the beta_i-string through a is a - p beta_i, ..., a + q beta_i, p - q = <a, beta_i^vee>
                if a == simple[i]:
                    continue
                p = 0
                b = list(a)
                while True:
                    b[i] -= 1
                    if tuple(b) in found:
                        p += 1
                    else:
                        break
                pair = sum(a[j] * cartan[j][i] for j in range(rank))
                if p - pair > 0:
                    c = list(a)
                    c[i] += 1
                    nxt.add(tuple(c))
        nxt -= found
        found |= nxt
        layer = sorted(nxt)
    positive = tuple(sorted(found, key=_sort_key))

    adj = tuple(tuple(i != j and cartan[i][j] != 0 for j in range(rank)) for i in range(rank))
    rs = RootSystem(type_label, rank, gram, cartan, positive, adj)
    expected = positive_root_count(type_label, rank)
    if rs.n_positive != expected:
        raise RootSystemError(f"{rs.label}: enumerated {rs.n_positive} positive roots, expected {expected}")
    return rs


def extremities(rs: RootSystem) -> frozenset:
    """Simple-root indices (1-based) of degree <= 1 in the Dynkin diagram."""
    return frozenset(
        i + 1 for i in range(rs.rank) if sum(rs.dynkin_adjacency[i]) <= 1
    )


def connected_components(rs: RootSystem, X) -> list:
    """Dynkin-connected pieces of X (1-based indices), ordered by least element."""
    remaining = set(X)
    for i in remaining:
        if not 1 <= i <= rs.rank:
            raise RootSystemError(f"simple-root index {i} out of range 1..{rs.rank}")
    comps = []
    while remaining:
        start = min(remaining)
        comp = {start}
        stack = [start]
        while stack:
            i = stack.pop()
            for j in list(remaining):
                if j not in comp and rs.dynkin_adjacency[i - 1][j - 1]:
                    comp.add(j)
                    stack.append(j)
        remaining -= comp
        comps.append(frozenset(comp))
    return comps


def support(a: Root) -> frozenset:
    return frozenset(i + 1 for i, c in enumerate(a) if c)


def root_subsystem(rs: RootSystem, X) -> tuple:
    """<X>: positive roots whose support lies in X, in enumeration order."""
    X = frozenset(X)
    return tuple(a for a in rs.positive_roots if support(a) <= X)
