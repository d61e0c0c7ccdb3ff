"""Parabolic subalgebras p_X and the pieces of Lambda^k g built from them."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product
from math import comb

from gmpy2 import mpq

from .chevalley import LieAlgebra
from .exterior import sort_sign, wedge_all, wedge_terms
from .rootsys import (
    RootSystem,
    add,
    build_root_system,
    check_type,
    connected_components,
    root_subsystem,
)
from .submodule import Subspace, _kernel_of_functionals

ONE = mpq(1)


def unit(i: int) -> dict:
    return {i: ONE}


def _kernel_basis(rows: list, n: int) -> list:
    """Basis (sparse dicts on range(n)) of the common kernel of integer rows."""
    F = Subspace(1)
    for r in rows:
        F.add({m: mpq(c) for m, c in enumerate(r) if c})
    K = _kernel_of_functionals(F, range(n))
    return [K.rows[p] for p in K.pivots]


@dataclass(eq=False)
class ParabolicData:
    """Index sets and counts attached to X (1-based simple-root indices)."""

    L: LieAlgebra
    X: frozenset
    components: list
    component_roots: list  # <X_i> per component
    pu: list  # basis indices x_a, a in R_+ \ <X>
    pmu: list  # their negatives
    d_parts: list  # per component: x_{+-a}, a in <X_i>, then h_j, j in X_i
    z: list  # sparse g-vectors spanning the centre of l
    l_indices: list = field(repr=False)

    @property
    def rs(self) -> RootSystem:
        return self.L.rs

    @property
    def n_components(self) -> int:
        return len(self.components)

    @property
    def n_i(self) -> list:
        return [len(r) for r in self.component_roots]

    @property
    def n_prime(self) -> int:
        return sum(self.n_i)

    @property
    def d(self) -> int:
        return len(self.pu)

    @property
    def dim_z(self) -> int:
        return len(self.z)

    @property
    def dim_d(self) -> int:
        return sum(len(p) for p in self.d_parts)

    @property
    def dim_l(self) -> int:
        return len(self.l_indices)

    @cached_property
    def E_basis(self) -> list:
        """Basis of E_X = p_{-,u} + z + p_u as sparse g-vectors."""
        return [unit(i) for i in self.pmu] + list(self.z) + [unit(i) for i in self.pu]

    @cached_property
    def p_minus_indices(self) -> list:
        """p_- = l + p_{-,u}: every basis index outside p_u."""
        pu = set(self.pu)
        return [i for i in range(self.L.dim) if i not in pu]

    def dims(self) -> dict:
        return {
            "dim_g": self.L.dim,
            "n": self.rs.n_positive,
            "n_i": self.n_i,
            "n_prime": self.n_prime,
            "d": self.d,
            "dim_z": self.dim_z,
            "dim_d": self.dim_d,
            "dim_l": self.dim_l,
        }


def parse_subset(rs: RootSystem, X) -> frozenset:
    X = frozenset(int(i) for i in X)
    bad = [i for i in X if not 1 <= i <= rs.rank]
    if bad:
        raise ValueError(f"simple-root indices {sorted(bad)} outside 1..{rs.rank}")
    return X


def build_parabolic(L: LieAlgebra, X) -> ParabolicData:
    rs = L.rs
    X = parse_subset(rs, X)
    comps = connected_components(rs, X)
    comp_roots = [root_subsystem(rs, c) for c in comps]
    inside = set(root_subsystem(rs, X))
    pu = [L.root_index(a) for a in rs.positive_roots if a not in inside]
    pmu = [L.root_index(tuple(-c for c in a)) for a in rs.positive_roots if a not in inside]
    d_parts = []
    for c, roots in zip(comps, comp_roots):
        part = [L.root_index(tuple(-x for x in a)) for a in roots]
        part += [L.root_index(a) for a in roots]
        part += [L.cartan_index(j) for j in sorted(c)]
        d_parts.append(sorted(part))
    # centre of l: Cartan elements killed by every beta_j, j in X
    rows = [[rs.cartan[j - 1][m] for m in range(rs.rank)] for j in sorted(X)]
    z = [
        {L.cartan_index(m + 1): c for m, c in v.items()}
        for v in _kernel_basis(rows, rs.rank)
    ]
    l_idx = sorted(
        [L.root_index(a) for a in inside]
        + [L.root_index(tuple(-c for c in a)) for a in inside]
        + L.cartan_indices
    )
    return ParabolicData(L, X, comps, comp_roots, sorted(pu), sorted(pmu), d_parts, z, l_idx)


# gradings


@dataclass
class GradedPiece:
    multi_index: tuple
    space: Subspace

    @property
    def dim(self) -> int:
        return self.space.dim


def compositions(k: int, bounds):
    """Tuples i with 0 <= i_s <= bounds[s] and sum k, lexicographic."""
    bounds = list(bounds)
    if not bounds:
        if k == 0:
            yield ()
        return
    first, rest = bounds[0], bounds[1:]
    cap = sum(rest)
    for a in range(min(first, k) + 1):
        if k - a <= cap:
            for tail in compositions(k - a, rest):
                yield (a,) + tail


def is_coordinate(vectors) -> bool:
    return all(len(v) == 1 and next(iter(v.values())) == 1 for v in vectors)


def wedge_span(grade: int, parts, counts) -> Subspace:
    """Span of Lambda^{c_1} P_1 ^ ... ^ Lambda^{c_m} P_m for parts given by bases."""
    S = Subspace(grade)
    choices = [combinations(p, c) for p, c in zip(parts, counts)]
    if all(is_coordinate(p) for p, c in zip(parts, counts) if c):
        for pick in product(*choices):
            idx = tuple(sorted(next(iter(v)) for group in pick for v in group))
            if len(set(idx)) == len(idx) and idx not in S.rows:
                S.rows[idx] = {idx: ONE}
        return S
    for pick in product(*choices):
        w = wedge_all([v for group in pick for v in group])
        if w.terms:
            S.add(w.terms)
    return S


def graded_pieces(parts, k: int) -> list:
    """Pieces of Lambda^k V for V the direct sum of the given parts."""
    dims = [len(p) for p in parts]
    return [
        GradedPiece(i, wedge_span(k, parts, i)) for i in compositions(k, dims)
    ]


def parts_3(pd: ParabolicData) -> list:
    return [[unit(i) for i in pd.l_indices], [unit(i) for i in pd.pu], [unit(i) for i in pd.pmu]]


def graded_pieces_3(pd: ParabolicData, k: int) -> list:
    """C_i = Lambda^{i1} l ^ Lambda^{i2} p_u ^ Lambda^{i3} p_{-,u}."""
    return graded_pieces(parts_3(pd), k)


def mirror_3(i: tuple) -> tuple:
    return (i[0], i[2], i[1])


def parts_5(pd: ParabolicData) -> list:
    """z, d_1, ..., d_n, p_{-,u}, p_u; the mirror swaps the last two."""
    return (
        [list(pd.z)]
        + [[unit(i) for i in part] for part in pd.d_parts]
        + [[unit(i) for i in pd.pmu], [unit(i) for i in pd.pu]]
    )


def mirror_5(i: tuple) -> tuple:
    return i[:-2] + (i[-1], i[-2])


@dataclass(eq=False)
class MaximalData:
    """The decomposition of g attached to X = Pi minus {beta}."""

    L: LieAlgebra
    beta: int  # 1-based
    Z: tuple
    Z_prime: tuple
    Y: tuple
    H_beta: dict
    h_beta: list

    @property
    def beta_root(self):
        return self.L.rs.simple_roots[self.beta - 1]

    def _pos(self, roots):
        return [unit(self.L.root_index(a)) for a in roots]

    def _neg(self, roots):
        return [unit(self.L.root_index(tuple(-c for c in a))) for a in roots]

    @cached_property
    def parts(self) -> list:
        b = self.beta_root
        return [
            self._neg(self.Y),  # E_-
            self._neg([b]),
            self._neg(self.Z_prime),  # u_{0,-}
            self._neg(self.Z),  # u_{0,0}
            [self.H_beta],
            list(self.h_beta),
            self._pos(self.Z),  # u_0
            self._pos(self.Z_prime),  # u_{0,+}
            self._pos([b]),
            self._pos(self.Y),  # E
        ]

    @property
    def E_minus(self) -> list:
        return self.parts[0]

    @property
    def E(self) -> list:
        return self.parts[9]


def maximal_data(L: LieAlgebra, beta: int) -> MaximalData:
    rs = L.rs
    if rs.rank < 2:
        raise ValueError("the maximal-parabolic decomposition needs rank >= 2")
    if not 1 <= beta <= rs.rank:
        raise ValueError(f"beta index {beta} outside 1..{rs.rank}")
    X = frozenset(range(1, rs.rank + 1)) - {beta}
    b = rs.simple_roots[beta - 1]
    inside = root_subsystem(rs, X)
    Z = tuple(a for a in inside if rs.is_root(add(b, a)))
    Zp = tuple(a for a in inside if a not in Z)
    Y = tuple(a for a in rs.positive_roots if a not in inside and a != b)
    Hb = L.coroot(b)
    # h_beta: Cartan elements Killing-orthogonal to H_beta
    K = L.killing_matrix
    row = [sum(K[L.cartan_index(m + 1)][i] * c for i, c in Hb.items()) for m in range(rs.rank)]
    hb = [{L.cartan_index(m + 1): c for m, c in v.items()} for v in _kernel_basis([row], rs.rank)]
    return MaximalData(L, beta, Z, Zp, Y, Hb, hb)


def graded_pieces_10(L: LieAlgebra, beta: int, k: int) -> list:
    return graded_pieces(maximal_data(L, beta).parts, k)


def mirror_10(i: tuple) -> tuple:
    return (i[9], i[8], i[7], i[6], i[4], i[5], i[3], i[2], i[1], i[0])


def omega_forms(L: LieAlgebra, beta: int, alpha):
    """(omega'_a, omega_a, c_a) for a in Z; omega_a is orthogonal to omega'_a."""
    md = maximal_data(L, beta)
    if tuple(alpha) not in md.Z:
        raise ValueError(f"{alpha} is not in Z for beta_{beta}")
    b = md.beta_root
    nb, na = tuple(-c for c in b), tuple(-c for c in alpha)
    xb, xa = unit(L.root_index(b)), unit(L.root_index(alpha))
    xnb, xna = unit(L.root_index(nb)), unit(L.root_index(na))
    Hb = md.H_beta
    top = L.bracket(xb, xa)
    bottom = L.bracket(xnb, xna)
    c = -mpq(1, 2) * L.killing(Hb, Hb) * L.killing(top, bottom)
    omega_p = wedge_all([Hb, top]) + wedge_all([xb, xa]) * 2
    omega = wedge_all([Hb, bottom]) + wedge_all([xnb, xna]) * c
    return omega_p, omega, c


# the generating subspaces


def index_set(pd: ParabolicData, k: int) -> list:
    """I_k: j in N^n with j_i <= n_i and |j| = k."""
    return list(compositions(k, pd.n_i))


def span_V_prime(pd: ParabolicData, k: int) -> Subspace:
    parts = [[unit(i) for i in part] for part in pd.d_parts]
    S = Subspace(k)
    for j in index_set(pd, k):
        T = wedge_span(k, parts, j)
        for p, r in T.rows.items():
            if p not in S.rows:
                S.add(r)
    return S


def V_generators(pd: ParabolicData, k: int):
    """Spanning vectors of V_{k,p}: Lambda^i E ^ (a spanning set of V'_{k-i})."""
    E = pd.E_basis
    parts = [[unit(i) for i in part] for part in pd.d_parts]
    for i in range(k + 1):
        js = index_set(pd, k - i)
        if not js:
            continue
        for eset in combinations(E, i):
            head = wedge_all(eset).terms
            if not head:
                continue
            for j in js:
                choices = [combinations(p, c) for p, c in zip(parts, j)]
                for pick in product(*choices):
                    sign, key = sort_sign(tuple(next(iter(v)) for g in pick for v in g))
                    if sign:
                        w = wedge_terms(head, {key: mpq(sign)})
                        if w:
                            yield w


def span_V(pd: ParabolicData, k: int) -> Subspace:
    S = Subspace(k)
    for w in V_generators(pd, k):
        S.add(w)
    return S


def V_dimension_count(pd: ParabolicData, k: int) -> int:
    """dim V_{k,p} by counting adapted monomials (they are independent)."""
    e = len(pd.E_basis)
    total = 0
    for i in range(k + 1):
        for j in index_set(pd, k - i):
            t = comb(e, i)
            for part, c in zip(pd.d_parts, j):
                t *= comb(len(part), c)
            total += t
    return total


# closed forms from the root-system appendix


@dataclass
class AppendixFormulas:
    type_label: str
    rank: int
    s: int
    n: int
    n1: int
    n2: int  # as in the proposition statement
    d: int  # n - n1 - n2
    n2_derivation: int  # as in the case-by-case derivation
    d_derivation: int
    poly_n1: object  # displayed value of n - 2d - n1
    poly_n2: object  # displayed value of n - 2d - n2
    s_bound: tuple  # (a, c, D): the stated bound s <= (a - sqrt(D)) / c
    s_bound_derivation: tuple
    threshold: int  # stated minimal rank for 2d + n1 <= n

    def within_bound(self, bound=None) -> bool:
        """s <= (a - sqrt(D)) / c, decided in integers."""
        a, c, D = self.s_bound if bound is None else bound
        t = a - c * self.s
        return t >= 0 and t * t >= D


def appendix_formulas(type_label: str, rank: int, s: int) -> AppendixFormulas:
    check_type(type_label, rank)
    if type_label not in "ABCD":
        raise ValueError("closed forms exist for the classical types A-D only")
    l = rank
    hi = l - 4 if type_label == "D" else l - 2
    if not 1 <= s <= hi:
        raise ValueError(f"s must lie in 1..{hi} for {type_label}{l}, got {s}")
    n = build_root_system(type_label, l).n_positive
    n1 = s * (s + 1) // 2
    half = mpq(1, 2)
    if type_label == "A":
        n2 = n2d = (l - s - 1) * (l - s) // 2
        p1 = half * (3 * s * s + (-4 * l + 3) * s + l * l - 3 * l)
        p2 = mpq(3 * s * s + (-2 * l + 3) * s - 2 * l)
        bound = (2 * l - 3, 6, 4 * l * l + 12 * l + 9)
        bound_d = (4 * l - 3, 6, 4 * l * l + 12 * l + 9)
        thr = 6
    elif type_label in "BC":
        n2 = n2d = (l - s - 1) ** 2
        p1 = half * (5 * s * s + (-8 * l + 9) * s + 2 * l * l - 8 * l + 4)
        p2 = mpq(2 * s * s + (-2 * l + 5) * s - 4 * l + 4)
        bound = bound_d = (8 * l - 9, 10, 24 * l * l + 16 * l + 1)
        thr = 7
    else:
        n2 = (l - s - 1) ** 2
        n2d = (l - s - 1) * (l - s - 2)
        p1 = mpq(5 * s * s - s * (4 * l - 7) + l * l - 5 * l + 4)
        p2 = mpq(2 * s * s + (-2 * l + 4) * s - 2 * l + 2)
        bound = bound_d = (8 * l - 13, 10, 24 * l * l - 8 * l + 9)
        thr = 8
    return AppendixFormulas(
        type_label, l, s, n, n1, n2, n - n1 - n2, n2d, n - n1 - n2d, p1, p2, bound, bound_d, thr
    )


EXCEPTIONAL_TABLES = {
    # type: (dim l list, 2d list), paired in order
    ("F", 4): ([12, 22], [40, 30]),
    ("E", 6): ([20, 28, 36, 46], [58, 50, 42, 32]),
    ("E", 7): ([27, 33, 39, 49, 67, 79], [106, 100, 94, 84, 66, 54]),
    ("E", 8): ([36, 40, 52, 54, 64, 82, 92, 134], [212, 208, 196, 194, 184, 166, 156, 114]),
}


def maximal_levi_counts(rs: RootSystem, beta: int) -> dict:
    """Root-system-level counts for X = Pi minus {beta}, no algebra needed."""
    X = frozenset(range(1, rs.rank + 1)) - {beta}
    comps = connected_components(rs, X)
    n_i = [len(root_subsystem(rs, c)) for c in comps]
    inside = sum(n_i)
    d = rs.n_positive - inside
    return {
        "beta": beta,
        "components": [sorted(c) for c in comps],
        "n_i": n_i,
        "d": d,
        "dim_l": rs.dim - 2 * d,
        "two_d": 2 * d,
    }
