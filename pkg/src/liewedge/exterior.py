"""Sparse exact vectors in the exterior powers of g.

A basis monomial of Lambda^k g is a strictly increasing tuple of basis
indices of g (a "wedge index").  Vectors map wedge indices to nonzero
mpq coefficients.
"""

from __future__ import annotations

from bisect import bisect_left
from itertools import combinations
from math import comb

from gmpy2 import mpq

from .chevalley import LieAlgebra

ZERO = mpq(0)
ONE = mpq(1)


class GradeError(ValueError):
    pass


class ExteriorVector:
    """Element of Lambda^grade g; terms never store zero coefficients."""

    __slots__ = ("grade", "terms")

    def __init__(self, grade: int, terms: dict | None = None):
        self.grade = grade
        self.terms = {} if terms is None else {k: mpq(v) for k, v in terms.items() if v}
        for key in self.terms:
            if len(key) != grade:
                raise GradeError(f"key {key} has length {len(key)}, expected grade {grade}")

    @classmethod
    def _raw(cls, grade, terms):
        v = cls.__new__(cls)
        v.grade = grade
        v.terms = terms
        return v

    @classmethod
    def monomial(cls, indices, coeff=ONE) -> "ExteriorVector":
        """v_{i1} ^ ... ^ v_{ik} for arbitrary (unsorted) basis indices."""
        sign, key = sort_sign(tuple(indices))
        if not sign:
            return cls._raw(len(indices), {})
        return cls._raw(len(key), {key: mpq(coeff) * sign})

    @classmethod
    def from_vector(cls, x: dict) -> "ExteriorVector":
        return cls._raw(1, {(i,): mpq(c) for i, c in x.items() if c})

    @classmethod
    def scalar(cls, c=ONE) -> "ExteriorVector":
        return cls._raw(0, {(): mpq(c)} if c else {})

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, ExteriorVector):
            return NotImplemented
        if not self.terms and not other.terms:
            return True
        return self.grade == other.grade and self.terms == other.terms

    def __repr__(self):
        inner = ", ".join(f"{k}: {v}" for k, v in sorted(self.terms.items())[:6])
        more = ", ..." if len(self.terms) > 6 else ""
        return f"ExteriorVector({self.grade}, {{{inner}{more}}})"

    def _check_grade(self, other):
        if self.grade != other.grade and self.terms and other.terms:
            raise GradeError(f"grade mismatch: {self.grade} vs {other.grade}")

    def __add__(self, other):
        self._check_grade(other)
        out = dict(self.terms)
        add_into(out, other.terms, ONE)
        return ExteriorVector._raw(self.grade if self.terms else other.grade, out)

    def __sub__(self, other):
        self._check_grade(other)
        out = dict(self.terms)
        add_into(out, other.terms, -ONE)
        return ExteriorVector._raw(self.grade if self.terms else other.grade, out)

    def __neg__(self):
        return ExteriorVector._raw(self.grade, {k: -v for k, v in self.terms.items()})

    def __mul__(self, c):
        c = mpq(c)
        if not c:
            return ExteriorVector._raw(self.grade, {})
        return ExteriorVector._raw(self.grade, {k: c * v for k, v in self.terms.items()})

    __rmul__ = __mul__

    def leading(self):
        return min(self.terms) if self.terms else None


def add_into(acc: dict, terms: dict, c) -> None:
    """acc += c * terms, dropping cancelled keys."""
    for k, v in terms.items():
        w = acc.get(k, ZERO) + c * v
        if w:
            acc[k] = w
        else:
            acc.pop(k, None)


def sort_sign(idx: tuple):
    """(sign, sorted tuple) of a wedge of basis indices; sign 0 on repeats."""
    if len(set(idx)) != len(idx):
        return 0, None
    inv = 0
    n = len(idx)
    for a in range(n):
        ia = idx[a]
        for b in range(a + 1, n):
            if idx[b] < ia:
                inv += 1
    return (-1 if inv & 1 else 1), tuple(sorted(idx))


def merge_sign(a: tuple, b: tuple):
    """Sign and key of e_a ^ e_b for sorted a, b; (0, None) if they share an index."""
    inv = 0
    i = j = 0
    na, nb = len(a), len(b)
    out = []
    while i < na and j < nb:
        if a[i] < b[j]:
            out.append(a[i])
            i += 1
        elif a[i] > b[j]:
            out.append(b[j])
            inv += na - i
            j += 1
        else:
            return 0, None
    out.extend(a[i:])
    out.extend(b[j:])
    return (-1 if inv & 1 else 1), tuple(out)


def wedge_terms(u: dict, v: dict) -> dict:
    out = {}
    for ka, ca in u.items():
        for kb, cb in v.items():
            s, key = merge_sign(ka, kb)
            if s:
                w = out.get(key, ZERO) + (ca * cb if s > 0 else -ca * cb)
                if w:
                    out[key] = w
                else:
                    del out[key]
    return out


def wedge(u: ExteriorVector, v: ExteriorVector) -> ExteriorVector:
    return ExteriorVector._raw(u.grade + v.grade, wedge_terms(u.terms, v.terms))


def wedge_all(vectors, grade0=None) -> ExteriorVector:
    """Wedge of a sequence of grade-1 sparse g-vectors (dicts index -> coeff)."""
    acc = {(): ONE}
    k = 0
    for x in vectors:
        acc = wedge_terms(acc, {(i,): c for i, c in x.items()})
        k += 1
        if not acc:
            break
    return ExteriorVector._raw(k, acc)


def basis(dim: int, k: int):
    """Canonical monomial basis of Lambda^k of a dim-dimensional space."""
    return combinations(range(dim), k)


def dimension(dim: int, k: int) -> int:
    return comb(dim, k) if 0 <= k <= dim else 0


def ad_basis_terms(L: LieAlgebra, i: int, terms: dict) -> dict:
    """ad(x_i) on a sparse combination of monomials (derivation rule)."""
    cols = L.ad_columns[i]
    out = {}
    for key, coeff in terms.items():
        k = len(key)
        for p in range(k):
            src = key[p]
            col = cols[src]
            if not col:
                continue
            rest = key[:p] + key[p + 1:]
            for j, c in col:
                if j == src:
                    nk, sgn = key, 1
                else:
                    pos = bisect_left(rest, j)
                    if pos < len(rest) and rest[pos] == j:
                        continue
                    nk = rest[:pos] + (j,) + rest[pos:]
                    sgn = -1 if (pos - p) & 1 else 1
                w = c * coeff
                w = out.get(nk, ZERO) + (w if sgn > 0 else -w)
                if w:
                    out[nk] = w
                else:
                    del out[nk]
    return out


def ad_action(L: LieAlgebra, x: dict, omega: ExteriorVector) -> ExteriorVector:
    """x.(v_1 ^ ... ^ v_k) = sum_i v_1 ^ ... ^ [x, v_i] ^ ... ^ v_k."""
    x = L._check(x)
    out = {}
    for i, c in x.items():
        add_into(out, ad_basis_terms(L, i, omega.terms), c)
    return ExteriorVector._raw(omega.grade, out)


def det(M) -> mpq:
    """Determinant of a small square matrix over Q by elimination."""
    n = len(M)
    if n == 0:
        return ONE
    A = [list(map(mpq, row)) for row in M]
    d = ONE
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c]), None)
        if piv is None:
            return ZERO
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            d = -d
        p = A[c][c]
        d *= p
        for r in range(c + 1, n):
            f = A[r][c]
            if f:
                f = f / p
                Ar, Ac = A[r], A[c]
                for j in range(c + 1, n):
                    Ar[j] -= f * Ac[j]
    return d


class GramPairing:
    """The Killing form extended to Lambda^k g by k x k determinants."""

    def __init__(self, L: LieAlgebra):
        self.L = L
        K = L.killing_matrix
        self.columns = [{j: K[j][i] for j in range(L.dim) if K[j][i]} for i in range(L.dim)]
        self._memo = {}

    def basis_pair(self, I: tuple, J: tuple) -> mpq:
        """<e_I, e_J> = det(kappa(e_{I_a}, e_{J_b}))."""
        k = len(I)
        if k != len(J):
            raise GradeError(f"grade mismatch: {k} vs {len(J)}")
        if k <= 2:
            key = (I, J) if I <= J else (J, I)
            v = self._memo.get(key)
            if v is None:
                K = self.L.killing_matrix
                v = det([[K[a][b] for b in J] for a in I])
                self._memo[key] = v
            return v
        K = self.L.killing_matrix
        return det([[K[a][b] for b in J] for a in I])

    def lower_terms(self, terms: dict) -> dict:
        """Coefficients of the functional <omega, .> on the monomial basis."""
        out = {}
        cache = {}
        cols = self.columns
        for key, c in terms.items():
            low = cache.get(key)
            if low is None:
                acc = {(): ONE}
                for i in key:
                    acc = wedge_terms(acc, {(j,): v for j, v in cols[i].items()})
                    if not acc:
                        break
                low = acc
            add_into(out, low, c)
        return out

    def lower(self, omega: ExteriorVector) -> ExteriorVector:
        return ExteriorVector._raw(omega.grade, self.lower_terms(omega.terms))

    def __call__(self, w1: ExteriorVector, w2: ExteriorVector) -> mpq:
        if w1.grade != w2.grade:
            raise GradeError(f"grade mismatch: {w1.grade} vs {w2.grade}")
        if len(w1.terms) > len(w2.terms):
            w1, w2 = w2, w1
        low = self.lower_terms(w1.terms)
        t2 = w2.terms
        if len(low) > len(t2):
            return sum((c * low[k] for k, c in t2.items() if k in low), ZERO)
        return sum((c * t2[k] for k, c in low.items() if k in t2), ZERO)


_PAIRINGS: dict = {}


def pairing(L: LieAlgebra) -> GramPairing:
    p = _PAIRINGS.get(id(L))
    if p is None or p.L is not L:
        p = _PAIRINGS[id(L)] = GramPairing(L)
    return p


def gram(L: LieAlgebra, w1: ExteriorVector, w2: ExteriorVector) -> mpq:
    return pairing(L)(w1, w2)


def invariance_check(L: LieAlgebra, x: dict, w1: ExteriorVector, w2: ExteriorVector):
    """(<x.w1, w2>, -<w1, x.w2>); equal by invariance of the Killing form."""
    if w1.grade != w2.grade:
        raise GradeError(f"grade mismatch: {w1.grade} vs {w2.grade}")
    return gram(L, ad_action(L, x, w1), w2), -gram(L, w1, ad_action(L, x, w2))
