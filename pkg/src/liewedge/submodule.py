"""Exact subspaces of Lambda^k g and invariant-subspace constructions.

Subspaces are kept in reduced row-echelon form over Q: the pivot of a
row is its smallest wedge index, pivot coefficients are 1, and no row has
a nonzero entry on another row's pivot.  Any hashable, totally ordered
keys work, which the kernel routines exploit by tagging keys.
"""

from __future__ import annotations

import logging
from collections import deque
from itertools import combinations

from gmpy2 import mpq

from .chevalley import LieAlgebra
from .exterior import (
    ExteriorVector,
    GradeError,
    ad_basis_terms,
    add_into,
    dimension,
    pairing,
)

log = logging.getLogger(__name__)

ZERO = mpq(0)
ONE = mpq(1)


class Subspace:
    """Reduced row-echelon span of homogeneous vectors."""

    def __init__(self, grade: int):
        self.grade = grade
        self.rows = {}  # pivot -> {key: coeff}, row[pivot] == 1
        self._cols = {}  # non-pivot key -> set of pivots whose row uses it

    # construction
    @classmethod
    def from_monomials(cls, grade: int, keys) -> "Subspace":
        S = cls(grade)
        for key in keys:
            if key not in S.rows:
                S.rows[key] = {key: ONE}
        return S

    @classmethod
    def full(cls, dim: int, k: int) -> "Subspace":
        return cls.from_monomials(k, combinations(range(dim), k))

    def copy(self) -> "Subspace":
        S = Subspace(self.grade)
        S.rows = {p: dict(r) for p, r in self.rows.items()}
        S._cols = {k: set(v) for k, v in self._cols.items()}
        return S

    # queries
    @property
    def dim(self) -> int:
        return len(self.rows)

    def __len__(self):
        return len(self.rows)

    @property
    def pivots(self) -> list:
        return sorted(self.rows)

    def vectors(self) -> list:
        return [ExteriorVector._raw(self.grade, dict(self.rows[p])) for p in self.pivots]

    def reduce_terms(self, terms: dict) -> dict:
        """Residual of a vector modulo the span (a fresh dict)."""
        v = dict(terms)
        rows = self.rows
        for key in [k for k in v if k in rows]:
            c = v.get(key)
            if c:
                add_into(v, rows[key], -c)
        return v

    def contains(self, vector) -> bool:
        terms = vector.terms if isinstance(vector, ExteriorVector) else vector
        return not self.reduce_terms(terms)

    def __contains__(self, vector):
        return self.contains(vector)

    def is_subspace_of(self, other: "Subspace") -> bool:
        return all(other.contains(r) for r in self.rows.values())

    def witness_not_in(self, other: "Subspace"):
        """A row of self outside other, or None."""
        for p in self.pivots:
            if not other.contains(self.rows[p]):
                return ExteriorVector._raw(self.grade, dict(self.rows[p]))
        return None

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        if self.dim != other.dim:
            return False
        if not self.rows:
            return True
        if self.grade != other.grade or self.rows.keys() != other.rows.keys():
            return False
        return all(self.rows[p] == other.rows[p] for p in self.rows)

    def __repr__(self):
        return f"Subspace(grade={self.grade}, dim={self.dim})"

    # mutation
    def add(self, terms) -> dict | None:
        """Insert a vector; returns the new normalised row, or None if dependent."""
        if isinstance(terms, ExteriorVector):
            if terms.terms and terms.grade != self.grade:
                raise GradeError(f"grade mismatch: {terms.grade} vs {self.grade}")
            terms = terms.terms
        v = self.reduce_terms(terms)
        if not v:
            return None
        if any(type(c) is not type(ONE) for c in v.values()):
            v = {k: mpq(c) for k, c in v.items()}
        self._insert(v)
        return v

    def _insert(self, v: dict) -> None:
        p = min(v)
        lead = v[p]
        if lead != 1:
            inv = ONE / lead
            for key in v:
                v[key] *= inv
        rows, cols = self.rows, self._cols
        for q in cols.pop(p, ()):
            row = rows[q]
            c = row.pop(p)
            for key, val in v.items():
                if key == p:
                    continue
                w = row.get(key, ZERO) - c * val
                if w:
                    if key not in row:
                        cols.setdefault(key, set()).add(q)
                    row[key] = w
                elif key in row:
                    del row[key]
                    s = cols[key]
                    s.discard(q)
                    if not s:
                        del cols[key]
        for key in v:
            if key != p:
                cols.setdefault(key, set()).add(p)
        rows[p] = v

    def extend(self, vectors) -> "Subspace":
        for v in vectors:
            self.add(v)
        return self


def row_reduce(vectors, grade: int | None = None) -> Subspace:
    """Reduced row-echelon span of homogeneous ExteriorVectors."""
    vectors = list(vectors)
    grades = {v.grade for v in vectors if v.terms}
    if len(grades) > 1:
        raise GradeError(f"mixed grades {sorted(grades)}")
    if grade is None:
        grade = grades.pop() if grades else (vectors[0].grade if vectors else 0)
    elif grades and grades != {grade}:
        raise GradeError(f"expected grade {grade}, got {sorted(grades)}")
    S = Subspace(grade)
    for v in vectors:
        S.add(v.terms)
    return S


def span_sum(*spaces: Subspace) -> Subspace:
    S = spaces[0].copy()
    for T in spaces[1:]:
        if T.dim and S.dim and T.grade != S.grade:
            raise GradeError("grade mismatch in sum")
        for r in T.rows.values():
            S.add(r)
    return S


def intersection(A: Subspace, B: Subspace) -> Subspace:
    """Zassenhaus: reduce rows (a | a) and (b | 0); rows left with a zero first half span A cap B."""
    if A.dim and B.dim and A.grade != B.grade:
        raise GradeError("grade mismatch in intersection")
    Z = Subspace(A.grade)
    for r in A.rows.values():
        v = {(0, k): c for k, c in r.items()}
        v.update({(1, k): c for k, c in r.items()})
        Z.add(v)
    for r in B.rows.values():
        Z.add({(0, k): c for k, c in r.items()})
    out = Subspace(A.grade)
    for p, row in Z.rows.items():
        if p[0] == 1:
            out.add({k[1]: c for k, c in row.items()})
    return out


def _actor_terms(L: LieAlgebra, actor, terms: dict) -> dict:
    if isinstance(actor, int):
        return ad_basis_terms(L, actor, terms)
    out = {}
    for i, c in actor.items():
        add_into(out, ad_basis_terms(L, i, terms), c)
    return out


def closure(L: LieAlgebra, generators: Subspace, actors, target_dim: int | None = None) -> Subspace:
    """Smallest subspace containing the generators and stable under ad(actors).

    actors are basis indices of g or sparse g-vectors.  Breadth-first: every
    vector that enlarged the span is pushed once, and its images under all
    actors are reduced against the span.  With target_dim, the iteration
    stops as soon as the span reaches that dimension.
    """
    actors = list(actors)
    S = generators.copy()
    queue = deque(dict(r) for r in S.rows.values())
    while queue:
        if target_dim is not None and S.dim >= target_dim:
            break
        w = queue.popleft()
        for a in actors:
            img = _actor_terms(L, a, w)
            if img and S.add(img) is not None:
                queue.append(img)
    return S


def is_stable(L: LieAlgebra, S: Subspace, actors) -> bool:
    for a in actors:
        for r in S.rows.values():
            img = _actor_terms(L, a, r)
            if img and not S.contains(img):
                return False
    return True


def ambient_keys(dim: int, k: int):
    return combinations(range(dim), k)


def _kernel_of_functionals(F: Subspace, keys) -> Subspace:
    """Common kernel, inside span(keys), of the functionals in F (reduced)."""
    out = Subspace(F.grade)
    rows, cols = F.rows, F._cols
    for f in keys:
        if f in rows:
            continue
        users = cols.get(f)
        if not users:
            out.rows[f] = {f: ONE}
            continue
        v = {f: ONE}
        for q in users:
            v[q] = -rows[q][f]
        out.add(v)
    return out


def orthogonal_complement(L: LieAlgebra, W: Subspace, k: int | None = None) -> Subspace:
    """W^perp in Lambda^k g for the extended Killing form."""
    k = W.grade if k is None else k
    P = pairing(L)
    F = Subspace(k)
    for r in W.rows.values():
        F.add(P.lower_terms(r))
    return _kernel_of_functionals(F, ambient_keys(L.dim, k))


def biggest_submodule_in(L: LieAlgebra, W: Subspace, actors) -> Subspace:
    """Largest ad(actors)-stable subspace of W, as closure(W^perp)^perp."""
    perp = orthogonal_complement(L, W)
    return orthogonal_complement(L, closure(L, perp, actors), W.grade)


def preimage_kernel(L: LieAlgebra, W: Subspace, actors, target: Subspace | None = None) -> Subspace:
    """{w in W : ad(a).w in target for all actors a}; target None means {0}."""
    basis = [W.rows[p] for p in W.pivots]
    Z = Subspace(W.grade)
    for i, b in enumerate(basis):
        v = {}
        for t, a in enumerate(actors):
            img = _actor_terms(L, a, b)
            if target is not None:
                img = target.reduce_terms(img)
            for key, c in img.items():
                v[(0, t, key)] = c
        v[(1, i)] = ONE
        Z.add(v)
    out = Subspace(W.grade)
    for p, row in Z.rows.items():
        if p[0] == 1:
            acc = {}
            for key, c in row.items():
                add_into(acc, basis[key[1]], c)
            out.add(acc)
    return out


def biggest_submodule_descending(L: LieAlgebra, W: Subspace, actors) -> Subspace:
    """Same space as biggest_submodule_in, by W <- {w in W : a.w in W}."""
    actors = list(actors)
    cur = W
    while True:
        nxt = preimage_kernel(L, cur, actors, target=cur)
        if nxt.dim == cur.dim:
            return cur
        cur = nxt


def u_invariants(L: LieAlgebra, W: Subspace) -> Subspace:
    """Vectors of W killed by every positive root vector."""
    return preimage_kernel(L, W, L.positive_indices)


def full_dimension(L: LieAlgebra, k: int) -> int:
    return dimension(L.dim, k)
