from itertools import combinations, permutations

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from liewedge.chevalley import algebra
from liewedge.exterior import (
    ExteriorVector,
    GradeError,
    ad_action,
    det,
    dimension,
    gram,
    invariance_check,
    merge_sign,
    pairing,
    sort_sign,
    wedge,
)
from liewedge.submodule import Subspace


def parity(seq):
    """Sign of the permutation sorting seq, by counting cycles."""
    order = sorted(range(len(seq)), key=lambda i: seq[i])
    seen, sign = set(), 1
    for i in range(len(seq)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = order[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def leibniz_det(M):
    n = len(M)
    total = mpq(0)
    for p in permutations(range(n)):
        term = mpq(parity(p))
        for r in range(n):
            term *= M[r][p[r]]
        total += term
    return total


@given(st.lists(st.integers(0, 30), max_size=7))
def test_sort_sign_matches_permutation_parity(idx):
    s, key = sort_sign(tuple(idx))
    if len(set(idx)) < len(idx):
        assert s == 0
    else:
        assert s == parity(idx) and key == tuple(sorted(idx))


@given(st.sets(st.integers(0, 20), max_size=5), st.sets(st.integers(0, 20), max_size=5))
def test_merge_sign_agrees_with_sort_sign(a, b):
    a, b = tuple(sorted(a)), tuple(sorted(b))
    assert merge_sign(a, b) == sort_sign(a + b)


@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=4))
def test_det_against_leibniz(rows):
    n = len(rows)
    M = [r[:n] for r in rows]
    assert det(M) == leibniz_det(M)


DIM = 14  # G2


def vectors(grade):
    keys = st.lists(st.integers(0, DIM - 1), min_size=grade, max_size=grade, unique=True).map(lambda k: tuple(sorted(k)))
    return st.dictionaries(keys, st.integers(-4, 4).filter(bool), max_size=3).map(lambda t: ExteriorVector(grade, t))


g_elems = st.dictionaries(st.integers(0, DIM - 1), st.integers(-3, 3).filter(bool), min_size=1, max_size=3)


@given(vectors(1), vectors(2), vectors(2))
def test_wedge_associative_and_graded_commutative(u, v, w):
    assert wedge(wedge(u, v), w) == wedge(u, wedge(v, w))
    assert wedge(u, v) == wedge(v, u)  # (-1)^{1*2} = 1
    assert wedge(u, u) == ExteriorVector(2)
    p = wedge(u, w)
    assert wedge(p, v) == wedge(v, p)  # (-1)^{3*2}


@given(vectors(1), vectors(1))
def test_wedge_antisymmetric_in_degree_one(u, v):
    assert wedge(u, v) == -wedge(v, u)


@given(g_elems, vectors(2), vectors(1))
def test_adjoint_action_is_a_derivation(x, u, v):
    L = algebra("G", 2)
    lhs = ad_action(L, x, wedge(u, v))
    rhs = wedge(ad_action(L, x, u), v) + wedge(u, ad_action(L, x, v))
    assert lhs == rhs


@given(g_elems, g_elems, vectors(2))
def test_adjoint_action_is_a_representation(x, y, w):
    L = algebra("G", 2)
    lhs = ad_action(L, L.bracket(x, y), w)
    rhs = ad_action(L, x, ad_action(L, y, w)) - ad_action(L, y, ad_action(L, x, w))
    assert lhs == rhs


@given(g_elems, vectors(3), vectors(3))
def test_extended_form_is_invariant(x, w1, w2):
    L = algebra("G", 2)
    a, b = invariance_check(L, x, w1, w2)
    assert a == b


@given(vectors(3), vectors(3))
def test_pairing_matches_minor_definition(w1, w2):
    L = algebra("G", 2)
    K = L.killing_matrix
    expected = sum(
        (c1 * c2 * leibniz_det([[K[a][b] for b in J] for a in I])
         for I, c1 in w1.terms.items() for J, c2 in w2.terms.items()),
        mpq(0),
    )
    assert gram(L, w1, w2) == expected
    assert gram(L, w1, w2) == gram(L, w2, w1)


def test_two_by_two_example():
    L = algebra("A", 2)
    a = L.rs.highest_root
    w = ExteriorVector.monomial([L.root_index(a), L.root_index(tuple(-c for c in a))])
    assert gram(L, w, w) == -1


def test_grade_mismatch():
    L = algebra("A", 1)
    with pytest.raises(GradeError):
        gram(L, ExteriorVector.monomial([0]), ExteriorVector.monomial([0, 1]))
    with pytest.raises(GradeError):
        ExteriorVector(2, {(0,): 1})
    with pytest.raises(GradeError):
        ExteriorVector.monomial([0]) + ExteriorVector.monomial([0, 1])


def test_monomial_sign_and_repeat():
    assert ExteriorVector.monomial([3, 1]) == -ExteriorVector.monomial([1, 3])
    assert not ExteriorVector.monomial([2, 2])


def gram_rank(L, k):
    P = pairing(L)
    S = Subspace(k)
    for I in combinations(range(L.dim), k):
        S.add(P.lower_terms({I: mpq(1)}))
    return S.dim


@pytest.mark.parametrize("case,k", [(("A", 1), 2), (("A", 2), 3), (("B", 2), 2), (("G", 2), 3)])
def test_gram_nondegenerate_small(case, k):
    L = algebra(*case)
    assert gram_rank(L, k) == dimension(L.dim, k)


def test_gram_dense_oracle_A1():
    # full Gram matrix of Lambda^2 sl2 against the minor formula by brute force
    L = algebra("A", 1)
    keys = list(combinations(range(3), 2))
    K = L.killing_matrix
    G = [[leibniz_det([[K[a][b] for b in J] for a in I]) for J in keys] for I in keys]
    assert leibniz_det(G) != 0
    P = pairing(L)
    assert all(P.basis_pair(I, J) == G[r][c] for r, I in enumerate(keys) for c, J in enumerate(keys))
