import copy
from itertools import product

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from liewedge.chevalley import (
    LieAlgebra,
    LieAlgebraError,
    algebra,
    build_algebra,
    cache_path,
    check_jacobi,
    dumps_brackets,
    jacobi_violations,
    loads_brackets,
)
from liewedge.rootsys import build_root_system, neg

SMALL = [("A", 1), ("A", 2), ("B", 2), ("G", 2), ("A", 3)]


def dense_trace(L, i, j):
    """tr(ad x_i ad x_j) by dense matrix products; independent of the stored form."""
    A, B = L.adjoint_matrix(i), L.adjoint_matrix(j)
    n = L.dim
    return sum(A[r][s] * B[s][r] for r in range(n) for s in range(n))


@pytest.mark.parametrize("case", SMALL)
def test_killing_matrix_is_trace_form(case):
    L = algebra(*case)
    for i in range(L.dim):
        for j in range(i, L.dim):
            assert L.killing_matrix[i][j] == dense_trace(L, i, j)


@pytest.mark.parametrize("case", SMALL + [("B", 3), ("C", 3), ("D", 4), ("F", 4)])
def test_root_vector_normalisation(case):
    L = algebra(*case)
    for a in L.rs.positive_roots:
        i, j = L.root_index(a), L.root_index(neg(a))
        assert L.killing_matrix[i][j] == 1
        for b in L.rs.roots:
            if b != neg(a):
                assert L.killing({i: 1}, {L.root_index(b): 1}) == 0


def test_A1_killing_matrix():
    L = algebra("A", 1)
    # basis x_-, h, x_+ ; kappa(h, h) = 8 for sl2
    assert [[int(c) for c in row] for row in L.killing_matrix] == [[0, 0, 1], [0, 8, 0], [1, 0, 0]]


@pytest.mark.parametrize("case", SMALL)
def test_antisymmetry_and_invariance(case):
    L = algebra(*case)
    n = L.dim
    for i, j in product(range(n), repeat=2):
        assert L.bracket({i: 1}, {j: 1}) == {k: -c for k, c in L.bracket({j: 1}, {i: 1}).items()}
    for i, j, k in product(range(n), repeat=3):
        lhs = L.killing(L.bracket({i: 1}, {j: 1}), {k: 1})
        rhs = -L.killing({j: 1}, L.bracket({i: 1}, {k: 1}))
        assert lhs == rhs


@pytest.mark.parametrize("case", SMALL + [("B", 3), ("C", 3)])
def test_jacobi_exhaustive(case):
    assert check_jacobi(algebra(*case)) == []


@pytest.mark.parametrize("case", SMALL)
def test_cartan_action_and_coroots(case):
    L = algebra(*case)
    rs = L.rs
    for a in rs.roots:
        xa = {L.root_index(a): 1}
        for m in range(rs.rank):
            h = {L.cartan_index(m + 1): 1}
            assert L.bracket(h, xa) == ({L.root_index(a): mpq(rs.evaluate(a, m))} if rs.evaluate(a, m) else {})
        # [x_a, x_-a] is a positive multiple of the coroot for positive a
        t = L.bracket(xa, {L.root_index(neg(a)): 1})
        H = L.coroot(a)
        ratio = {t[k] / H[k] for k in H}
        assert t.keys() == H.keys() and len(ratio) == 1
        # a(H_a) = 2
        assert L.root_value(a, H) == 2


def test_basis_order():
    L = algebra("B", 2)
    heights = [sum(L.basis_roots[i]) for i in L.negative_indices]
    assert heights == sorted(heights)  # negative heights ascend, i.e. x_-theta first
    assert L.basis_roots[0] == neg(L.rs.highest_root)
    assert all(L.is_cartan(i) for i in L.cartan_indices)
    assert [sum(L.basis_roots[i]) for i in L.positive_indices] == sorted(sum(a) for a in L.rs.positive_roots)


def test_corrupted_sign_is_detected():
    L = algebra("B", 2)
    br = copy.deepcopy(L.brackets)
    i, j = L.root_index((1, 0)), L.root_index((0, 1))
    k, c = next(iter(br[i][j].items()))
    br[i][j] = {k: -c}
    br[j][i] = {k: c}
    bad = LieAlgebra(L.rs, br, L.killing_matrix)
    assert check_jacobi(bad)


def test_bad_index_rejected(A2):
    with pytest.raises(LieAlgebraError):
        A2.bracket({99: 1}, {0: 1})


@pytest.mark.parametrize("case", [("A", 2), ("G", 2), ("F", 4)])
def test_cache_round_trip(case, tmp_path, monkeypatch):
    monkeypatch.setenv("LIE_SC_CACHE_DIR", str(tmp_path))
    rs = build_root_system(*case)
    L = build_algebra(rs, use_cache=True)
    path = cache_path(rs)
    assert path.parent == tmp_path and path.exists()
    text = path.read_text()
    assert text == dumps_brackets(rs, L.brackets)
    assert loads_brackets(rs, text) == L.brackets
    again = build_algebra(rs, use_cache=True)
    assert again.brackets == L.brackets and again.killing_matrix == L.killing_matrix


def test_cache_header_checked(tmp_path):
    rs = build_root_system("A", 2)
    with pytest.raises(LieAlgebraError):
        loads_brackets(rs, "lie-sc v0 A 2\n")
    with pytest.raises(LieAlgebraError):
        loads_brackets(rs, "")


vec = st.dictionaries(st.integers(0, 13), st.integers(-3, 3).filter(bool), max_size=4)


@given(vec, vec, vec)
def test_jacobi_on_random_vectors(x, y, z):
    L = algebra("G", 2)
    total = {}
    for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
        for k, v in L.bracket(a, L.bracket(b, c)).items():
            total[k] = total.get(k, 0) + v
    assert not any(total.values())


@given(vec, vec, vec)
def test_invariance_on_random_vectors(x, y, z):
    L = algebra("G", 2)
    assert L.killing(L.bracket(x, y), z) == -L.killing(y, L.bracket(x, z))


def test_sampled_jacobi_for_large_algebra():
    L = algebra("E", 6)
    assert jacobi_violations(L, [(0, 40, 77), (3, 5, 70)]) == []
    assert check_jacobi(L, samples=300) == []
