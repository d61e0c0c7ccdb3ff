from itertools import combinations
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from liewedge.chevalley import algebra
from liewedge.exterior import dimension, pairing
from liewedge.parabolic import (
    EXCEPTIONAL_TABLES,
    V_dimension_count,
    appendix_formulas,
    build_parabolic,
    graded_pieces,
    graded_pieces_3,
    maximal_data,
    maximal_levi_counts,
    mirror_3,
    mirror_5,
    mirror_10,
    omega_forms,
    parts_5,
    span_V,
    span_V_prime,
)
from liewedge.rootsys import build_root_system
from liewedge.submodule import span_sum

CASES = [("A", 2), ("B", 2), ("G", 2), ("A", 3), ("B", 3), ("C", 3), ("D", 4)]


def all_subsets(l):
    return [c for r in range(l + 1) for c in combinations(range(1, l + 1), r)]


@pytest.mark.parametrize("case", CASES)
def test_dimension_bookkeeping(case):
    L = algebra(*case)
    l = L.rank
    for X in all_subsets(l):
        pd = build_parabolic(L, X)
        assert pd.dim_z == l - len(X)
        assert pd.dim_d == sum(2 * n + len(c) for n, c in zip(pd.n_i, pd.components))
        assert L.dim == 2 * pd.d + pd.dim_z + pd.dim_d
        assert pd.d == L.rs.n_positive - pd.n_prime
        # E and d split the basis (z lives in the Cartan part next to the coroots of X)
        d_idx = {i for p in pd.d_parts for i in p}
        roots_E = set(pd.pu) | set(pd.pmu)
        assert not d_idx & roots_E
        assert len(d_idx) + len(roots_E) + pd.dim_z == L.dim


@pytest.mark.parametrize("case", CASES)
def test_centre_commutes_with_levi_and_is_orthogonal_to_d(case):
    L = algebra(*case)
    for X in all_subsets(L.rank):
        pd = build_parabolic(L, X)
        for z in pd.z:
            for i in pd.l_indices:
                assert not L.bracket(z, {i: 1})
            for part in pd.d_parts:
                for i in part:
                    assert L.killing(z, {i: 1}) == 0


def test_worked_examples():
    A2 = algebra("A", 2)
    pd = build_parabolic(A2, {1})
    (z,) = pd.z
    h1, h2 = A2.cartan_index(1), A2.cartan_index(2)
    assert z[h2] / z[h1] == 2  # z = h1 + 2 h2 up to scale
    md = maximal_data(A2, 2)
    assert md.Z == ((1, 0),) and md.Z_prime == () and md.Y == ((1, 1),)
    D4 = algebra("D", 4)
    assert build_parabolic(D4, {1, 3, 4}).d == 9
    A3 = algebra("A", 3)
    pd = build_parabolic(A3, {1, 3})
    assert span_V_prime(pd, 2).dim == 9
    assert maximal_data(A3, 2).Y[0] == (1, 1, 0)


@pytest.mark.parametrize("case", [("A", 2), ("B", 2), ("G", 2), ("A", 3)])
def test_V_dimension_matches_monomial_count(case):
    L = algebra(*case)
    for X in all_subsets(L.rank)[1:]:
        pd = build_parabolic(L, X)
        for k in range(1, 4):
            assert span_V(pd, k).dim == V_dimension_count(pd, k)


@pytest.mark.parametrize("case", [("A", 2), ("B", 2), ("G", 2)])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_graded_pieces_fill_the_exterior_power(case, k):
    L = algebra(*case)
    for X in all_subsets(2):
        pd = build_parabolic(L, X)
        for pieces in (graded_pieces_3(pd, k), graded_pieces(parts_5(pd), k)):
            total = span_sum(*[p.space for p in pieces])
            assert sum(p.dim for p in pieces) == total.dim == dimension(L.dim, k)
    for beta in (1, 2):
        pieces = graded_pieces(maximal_data(L, beta).parts, k)
        assert span_sum(*[p.space for p in pieces]).dim == dimension(L.dim, k)


@given(st.lists(st.integers(0, 4), min_size=10, max_size=10))
def test_mirrors_are_involutions(i):
    i = tuple(i)
    assert mirror_10(mirror_10(i)) == i
    assert mirror_3(mirror_3(i[:3])) == i[:3]
    assert mirror_5(mirror_5(i[:5])) == i[:5]
    assert mirror_10(i)[4:6] == i[4:6]


@pytest.mark.parametrize("case", [("A", 2), ("B", 2), ("G", 2), ("A", 3), ("B", 3), ("C", 3)])
def test_omega_forms_orthogonal(case):
    L = algebra(*case)
    P = pairing(L)
    for beta in range(1, L.rank + 1):
        md = maximal_data(L, beta)
        assert len(md.h_beta) == L.rank - 1
        for h in md.h_beta:
            assert L.killing(h, md.H_beta) == 0
        for alpha in md.Z:
            wp, w, c = omega_forms(L, beta, alpha)
            assert P(w, wp) == 0 and c != 0


def test_maximal_data_rejects_rank_one():
    with pytest.raises(ValueError):
        maximal_data(algebra("A", 1), 1)


def test_parse_subset_rejects_out_of_range():
    with pytest.raises(ValueError):
        build_parabolic(algebra("A", 2), {3})


def enumerate_split(T, l, s):
    rs = build_root_system(T, l)
    c = maximal_levi_counts(rs, s + 1)
    return c["n_i"], c["d"], rs.n_positive


@pytest.mark.parametrize("T", "ABCD")
def test_closed_forms_against_enumeration(T):
    lo = {"A": 3, "B": 3, "C": 3, "D": 5}[T]
    for l in range(lo, 13):
        hi = l - 4 if T == "D" else l - 2
        for s in range(1, hi + 1):
            f = appendix_formulas(T, l, s)
            n_i, d, n = enumerate_split(T, l, s)
            assert f.n == n and f.n1 == n_i[0]
            assert (f.n2_derivation, f.d_derivation) == (n_i[1], d)
            assert n - 2 * d - n_i[0] == f.poly_n1 or T == "D"
            if T != "D":
                assert f.n2 == n_i[1]


def test_type_D_statement_n2_differs():
    f = appendix_formulas("D", 6, 1)
    n_i, d, n = enumerate_split("D", 6, 1)
    assert n_i[1] == (6 - 1 - 1) * (6 - 1 - 2) == f.n2_derivation
    assert f.n2 == 16 != n_i[1]


def test_A5_s1_value():
    # n = 15, n1 = 1, n2 = 6, d = 8 so n - 2d - n1 = -2
    f = appendix_formulas("A", 5, 1)
    assert (f.n, f.n1, f.n2, f.d) == (15, 1, 6, 8)
    assert f.poly_n1 == -2


@pytest.mark.parametrize("key", sorted(EXCEPTIONAL_TABLES))
def test_exceptional_tables(key):
    rs = build_root_system(*key)
    rows = [maximal_levi_counts(rs, b) for b in range(1, rs.rank + 1)]
    dl, td = EXCEPTIONAL_TABLES[key]
    assert {r["dim_l"] for r in rows} == set(dl)
    assert {(r["dim_l"], r["two_d"]) for r in rows} == set(zip(dl, td))
    assert all(a + b == rs.dim for a, b in zip(dl, td))


def test_binomial_helper_consistency():
    assert dimension(14, 6) == comb(14, 6) == 3003
    assert dimension(5, 7) == 0
