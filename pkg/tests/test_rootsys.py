from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from liewedge.exterior import det
from liewedge.rootsys import (
    RootSystemError,
    add,
    build_root_system,
    check_type,
    connected_components,
    extremities,
    height,
    neg,
    positive_root_count,
    root_subsystem,
)

VALID = [("A", l) for l in range(1, 9)] + [("B", l) for l in range(2, 8)] + [("C", l) for l in range(3, 8)] \
    + [("D", l) for l in range(4, 9)] + [("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)]

# Lie algebra dimensions from the standard tables
DIMS = {("A", 2): 8, ("A", 3): 15, ("B", 2): 10, ("B", 3): 21, ("C", 3): 21, ("D", 4): 28,
        ("G", 2): 14, ("F", 4): 52, ("E", 6): 78, ("E", 7): 133, ("E", 8): 248}

HIGHEST = {
    ("A", 4): (1, 1, 1, 1),
    ("B", 4): (1, 2, 2, 2),
    ("C", 4): (2, 2, 2, 1),
    ("D", 5): (1, 2, 2, 1, 1),
    ("G", 2): (3, 2),
    ("F", 4): (2, 3, 4, 2),
    ("E", 6): (1, 2, 2, 3, 2, 1),
    ("E", 7): (2, 2, 3, 4, 3, 2, 1),
    ("E", 8): (2, 3, 4, 6, 5, 4, 3, 2),
}

# det of the Cartan matrix = order of the fundamental group
CARTAN_DET = {"B": 2, "C": 2, "D": 4, "F": 1, "G": 1}


@pytest.mark.parametrize("T,l", VALID)
def test_positive_root_count_matches_closed_form(T, l):
    rs = build_root_system(T, l)
    assert rs.n_positive == positive_root_count(T, l)
    assert len(set(rs.positive_roots)) == rs.n_positive


@pytest.mark.parametrize("T,l", sorted(DIMS))
def test_dimension(T, l):
    assert build_root_system(T, l).dim == DIMS[(T, l)]


@pytest.mark.parametrize("T,l", sorted(HIGHEST))
def test_highest_root(T, l):
    assert build_root_system(T, l).highest_root == HIGHEST[(T, l)]


@pytest.mark.parametrize("T,l", VALID)
def test_cartan_determinant(T, l):
    rs = build_root_system(T, l)
    expected = {"A": l + 1, "E": 9 - l}.get(T, CARTAN_DET.get(T))
    assert det(rs.cartan) == expected
    assert all(rs.cartan[i][i] == 2 for i in range(l))


def test_cartan_convention_B2():
    # beta_1 long, beta_2 short: <beta_1, beta_2^vee> = -2
    rs = build_root_system("B", 2)
    assert rs.cartan[0][1] == -2 and rs.cartan[1][0] == -1


@pytest.mark.parametrize("T,l", VALID)
def test_simple_roots_come_first_and_heights_ascend(T, l):
    rs = build_root_system(T, l)
    assert rs.simple_roots == tuple(tuple(int(i == j) for j in range(l)) for i in range(l))
    hs = [height(a) for a in rs.positive_roots]
    assert hs == sorted(hs)


@pytest.mark.parametrize("bad", [("B", 1), ("C", 2), ("D", 3), ("E", 5), ("E", 9), ("F", 3), ("G", 3), ("Z", 2), ("A", 0)])
def test_invalid_types_rejected(bad):
    with pytest.raises(RootSystemError):
        check_type(*bad)
    with pytest.raises(RootSystemError):
        build_root_system(*bad)


@pytest.mark.parametrize("T,l,count", [("A", 1, 1), ("A", 5, 2), ("B", 3, 2), ("G", 2, 2), ("F", 4, 2),
                                       ("D", 4, 3), ("D", 6, 3), ("E", 6, 3), ("E", 8, 3)])
def test_extremities(T, l, count):
    assert len(extremities(build_root_system(T, l))) == count


def test_components():
    A3 = build_root_system("A", 3)
    assert connected_components(A3, {1, 3}) == [frozenset({1}), frozenset({3})]
    D4 = build_root_system("D", 4)
    comps = connected_components(D4, {1, 3, 4})
    assert len(comps) == 3
    assert len(root_subsystem(D4, {1, 3, 4})) == 3


@given(st.sampled_from(VALID), st.data())
def test_reflections_permute_roots(case, data):
    rs = build_root_system(*case)
    i = data.draw(st.integers(0, rs.rank - 1))
    b = rs.simple_roots[i]
    for a in rs.roots:
        c = rs.pairing(a, b)
        img = tuple(x - c * y for x, y in zip(a, b))
        assert rs.is_root(img)


@given(st.sampled_from(VALID), st.data())
def test_root_strings_unbroken(case, data):
    # a + t b is a root for t in [-p, q] with p - q = <a, b^vee>
    rs = build_root_system(*case)
    a = data.draw(st.sampled_from(rs.roots))
    b = data.draw(st.sampled_from(rs.roots))
    if a in (b, neg(b)):
        return
    p = 0
    while rs.is_root(tuple(x - (p + 1) * y for x, y in zip(a, b))):
        p += 1
    q = 0
    while rs.is_root(tuple(x + (q + 1) * y for x, y in zip(a, b))):
        q += 1
    assert p - q == rs.pairing(a, b)
    assert p + q <= 3


@given(st.sampled_from(VALID), st.data())
def test_roots_sign_coherent_and_norms(case, data):
    rs = build_root_system(*case)
    a = data.draw(st.sampled_from(rs.roots))
    assert all(c >= 0 for c in a) or all(c <= 0 for c in a)
    ratio = rs.norm2(rs.highest_root) / rs.norm2(a)
    assert ratio in (Fraction(1), Fraction(2), Fraction(3))
    assert add(a, neg(a)) == (0,) * rs.rank
