from fractions import Fraction

from hypothesis import given, settings, strategies as st

from uvw import linalg as la


def _m(rows):
    return [[Fraction(x) for x in r] for r in rows]


def test_rank_nullspace_and_solve():
    a = _m([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert la.rank(a, 3) == 2
    ns = la.nullspace(a, 3)
    assert len(ns) == 1
    assert all(sum(r[i] * ns[0][i] for i in range(3)) == 0 for r in a)


def test_det_and_inverse():
    a = _m([[2, 1], [7, 4]])
    assert la.det(a) == 1
    inv = la.inverse(a)
    assert la.matmul(a, inv) == la.identity(2)


def test_intersection_of_subspaces():
    u = _m([[1, 0, 0], [0, 1, 0]])
    w = _m([[0, 1, 0], [0, 0, 1]])
    assert la.rank(la.intersect(u, w, 3), 3) == 1


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=9, max_size=9))
def test_inverse_roundtrip(entries):
    a = _m([entries[0:3], entries[3:6], entries[6:9]])
    if la.det(a) == 0:
        assert la.rank(a, 3) < 3
        return
    assert la.matmul(la.inverse(a), a) == la.identity(3)
    assert la.det(la.inverse(a)) == 1 / la.det(a)
