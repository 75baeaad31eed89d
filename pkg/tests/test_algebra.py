import pytest

from uvw.algebra import Arrow, QuiverAlgebra, build_algebra, quotient_algebra
from uvw.errors import InfiniteDimensional, MalformedRelation


def test_path_algebra_dimensions():
    a3 = QuiverAlgebra(3, [Arrow("a", 0, 1), Arrow("b", 1, 2)])
    assert a3.dim == 6
    a3.check_associativity()
    rel = QuiverAlgebra(3, [Arrow("a", 0, 1), Arrow("b", 1, 2)], [[(1, ("a", "b"))]])
    assert rel.dim == 5


def test_truncated_loop():
    for d in range(2, 6):
        A = QuiverAlgebra(1, [Arrow("x", 0, 0)], [[(1, ("x",) * d)]])
        assert A.dim == d


def test_infinite_dimensional_rejected():
    with pytest.raises(InfiniteDimensional):
        QuiverAlgebra(1, [Arrow("x", 0, 0)])


def test_malformed_relations():
    with pytest.raises(MalformedRelation):
        QuiverAlgebra(2, [Arrow("a", 0, 1)], [[(1, ("a", "a"))]])
    with pytest.raises(MalformedRelation):
        QuiverAlgebra(2, [Arrow("a", 0, 1)], [[(1, ("z",))]])


def test_build_from_json_description():
    A = build_algebra({"vertices": 2, "arrows": [{"id": "x", "src": 1, "tgt": 1}, {"id": "a", "src": 1, "tgt": 2}],
                       "relations": [[{"path": ["x", "x"]}]]})
    assert A.n == 2 and A.dim == 5


def test_quotients_by_arrows_and_vertices():
    A = QuiverAlgebra(3, [Arrow("a", 0, 1), Arrow("b", 1, 2)])
    B = quotient_algebra(A, [[(1, ("a", "b"))]])
    assert B.dim == 5 and B.vertex_map == [0, 1, 2]
    C = quotient_algebra(A, ["a", "b"])
    assert C.dim == 3
    D = quotient_algebra(A, [{"vertex": 2}])
    assert D.n == 2 and D.vertex_map == [0, None, 1] and D.dim == 2
