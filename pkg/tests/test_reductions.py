import pytest

from uvw import reductions as rd
from uvw.catalog import load_catalog
from uvw.errors import MatchIncomplete


def test_jasso_map_of_the_loop_example():
    src, tgt = load_catalog("a2-loop"), load_catalog("loop2")
    rmap = rd.jasso_match(src, "P2", tgt)
    named = {src.names[a]: tgt.names[b] for a, b in rmap.bijection.items()}
    assert named == {"P1": "P1", "I1": "SigmaP1", "112": "S1"}
    assert rd.jasso_substitution_check(rmap).ok


def test_jasso_needs_matching_target():
    with pytest.raises(MatchIncomplete):
        rd.jasso_match(load_catalog("a3"), "P1", load_catalog("a1"))


def test_quotient_of_a3_by_composite():
    a3, a3r = load_catalog("a3"), load_catalog("a3-rel")
    qc = rd.quotient_catalog(a3, [[(1, ("a", "b"))]], tgt=a3r)
    rep, phi = rd.quotient_map_check(a3, qc)
    assert rep.ok
    assert phi.images[qc.index("P3")] == {a3.index("P3"): 1, a3.index("I2"): 1}


def test_killing_a_vertex():
    a2 = load_catalog("a2")
    qc = rd.quotient_catalog(a2, [{"vertex": 2}])
    assert qc.n == 1 and qc.size == 2
    assert rd.quotient_map_check(a2, qc)[0].ok


def test_tensor_quotient_splits_simple():
    a2 = load_catalog("a2")
    qc = rd.quotient_catalog(a2, ["a"])
    mult = rd.decompose_complex(qc, rd.tensor_quotient(a2.objects[a2.index("S2")], qc.algebra))
    assert sorted(qc.names[k] for k in mult) == ["P2", "SigmaP1"]


def test_functoriality_through_relation():
    a3, a3r = load_catalog("a3"), load_catalog("a3-rel")
    assert rd.functoriality_check(a3, [[(1, ("a", "b"))]], ["a", "b"], mid=a3r).ok


@pytest.mark.parametrize("n", [2, 3, 4])
def test_radical_square_zero_pattern(n):
    assert rd.pelly_pattern_check(n).ok
