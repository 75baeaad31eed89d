import pytest

from uvw import fan as fn
from uvw.catalog import load_catalog

CONES = {"a2": 5, "a3": 14, "a3-rel": 12, "preproj-a2": 6, "a2-loop": 6, "pelly-4": 29, "grid-3-6": 42}


@pytest.mark.parametrize("name,count", sorted(CONES.items()))
def test_max_cone_counts(name, count):
    fan = fn.build_fan(load_catalog(name), samples=2000)
    assert len(fan.cones) == count


def test_faces_meet_properly_and_strata():
    c = load_catalog("a3")
    fan = fn.build_fan(c)
    bad, checked = fn.pairwise_faces(fan)
    assert not bad and checked > 0
    assert fn.stratum_counts(fan) == [1, 9, 21, 14]


def test_locate_and_multiplicities():
    c = load_catalog("a2")
    fan = fn.build_fan(c)
    mult = fn.generic_multiplicities(fan, (3, -5))
    assert mult == {c.index("P1"): 3, c.index("SigmaP2"): 5}


@pytest.mark.parametrize("name", ["a2", "a3", "a2-loop", "preproj-a2"])
def test_newton_polytope_normal_fan(name):
    c = load_catalog(name)
    assert fn.newton_fan_check(c, fn.build_fan(c)).ok


def test_polymake_output():
    text = fn.build_fan(load_catalog("a2")).polymake()
    assert text.startswith("RAYS") and "MAXIMAL_CONES" in text
