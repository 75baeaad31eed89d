from uvw import homotopy as ho
from uvw.catalog import load_catalog


def test_g_vectors_and_shifts():
    c = load_catalog("a2")
    A = c.algebra
    assert ho.shift_projective(A, 0).g_vector() == (-1, 0)
    assert ho.stalk_projective(A, 1).g_vector() == (0, 1)
    assert c.g[c.index("S2")] == (-1, 1)


def test_compatibility_is_symmetric_and_rigidity():
    c = load_catalog("a2-loop")
    for X in range(c.size):
        for Y in range(c.size):
            assert ho.compatibility(c.objects[X], c.objects[Y]) == c.compat[X][Y] == c.compat[Y][X]
    assert not ho.is_rigid(c.objects[c.index("S1")])
    assert ho.is_rigid(c.objects[c.index("P2")])


def test_shifted_projective_pairs():
    c = load_catalog("a2")
    P1, SP1 = c.index("P1"), c.index("SigmaP1")
    assert ho.hom_shift(c.objects[P1], c.objects[SP1]) + ho.hom_shift(c.objects[SP1], c.objects[P1]) == 1
