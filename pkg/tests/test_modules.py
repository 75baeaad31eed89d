from uvw import modules as md
from uvw.algebra import Arrow, QuiverAlgebra


def _a2():
    return QuiverAlgebra(2, [Arrow("a", 0, 1)])


def test_projective_injective_simple():
    A = _a2()
    assert md.projective_module(A, 0).dims == (1, 0)
    assert md.projective_module(A, 1).dims == (1, 1)
    assert md.injective_module(A, 0).dims == (1, 1)
    assert md.simple_module(A, 1).dims == (0, 1)
    for M in (md.projective_module(A, 1), md.injective_module(A, 0)):
        assert M.check_relations()


def test_hom_dimensions_and_tops():
    A = _a2()
    P2, S1, S2 = md.projective_module(A, 1), md.simple_module(A, 0), md.simple_module(A, 1)
    assert md.hom_dim(P2, S2) == 1
    assert md.hom_dim(P2, S1) == 0
    assert md.hom_dim(S2, P2) == 0
    assert md.top(P2)[0].dims == (0, 1)
    assert md.radical(P2)[0].dims == (1, 0)


def test_translate_of_simple():
    A = _a2()
    assert md.tau(md.simple_module(A, 1)).dims == (1, 0)
    assert md.tau(md.projective_module(A, 1)).is_zero()


def test_decomposition_and_isomorphism():
    A = _a2()
    P2, S1 = md.projective_module(A, 1), md.simple_module(A, 0)
    parts = md.decompose(md.direct_sum([P2, S1, S1]))
    assert sorted((M.dims, m) for M, m in parts) == [((1, 0), 2), ((1, 1), 1)]
    assert md.is_indecomposable(P2)
    assert not md.is_indecomposable(md.direct_sum([S1, S1]))
    assert md.is_isomorphic(md.projective_module(A, 0), S1)


def test_minimal_presentation_recovers_the_module():
    A = _a2()
    X = md.min_presentation(md.simple_module(A, 1))
    assert X.g_vector() == (-1, 1)
    assert md.is_isomorphic(X.h0(), md.simple_module(A, 1))
