import pytest

from uvw import grassmann as gr
from uvw import modules as md
from uvw.catalog import load_catalog


def test_counts_over_small_fields():
    c = load_catalog("a2")
    P2 = md.projective_module(c.algebra, 1)
    assert gr.count_submodules_fq(P2, (1, 0), 3) == 1
    assert gr.count_submodules_fq(P2, (0, 1), 3) == 0
    assert gr.euler_characteristics(P2) == {(0, 0): 1, (1, 0): 1, (1, 1): 1}


def test_f_polynomial_at_one():
    c = load_catalog("a2")
    assert c.fpoly[c.index("P2")].evaluate([1, 1]) == 3


@pytest.mark.parametrize("name", ["a3", "a2-loop", "loop4", "preproj-a2"])
def test_f_polynomials_have_nonnegative_coefficients(name):
    c = load_catalog(name)
    for M in c.module_idx:
        assert c.fpoly[M].coefficients_nonnegative()
        assert c.fpoly[M].const_term() == 1


def test_coefficient_two_appears_for_the_loop():
    c = load_catalog("a2-loop")
    assert 2 in c.fpoly[c.index("I1")].terms.values()
