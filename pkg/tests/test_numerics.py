import math

import mpmath
import numpy as np
import pytest
from scipy.special import beta, spence

from uvw import numerics as nm
from uvw.catalog import load_catalog
from uvw.errors import DomainError, NotConvergent
from uvw.reductions import jasso_match, quotient_catalog


def test_rogers_special_values():
    assert nm.rogers_dilog(1) == pytest.approx(math.pi ** 2 / 6, abs=1e-15)
    assert nm.rogers_dilog(0.5) == pytest.approx(math.pi ** 2 / 12, abs=1e-15)
    assert nm.rogers_dilog(0) == 0.0
    with pytest.raises(DomainError):
        nm.rogers_dilog(1.5)


def test_rogers_reflection_on_grid():
    for x in np.linspace(0.01, 0.99, 99):
        assert abs(nm.rogers_dilog(x) + nm.rogers_dilog(1 - x) - math.pi ** 2 / 6) < 1e-12


def test_rogers_against_independent_implementations():
    for x in [1e-9, 1e-4, 0.1, 0.3, 0.5, 0.77, 0.999, 1 - 1e-9]:
        ref = float(mpmath.polylog(2, x) + mpmath.log(x) * mpmath.log(1 - x) / 2)
        assert abs(nm.rogers_dilog(x) - ref) < 1e-12
        assert abs(nm.rogers_dilog(x) - (spence(1 - x) + math.log(x) * math.log1p(-x) / 2)) < 1e-12


@pytest.mark.parametrize("name", ["loop2", "a2", "a2-loop", "pelly-3"])
def test_dilogarithm_identity(name):
    assert nm.dilog_identity_check(load_catalog(name), trials=100, seed=7) < 1e-9


def test_dilogarithm_near_the_origin():
    c = load_catalog("a2")
    assert nm.dilog_identity_check(c, points=[[1e-8, 1e-8]]) < 1e-9


def test_positivity_at_one():
    c = load_catalog("a2")
    assert c.fpoly[c.index("P2")].evaluate([1, 1]) == 3
    assert nm.positivity_scan(load_catalog("a2-loop"), trials=1000).ok


@pytest.mark.parametrize("a,b", [(1, 1), (0.7, 0.9), (2, 3), (0.25, 4.0)])
def test_a1_integral_is_beta(a, b):
    c = load_catalog("a1")
    assert nm.amplitude(nm.AmplitudeSpec(c, {"P1": a, "SigmaP1": b})) == pytest.approx(beta(a, b), rel=1e-9)


def test_box_and_fan_quadrature_agree():
    c = load_catalog("a2-loop")
    x = [0.9 + 0.1 * k for k in range(c.size)]
    fan = nm.amplitude(nm.AmplitudeSpec(c, x))
    box = nm.amplitude(nm.AmplitudeSpec(c, x, method="box", panels=4, tol=1e-4))
    assert abs(fan - box) < 1e-6 * fan


def test_divergence_is_reported():
    c = load_catalog("a2")
    with pytest.raises(NotConvergent):
        nm.amplitude(nm.AmplitudeSpec(c, [0.0, 1, 1, 1, 1]))
    with pytest.raises(NotConvergent):
        nm.amplitude(nm.AmplitudeSpec(load_catalog("a1"), [0.1, 0.1], method="box"))


def test_empty_catalog_integral_is_one():
    class Empty:
        n = 0
    assert nm.amplitude(nm.AmplitudeSpec(Empty(), [])) == 1.0


def test_residue_at_a_regular_point_vanishes():
    src, tgt = load_catalog("a2"), load_catalog("a1")
    rep = nm.residue_check(src, "P1", jasso_match(src, "P1", tgt), [[0.7, 0.9]], at=5.0, tol=1e-3)
    assert rep.ok


def test_splitting_of_loop2():
    l2, a1 = load_catalog("loop2"), load_catalog("a1")
    qc = quotient_catalog(l2, ["x"], tgt=a1)
    rep = nm.splitting_check(l2, qc, [0.7, 1.3])
    assert rep.ok
    assert rep.entries[-1]["detail"]["source"] == pytest.approx(beta(0.7, 1.3), rel=1e-9)


def test_swap_symmetry_of_preprojective():
    c = load_catalog("preproj-a2")
    assert nm.automorphism_check(c, [1, 0], [0.5 + 0.1 * k for k in range(c.size)]).ok
