import pytest

from uvw import equations as eqn
from uvw.catalog import load_catalog
from uvw.poly import Poly, RatFn


def test_a2_u_equations_by_hand():
    c = load_catalog("a2")
    u = {k: Poly.var(c.uvars, c.index(k)) for k in c.names}
    assert eqn.u_equation(c, "P1") + 1 == u["P1"] + u["S2"] * u["SigmaP1"]
    assert eqn.u_equation(c, "S2") + 1 == u["S2"] + u["P1"] * u["SigmaP2"]


def test_v_of_a2_projective():
    c = load_catalog("a2")
    y1, y2 = (Poly.var(c.yvars, i) for i in range(2))
    one = Poly.one(c.yvars)
    assert eqn.v_rational(c, "P2") == RatFn(one + y1, one + y1 + y1 * y2)


@pytest.mark.parametrize("name", ["a3", "a2-loop", "loop4", "pelly-3"])
def test_psi_reconstruction_and_expansions(name):
    c = load_catalog(name)
    for M in c.module_idx:
        assert eqn.fhat_via_psi(c, M) == eqn.fhat(c, M)
        assert eqn.expansion_identities_check(c, M)


@pytest.mark.parametrize("name", ["a2", "preproj-a2", "a2-loop", "loop3"])
def test_exchange_relations(name):
    c = load_catalog(name)
    assert all(eqn.exchange_identity_check(c, X, seed=3) for X in range(c.size))


def test_parser_reads_fractions_and_powers():
    c = load_catalog("a2-loop")
    k, r = eqn.parse_definition(r"v_{\Sigma P_1} = \frac{y_1^{2}y_2}{(1+y_1)^2}", c, "y")
    assert c.names[k] == "SigmaP1"
    y1, y2 = (Poly.var(c.yvars, i) for i in range(2))
    assert r == RatFn(y1 * y1 * y2, (1 + y1) * (1 + y1))
    r = eqn.parse_equation("u_{S_1}^2 + u_{12}u_{112} = 1", c)
    assert r.num == Poly.var(c.uvars, c.index("S1"), 2) + \
        Poly.var(c.uvars, c.index("12")) * Poly.var(c.uvars, c.index("112")) - 1


def test_emitters_are_deterministic():
    c = load_catalog("a3")
    text = eqn.emit(c, "all", "text")
    assert text == eqn.emit(load_catalog("a3", use_cache=False), "all", "text")
    assert text.count("\n") == 9 + 6 + 9
    doc = eqn.emit(c, "u", "json")
    assert set(doc["u"]) == set(c.names) and doc["hash"] == c.hash()
    assert r"\Sigma P_1" in eqn.emit(c, "fhat", "latex")


def test_rigid_variables_do_not_divide():
    for name in ("a2-loop", "loop5", "preproj-a2"):
        assert eqn.rigid_divisibility(load_catalog(name)) == []
    c = load_catalog("a2-loop")
    assert eqn.divides(c, "S1", "P1")
