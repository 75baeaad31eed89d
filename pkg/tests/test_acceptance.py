"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line that is repeated in the pytest summary.
Reference equations live in data/reference_equations.json as LaTeX strings.
"""
import time

import pytest
from scipy.special import beta

from uvw import equations as eqn
from uvw import fan as fn
from uvw import numerics as nm
from uvw import reductions as rd
from uvw.catalog import load_catalog
from uvw.errors import KnittingStuck
from uvw.poly import Poly, RatFn

BUILTINS = ["a1", "a2", "a3", "a3-rel", "preproj-a2", "a2-loop"] + \
    [f"loop{d}" for d in range(2, 10)] + [f"pelly-{n}" for n in range(2, 7)] + ["grid-3-6"]


def _fresh(name):
    return load_catalog(name, use_cache=False)


def _match_reference(c, ref):
    """Counts and mismatches of the reference u-equations, F-hats and v-formulas."""
    bad = []
    mine_u = {eqn.u_equation(c, X) for X in range(c.size)}
    got_u = set()
    for text in ref["u"]:
        r = eqn.parse_equation(text, c)
        got_u.add(r.num if r.den == 1 else None)
    if got_u != mine_u:
        bad.append("u-equations")
    for text in ref["fhat"]:
        k, r = eqn.parse_definition(text, c)
        if not (r.den == 1 and r.num == eqn.fhat(c, k)):
            bad.append(f"F-hat {c.names[k]}")
    for text in ref["v"]:
        k, r = eqn.parse_definition(text, c, "y")
        if not r == eqn.v_rational(c, k):
            bad.append(f"v {c.names[k]}")
    return bad


def _golden(c, ref, counts, modules=None):
    """Reference equations match, with ``counts`` = (u, F-hat, v) strings listed
    (v may be None) and the catalog having counts[0] objects and ``modules``
    modules (default counts[1])."""
    want_u, want_f, want_v = counts
    modules = want_f if modules is None else modules
    bad = _match_reference(c, ref)
    sizes = (len(ref["u"]), len(ref["fhat"]), len(ref["v"]))
    if sizes[0] != want_u or sizes[1] != want_f or (want_v is not None and sizes[2] != want_v):
        bad.append(f"reference counts {sizes}")
    if c.size != want_u or len(c.module_idx) != modules:
        bad.append(f"catalog has {c.size} objects and {len(c.module_idx)} modules")
    return bad


def test_criterion_01_a2_equations(reference, criterion):
    t = time.perf_counter()
    c = _fresh("a2")
    bad = _golden(c, reference["a2"], (5, 3, 5))
    dt = time.perf_counter() - t
    criterion(1, "A2: 5 u-equations, 3 F-hats, 5 v-formulas", not bad and dt < 1.0,
              f"{dt:.2f}s" + (f" mismatches {bad}" if bad else ""))


def test_criterion_02_preprojective_a2_equations(reference, criterion):
    t = time.perf_counter()
    c = _fresh("preproj-a2")
    bad = _golden(c, reference["preproj-a2"], (6, 4, 6))
    y1, y2 = (Poly.var(c.yvars, i) for i in range(2))
    one = Poly.one(c.yvars)
    if eqn.v_rational(c, "S1") != RatFn(one + y2 + y1 * y2, (one + y1) * (one + y2)):
        bad.append("v_S1")
    dt = time.perf_counter() - t
    criterion(2, "preprojective A2: 6 u-equations, 4 F-hats, v-formulas", not bad and dt < 1.0,
              f"{dt:.2f}s" + (f" mismatches {bad}" if bad else ""))


def test_criterion_03_a3_and_relation(reference, criterion):
    a3, a3r = _fresh("a3"), _fresh("a3-rel")
    bad = _golden(a3, reference["a3"], (9, 6, None)) + _golden(a3r, reference["a3-rel"], (8, 5, None))
    qc = rd.quotient_catalog(a3, [[(1, ("a", "b"))]], tgt=a3r)
    rep, phi = rd.quotient_map_check(a3, qc)
    if not rep.ok:
        bad.append(f"quotient check {[e['name'] for e in rep.failures()]}")
    # v-bar_P3 = v_P3 v_I2 and v-bar_SigmaP1 = v_I2 v_SigmaP1 as rational functions
    for K, factors in (("P3", ("P3", "I2")), ("SigmaP1", ("I2", "SigmaP1"))):
        img = phi.images[qc.index(K)]
        if img != {a3.index(f): 1 for f in factors}:
            bad.append(f"image of {K}")
        prod = eqn.v_rational(a3, factors[0]) * eqn.v_rational(a3, factors[1])
        if not eqn.v_rational(qc, K) == prod:
            bad.append(f"v-bar {K}")
    criterion(3, "A3 (9 objects) and A3 with ba = 0 (8 objects), quotient products",
              not bad, f"mismatches {bad}" if bad else "")


def test_criterion_04_a2_loop(reference, criterion):
    t = time.perf_counter()
    c = _fresh("a2-loop")
    bad = _golden(c, reference["a2-loop"], (9, 7, None))
    F = eqn.fhat(c, "I1")
    if 2 not in F.terms.values():
        bad.append("coefficient 2 in F-hat I1")
    squared = {c.names[k] for k in range(c.size)
               if any(e[k] == 2 for X in range(c.size) for e in eqn.u_equation(c, X).terms)
               or any(e[k] == 2 for M in c.module_idx for e in eqn.fhat(c, M).terms)}
    for name in ("S1", "S2"):
        if name not in squared:
            bad.append(f"square of u_{name}")
    if not eqn.divides(c, "S1", "P1"):
        bad.append("u_S1 does not divide F-hat P1")
    rigid = eqn.rigid_divisibility(c)
    if rigid:
        bad.append(f"rigid divisors {rigid}")
    dt = time.perf_counter() - t
    criterion(4, "A2 with loop: 9 u-equations, 7 F-hats, divisibility", not bad and dt < 10.0,
              f"{dt:.2f}s" + (f" mismatches {bad}" if bad else ""))


def _pelly_closed_forms(n):
    c = load_catalog(f"pelly-{n}")
    one = Poly.one(c.yvars)

    def idx(kind, i):
        top = n - 1 if kind == "P" else n
        if not 1 <= i <= top:
            return None
        return c.index(f"SigmaP{i}" if kind == "SP" else f"{kind}{i}")

    def mono(*factors):
        e = [0] * c.size
        for f in factors:
            k = idx(*f)
            if k is not None:
                e[k] += 1
        return Poly.monomial(c.uvars, e)

    def F(kind, i):
        k = idx(kind, i)
        return one if k is None else c.fpoly[k]

    bad = []
    for i in range(1, n):
        if eqn.u_equation(c, idx("P", i)) + 1 != mono(("P", i)) + mono(("S", i - 1), ("SP", i), ("SP", i + 1)):
            bad.append(f"u P{i}")
        want = mono(("P", i), ("P", i + 1), ("S", i + 1)) + mono(("SP", i + 1), ("S", i), ("P", i)) + \
            mono(("SP", i + 1), ("SP", i), ("S", i - 1))
        if eqn.fhat(c, idx("P", i)) != want:
            bad.append(f"F-hat P{i}")
        if not eqn.v_rational(c, idx("P", i)) == RatFn(F("S", i + 1), F("P", i)):
            bad.append(f"v P{i}")
    for i in range(1, n + 1):
        if eqn.u_equation(c, idx("SP", i)) + 1 != mono(("SP", i)) + mono(("P", i - 1), ("P", i), ("S", i)):
            bad.append(f"u SigmaP{i}")
        want = mono(("S", i)) + mono(("P", i + 1), ("S", i + 1), ("SP", i), ("S", i - 1))
        if eqn.u_equation(c, idx("S", i)) + 1 != want:
            bad.append(f"u S{i}")
        if eqn.fhat(c, idx("S", i)) != mono(("P", i), ("S", i)) + mono(("SP", i), ("S", i - 1)):
            bad.append(f"F-hat S{i}")
        y = Poly.var(c.yvars, i - 1)
        v_sp = RatFn(y, one + y) if i == 1 else RatFn(y * F("S", i - 1), F("P", i - 1))
        if not eqn.v_rational(c, idx("SP", i)) == v_sp:
            bad.append(f"v SigmaP{i}")
        # S_n is the projective P_n and follows the projective formula
        v_s = RatFn(F("P", i), F("S", i + 1) * F("S", i)) if i < n else RatFn(one, F("S", n))
        if not eqn.v_rational(c, idx("S", i)) == v_s:
            bad.append(f"v S{i}")
    return bad


def test_criterion_05_radical_square_zero(criterion):
    bad = {}
    for n in range(2, 7):
        b = _pelly_closed_forms(n)
        rep = rd.pelly_pattern_check(n)
        if not rep.ok:
            b.append(f"quotient pattern {[e['name'] for e in rep.failures()]}")
        if b:
            bad[n] = b
    criterion(5, "pelly-n, n <= 6: closed-form u, F-hat, v and quotient products", not bad,
              f"mismatches {bad}" if bad else "n = 2..6")


def test_criterion_06_grid(reference, criterion):
    try:
        c = _fresh("grid-3-6")
    except KnittingStuck as e:  # waived by the criterion itself
        criterion(6, "grid-3-6: 14 u-equations (waived, knitting stuck)", True, str(e))
        return
    bad = _golden(c, reference["grid-3-6"], (14, 0, 0), modules=10)
    sq = {(c.names[X], c.names[k]) for X in range(c.size)
          for e in eqn.u_equation(c, X).terms for k in range(c.size) if e[k] == 2}
    if sq != {("135", "246"), ("246", "135")}:
        bad.append(f"squares {sorted(sq)}")
    criterion(6, "grid-3-6: 14 labeled u-equations with u_246^2 and u_135^2", not bad,
              f"mismatches {bad}" if bad else "")


def test_criterion_07_parametrization(criterion):
    t = time.perf_counter()
    bad = {}
    for name in BUILTINS:
        rep = eqn.verify_parametrization(load_catalog(name))
        if not rep.ok:
            bad[name] = [e["name"] for e in rep.failures()]
    dt = time.perf_counter() - t
    criterion(7, "v kills every F-hat - 1 and u-equation on every built-in", not bad and dt < 60.0,
              f"{dt:.1f}s" + (f" failures {bad}" if bad else ""))


def test_criterion_08_exchange(criterion):
    bad, cases = [], {1: 0, 2: 0, 3: 0}
    for name in BUILTINS:
        c = load_catalog(name)
        for X in range(c.size):
            cases[eqn.exchange_case(c, X)] += 1
            if not eqn.exchange_identity_check(c, X):
                bad.append((name, c.names[X]))
    criterion(8, "exchange relations, all three cases, every built-in",
              not bad and all(cases.values()), f"objects per case {cases}" + (f" failures {bad}" if bad else ""))


def test_criterion_09_tropical(criterion):
    bad = {}
    for name in BUILTINS:
        c = load_catalog(name)
        rep = fn.check_trop_theorem(c, fn.build_fan(c, check=False), samples=50, seed=0)
        if not rep.ok:
            bad[name] = [e["name"] for e in rep.failures()]
    criterion(9, "trop v = -delta on rays, 0 for non-rigid, generic multiplicities", not bad,
              f"failures {bad}" if bad else "")


def test_criterion_10_jasso(criterion):
    bad = {}
    for src, focus, tgt in (("a2", "P1", "a1"), ("a3", "P1", "a2"), ("a2-loop", "P2", "loop2")):
        rep = rd.jasso_substitution_check(rd.jasso_match(load_catalog(src), focus, load_catalog(tgt)))
        if not rep.ok:
            bad[f"{src}@{focus}"] = [e["name"] for e in rep.failures()]
    criterion(10, "Jasso maps send F-hats and u-equations onto the target's", not bad,
              f"failures {bad}" if bad else "")


def test_criterion_11_dilogarithm(criterion):
    worst, slow = 0.0, []
    for name in BUILTINS:
        c = load_catalog(name)
        if c.n > 3:
            continue
        t = time.perf_counter()
        worst = max(worst, nm.dilog_identity_check(c, trials=100, seed=0))
        if time.perf_counter() - t >= 5.0:
            slow.append(name)
    criterion(11, "sum L(1 - v_N) = n pi^2/6 within 1e-9 (n <= 3)", worst < 1e-9 and not slow,
              f"max deviation {worst:.2e}" + (f" slow {slow}" if slow else ""))


def test_criterion_12_amplitudes(criterion):
    bad = []
    a1 = load_catalog("a1")
    for a, b in ((1, 1), (0.7, 0.9), (2, 3)):
        val = nm.amplitude(nm.AmplitudeSpec(a1, {"P1": a, "SigmaP1": b}))
        if abs(val - beta(a, b)) >= 1e-6:
            bad.append(f"Beta({a},{b})")
    loop2 = load_catalog("loop2")
    x1, x2 = 0.8, 1.3  # exponents of P1 and SigmaP1; S1 takes their sum
    v = [eqn.v_rational(loop2, k) for k in range(3)]
    y = Poly.var(loop2.yvars, 0)
    one = Poly.one(loop2.yvars)
    P1, S1, SP1 = (loop2.index(k) for k in ("P1", "S1", "SigmaP1"))
    if not (v[P1] * v[S1] == RatFn(one, one + y) and v[SP1] * v[S1] == RatFn(y, one + y)):
        bad.append("splitting integrand")
    x = [0.0] * 3
    x[P1], x[SP1], x[S1] = x1, x2, x1 + x2
    val = nm.amplitude(nm.AmplitudeSpec(loop2, x))
    if abs(val - beta(x2, x1)) >= 1e-6:
        bad.append("splitting value")
    src, tgt = load_catalog("a2-loop"), load_catalog("loop2")
    rep = nm.residue_check(src, "P2", rd.jasso_match(src, "P2", tgt), [[0.6, 0.8, 1.7], [1.1, 0.5, 0.9]],
                           tol=1e-2)
    rel = max(e["value"] for e in rep.entries)
    if not rep.ok:
        bad.append("residue")
    criterion(12, "Beta integrals, loop2 splitting, residue a2-loop at P2", not bad,
              f"residue rel. error {rel:.1e}" + (f" failures {bad}" if bad else ""))


def test_criterion_13_positivity_and_fan(criterion):
    bad = {}
    for name in BUILTINS:
        c = load_catalog(name)
        rep = nm.positivity_scan(c, trials=1000, seed=0)
        s = fn.sample_completeness(fn.build_fan(c, check=False), samples=10000, radius=10, seed=0)
        if not rep.ok or s["outside"] or s["double_interior"]:
            bad[name] = {"positivity": rep.ok, **s}
    criterion(13, "F > 0, 0 < v < 1 at 1000 samples; 10^4 fan samples in one cone", not bad,
              f"failures {bad}" if bad else "")


@pytest.mark.parametrize("src,focus,tgt,point", [("a2", "P1", "a1", [0.7, 0.9]), ("a3", "P1", "a2", None)])
def test_residue_against_target_integral(src, focus, tgt, point):
    s, t = load_catalog(src), load_catalog(tgt)
    point = point or [0.6 + 0.1 * k for k in range(t.size)]
    rep = nm.residue_check(s, focus, rd.jasso_match(s, focus, t), [point], tol=1e-3)
    assert rep.ok, rep.to_json()
