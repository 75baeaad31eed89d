"""Built-in catalogs.

Small examples are given by explicit minimal presentations; larger ones are
knitted.  Differential entries are written as lists of ``(coef, traversal)``
with arrows listed in the order they are walked.
"""
import os
import re

from .algebra import Arrow, QuiverAlgebra
from .homotopy import TwoTermComplex, stalk_projective

NAMES = ["a1", "a2", "a3", "a3-rel", "preproj-a2", "a2-loop"] + \
        [f"loop{d}" for d in range(2, 10)] + [f"pelly-{n}" for n in range(2, 7)] + \
        ["grid-3-6"] + [f"an-{n}" for n in range(1, 7)]


def _cx(A, minus, zero, diff):
    """Complex from 1-based vertex lists and entries [[terms]] (rows = degree 0)."""
    d = [[A.element(e) if e else {} for e in row] for row in diff]
    return TwoTermComplex(A, [w - 1 for w in minus], [v - 1 for v in zero], d, minimal=True)


def _proj(A, i):
    return stalk_projective(A, i - 1)


def _a(n, rels=(), name=None):
    arrows = [Arrow("ab"[k] if n <= 3 else f"a{k + 1}", k, k + 1) for k in range(n - 1)]
    return QuiverAlgebra(n, arrows, rels, name=name)


def a1():
    A = QuiverAlgebra(1, [], name="a1")
    return A, [("P_1", "P1", _proj(A, 1))]


def a2():
    A = _a(2, name="a2")
    return A, [
        ("P_1", "P1", _proj(A, 1)),
        ("P_2", "P2", _proj(A, 2)),
        ("S_2", "S2", _cx(A, [1], [2], [[[(1, "a")]]])),
    ]


def a3():
    A = _a(3, name="a3")
    return A, [
        ("P_1", "P1", _proj(A, 1)),
        ("P_2", "P2", _proj(A, 2)),
        ("P_3", "P3", _proj(A, 3)),
        ("S_2", "S2", _cx(A, [1], [2], [[[(1, "a")]]])),
        ("I_2", "I2", _cx(A, [1], [3], [[[(1, "ab")]]])),
        ("S_3", "S3", _cx(A, [2], [3], [[[(1, "b")]]])),
    ]


def a3_rel():
    A = _a(3, rels=[[(1, ("a", "b"))]], name="a3-rel")
    return A, [
        ("P_1", "P1", _proj(A, 1)),
        ("P_2", "P2", _proj(A, 2)),
        ("P_3", "P3", _proj(A, 3)),
        ("S_2", "S2", _cx(A, [1], [2], [[[(1, "a")]]])),
        ("S_3", "S3", _cx(A, [2], [3], [[[(1, "b")]]])),
    ]


def preproj_a2():
    arrows = [Arrow("a", 0, 1), Arrow("b", 1, 0)]
    A = QuiverAlgebra(2, arrows, [[(1, ("a", "b"))], [(1, ("b", "a"))]], name="preproj-a2")
    return A, [
        ("P_1", "P1", _proj(A, 1)),
        ("P_2", "P2", _proj(A, 2)),
        ("S_1", "S1", _cx(A, [2], [1], [[[(1, "b")]]])),
        ("S_2", "S2", _cx(A, [1], [2], [[[(1, "a")]]])),
    ]


def a2_loop():
    arrows = [Arrow("x", 0, 0), Arrow("a", 0, 1)]
    A = QuiverAlgebra(2, arrows, [[(1, ("x", "x"))]], name="a2-loop")
    return A, [
        ("P_1", "P1", _proj(A, 1)),
        ("P_2", "P2", _proj(A, 2)),
        ("S_1", "S1", _cx(A, [1], [1], [[[(1, "x")]]])),
        ("S_2", "S2", _cx(A, [1], [2], [[[(1, "a")]]])),
        ("I_1", "I1", _cx(A, [1], [2, 2], [[[(1, "a")]], [[(1, "xa")]]])),
        ("12", "12", _cx(A, [1], [2], [[[(1, "xa")]]])),
        ("112", "112", _cx(A, [1], [1, 2], [[[(1, "x")]], [[(1, "a")]]])),
    ]


def loop(d):
    A = QuiverAlgebra(1, [Arrow("x", 0, 0)], [[(1, ("x",) * d)]], name=f"loop{d}")
    out = [("P_1", "P1", _proj(A, 1))]
    for k in range(1, d):
        lab, nm = ("S_1", "S1") if k == 1 else (f"M_{k}", f"M{k}")
        out.append((lab, nm, _cx(A, [1], [1], [[[(1, ("x",) * k)]]])))
    return A, out


def _pelly_algebra(n, rad2=True, name=None):
    arrows = [Arrow(f"a{i}", i, i - 1) for i in range(1, n)]
    rels = [[(1, (f"a{i + 1}", f"a{i}"))] for i in range(1, n - 1)] if rad2 else []
    return QuiverAlgebra(n, arrows, rels, name=name)


def pelly(n):
    A = _pelly_algebra(n, name=f"pelly-{n}")
    out = [(f"P_{i}", f"P{i}", _proj(A, i)) for i in range(1, n)]
    for i in range(1, n):
        # a_i : i+1 -> i
        out.append((f"S_{i}", f"S{i}", _cx(A, [i + 1], [i], [[[(1, (f"a{i}",))]]])))
    out.append((f"S_{n}", f"S{n}", _proj(A, n)))
    return A, out


def grid_algebra():
    """2x2 grid: right arrows r1: 1->2, r2: 3->4, down arrows d1: 1->3, d2: 2->4;
    every right-then-down and down-then-right composite vanishes."""
    arrows = [Arrow("r1", 0, 1), Arrow("r2", 2, 3), Arrow("d1", 0, 2), Arrow("d2", 1, 3)]
    rels = [[(1, ("r1", "d2"))], [(1, ("d1", "r2"))]]
    return QuiverAlgebra(4, arrows, rels, name="grid-3-6")


def linear_an(n):
    """Path algebra of 1 <- 2 <- ... <- n without relations."""
    return _pelly_algebra(n, rad2=False, name=f"an-{n}")


_EXPLICIT = {"a1": a1, "a2": a2, "a3": a3, "a3-rel": a3_rel, "preproj-a2": preproj_a2,
             "a2-loop": a2_loop}


def build(name):
    from .catalog import catalog_from_complexes, knit_directed
    if name in _EXPLICIT:
        A, entries = _EXPLICIT[name]()
        return catalog_from_complexes(A, entries, name=name)
    m = re.fullmatch(r"loop(\d)", name)
    if m and 2 <= int(m.group(1)) <= 9:
        A, entries = loop(int(m.group(1)))
        return catalog_from_complexes(A, entries, name=name)
    m = re.fullmatch(r"pelly-(\d)", name)
    if m and 2 <= int(m.group(1)) <= 6:
        A, entries = pelly(int(m.group(1)))
        return catalog_from_complexes(A, entries, name=name)
    if name == "grid-3-6":
        from .catalog import label_grid
        return label_grid(knit_directed(grid_algebra(), name=name))
    m = re.fullmatch(r"an-(\d)", name)
    if m and 1 <= int(m.group(1)) <= 6:
        from .catalog import label_intervals
        return label_intervals(knit_directed(linear_an(int(m.group(1))), name=name))
    return None


def search_path(name):
    """Look up ``name`` or ``name.json`` in the directories of UVW_CATALOG_PATH."""
    for d in os.environ.get("UVW_CATALOG_PATH", "").split(os.pathsep):
        if not d:
            continue
        for cand in (name, name + ".json"):
            p = os.path.join(d, cand)
            if os.path.isfile(p):
                return p
    return None
