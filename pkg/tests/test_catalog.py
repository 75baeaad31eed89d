import json

import pytest

from uvw import builtins
from uvw import modules as md
from uvw.catalog import ar_middle_term, knit, knit_directed, load_catalog, validate_catalog
from uvw.errors import KnittingStuck

SIZES = {"a1": 2, "a2": 5, "a3": 9, "a3-rel": 8, "preproj-a2": 6, "a2-loop": 9, "loop2": 3,
         "loop9": 10, "pelly-2": 5, "pelly-6": 17, "grid-3-6": 14}


@pytest.mark.parametrize("name,size", sorted(SIZES.items()))
def test_catalog_sizes_and_validation(name, size):
    c = load_catalog(name)
    assert c.size == size
    rep = validate_catalog(c)
    assert rep.ok, rep.failures()


@pytest.mark.parametrize("name", ["a3", "a3-rel", "pelly-4"])
def test_knitting_agrees_with_explicit_presentations(name):
    c = load_catalog(name)
    k = knit_directed(c.algebra, name=name)
    assert sorted((k.g[i], k.d[i]) for i in range(k.size)) == sorted((c.g[i], c.d[i]) for i in range(c.size))


def test_knitting_detects_cycles():
    c = load_catalog("preproj-a2")
    with pytest.raises(KnittingStuck):
        knit(c.algebra, directed=True)
    assert len(knit(c.algebra)) == 4


def test_middle_terms_of_a2():
    c = load_catalog("a2")
    mid = ar_middle_term(c, c.index("S2"))
    assert mid == {c.index("P2"): 1}
    assert c.tau_index[c.index("S2")] == c.index("P1")


def test_lookup_and_hash():
    c = load_catalog("a2-loop")
    assert c.index("S_1") == c.index("S1")
    assert c.hash() == load_catalog("a2-loop", use_cache=False).hash()
    assert c.hash() != load_catalog("a2").hash()


def test_interval_labels():
    c = load_catalog("an-3")
    assert c.size == 9
    assert "M0_2" in c.names
    # shifted projectives are the intervals starting at -1
    assert all(c.is_shift[c.index(f"Mm1_{i}")] for i in (1, 2, 3))


def test_grid_labels_respect_compatibility():
    c = load_catalog("grid-3-6")
    k1, k2 = c.index("135"), c.index("246")
    assert c.compat[k1][k2] == 2


def test_catalog_file_roundtrip(tmp_path):
    A = builtins.a2()[0]
    mods = [md.projective_module(A, 0), md.projective_module(A, 1), md.simple_module(A, 1)]
    doc = {"name": "mine",
           "algebra": {"vertices": 2, "arrows": [{"id": "a", "src": 1, "tgt": 2}]},
           "modules": [{"module": M.to_json()} for M in mods]}
    path = tmp_path / "mine.json"
    path.write_text(json.dumps(doc))
    c = load_catalog(str(path))
    ref = load_catalog("a2")
    assert sorted(c.g) == sorted(ref.g)
    assert sorted(c.labels) == sorted(ref.labels)


def test_catalog_search_path(tmp_path, monkeypatch):
    A = builtins.loop(2)[0]
    doc = {"algebra": {"vertices": 1, "arrows": [{"id": "x", "src": 1, "tgt": 1}],
                       "relations": [[{"path": ["x", "x"]}]]},
           "modules": [{"module": md.projective_module(A, 0).to_json(), "label": "P_1", "name": "P1"},
                       {"module": md.simple_module(A, 0).to_json(), "label": "S_1", "name": "S1"}],
           "name": "myloop"}
    (tmp_path / "myloop.json").write_text(json.dumps(doc))
    monkeypatch.setenv("UVW_CATALOG_PATH", str(tmp_path))
    c = load_catalog("myloop")
    assert c.size == 3 and c.names[:2] == ["P1", "S1"]
