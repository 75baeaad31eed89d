import json

import pytest

from uvw import __version__
from uvw.shell import main, parse_path
from uvw.catalog import load_catalog


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_list_shows_builtins(capsys):
    code, out = run(capsys, "list")
    assert code == 0
    assert "a2-loop" in out and "grid-3-6" in out


def test_unknown_catalog_is_an_input_error(capsys):
    assert main(["verify", "--catalog", "nope"]) == 2
    assert main(["verify"]) == 2


def test_verify_json_header_and_determinism(capsys):
    code, first = run(capsys, "verify", "--catalog", "a2", "--format", "json")
    assert code == 0
    doc = json.loads(first)
    assert doc["version"] == __version__ and doc["tool"] == "uvw"
    assert doc["seed"] == 0 and doc["hash"] and doc["pass"]
    _, second = run(capsys, "verify", "--catalog", "a2", "--format", "json")
    assert first == second


def test_u_equations_one_per_line(capsys):
    code, out = run(capsys, "equations", "--catalog", "a2", "--kind", "u")
    assert code == 0
    assert len(out.strip().splitlines()) == 5


def test_amplitude_of_a1(capsys):
    code, out = run(capsys, "amplitude", "--catalog", "a1", "--exponents", "1,1", "--format", "json")
    assert code == 0
    assert json.loads(out)["value"] == pytest.approx(1.0, rel=1e-9)


def test_divergent_amplitude_fails(capsys):
    assert main(["amplitude", "--catalog", "a1", "--exponents", "0,1"]) == 1


def test_reduce_prints_bijection(capsys):
    code, out = run(capsys, "reduce", "--catalog", "a2-loop", "--focus", "P2", "--target", "loop2",
                    "--format", "json")
    assert code == 0
    assert json.loads(out)["map"]["images"]["I1"] == {"SigmaP1": 1}


def test_out_file(tmp_path, capsys):
    dest = tmp_path / "fan.txt"
    assert main(["fan", "--catalog", "a2", "--format", "polymake", "--out", str(dest)]) == 0
    assert dest.read_text().startswith("RAYS")


def test_path_parser_reads_composition_order():
    A = load_catalog("a3").algebra
    assert parse_path(A, "ba") == ("a", "b")
