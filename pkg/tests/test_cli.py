import json
from importlib import resources

import pytest

from triplex import cli
from triplex.cli import LoadError, load_system
from triplex.lts import LieAlgebra, TripleSystem


def data_path(name):
    return str(resources.files("triplex") / "data" / name)


def test_load_system_lts():
    t = load_system(data_path("s2.json"))
    assert isinstance(t, TripleSystem)
    assert t.dim == 2
    assert t.basis_names == ("e", "f")


def test_load_system_lie():
    l = load_system(data_path("sl2.json"))
    assert isinstance(l, LieAlgebra)
    assert l.dim == 3


def test_load_system_all_data_files():
    for name in ("s2.json", "sl2.json", "sl2_lts.json", "sl3_sym.json",
                 "abelian3.json", "s2_plus_s2.json"):
        load_system(data_path(name))


def write(tmp_path, doc):
    p = tmp_path / "sys.json"
    p.write_text(json.dumps(doc))
    return str(p)


def test_load_errors(tmp_path):
    with pytest.raises(LoadError):
        load_system(str(tmp_path / "missing.json"))
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(LoadError):
        load_system(str(bad))
    with pytest.raises(LoadError):
        load_system(write(tmp_path, {"kind": "group", "dim": 2, "basis": ["a", "b"]}))
    with pytest.raises(LoadError):
        load_system(write(tmp_path, {"kind": "lts", "dim": 0, "basis": []}))
    with pytest.raises(LoadError):
        load_system(write(tmp_path, {"kind": "lts", "dim": 2, "basis": ["a"]}))
    with pytest.raises(LoadError):
        load_system(write(tmp_path, {
            "kind": "lts", "dim": 2, "basis": ["a", "b"],
            "entries": [{"args": [0, 1], "value": {"0": "1"}}]}))
    with pytest.raises(LoadError):
        load_system(write(tmp_path, {
            "kind": "lts", "dim": 2, "basis": ["a", "b"],
            "entries": [{"args": [0, 1, 5], "value": {"0": "1"}}]}))
    with pytest.raises(LoadError):
        load_system(write(tmp_path, {
            "kind": "lts", "dim": 2, "basis": ["a", "b"],
            "entries": [{"args": [0, 1, 0], "value": {"0": "1/x"}}]}))
    with pytest.raises(LoadError):
        load_system(write(tmp_path, {
            "kind": "lts", "dim": 2, "basis": ["a", "b"],
            "entries": [{"args": [0, 1, 0], "value": {"0": "1"}},
                        {"args": [0, 1, 0], "value": {"0": "2"}}]}))


def test_check_pass(capsys):
    assert cli.main(["check", data_path("s2.json")]) == 0
    out = capsys.readouterr().out
    assert "axiom alternating: pass" in out


def test_check_fail(tmp_path, capsys):
    path = write(tmp_path, {
        "kind": "lts", "dim": 2, "basis": ["a", "b"],
        "entries": [{"args": [0, 0, 1], "value": {"0": "1"}}]})
    assert cli.main(["check", path]) == 1


def test_check_missing_file_exit_2():
    assert cli.main(["check", "/nonexistent/sys.json"]) == 2


def test_embed(capsys):
    assert cli.main(["embed", data_path("s2.json")]) == 0
    out = capsys.readouterr().out
    assert "dim 3 = 1 (inner derivations) + 2 (T)" in out
    assert "nondegenerate" in out


def test_endo_pass_and_fail(capsys):
    assert cli.main(["endo", data_path("s2.json")]) == 0
    assert "dim 4, expected 4" in capsys.readouterr().out
    assert cli.main(["endo", data_path("abelian3.json")]) == 1
    assert cli.main(["endo", data_path("s2_plus_s2.json")]) == 1


def test_simple(capsys):
    assert cli.main(["simple", data_path("s2.json")]) == 0
    assert "verdict: simple" in capsys.readouterr().out
    assert cli.main(["simple", data_path("s2_plus_s2.json")]) == 1
    assert "witness" in capsys.readouterr().out


def test_pbw(capsys):
    assert cli.main(["pbw", data_path("s2.json"), "-N", "3"]) == 0
    out = capsys.readouterr().out
    assert "filtration level 3: dim 10" in out
    assert "certificate: pass" in out


def test_pbw_size_guard_exit_3():
    assert cli.main(["--max-monomials", "10", "pbw", data_path("s2.json"),
                     "-N", "6"]) == 3


def test_mul(capsys):
    assert cli.main(["mul", data_path("s2.json"), "-N", "3", "e", "f"]) == 0
    assert capsys.readouterr().out.strip() == "e*f"
    assert cli.main(["mul", data_path("s2.json"), "-N", "3",
                     "e*(f*e) - (e*f)*e", "1"]) == 0
    assert capsys.readouterr().out.strip() == "e"


def test_mul_budget_exit_3():
    assert cli.main(["mul", data_path("s2.json"), "-N", "3", "e^2", "f^2"]) == 3


def test_mul_bad_expression_exit_2():
    assert cli.main(["mul", data_path("s2.json"), "-N", "3", "e*f*e", "1"]) == 2
    assert cli.main(["mul", data_path("s2.json"), "-N", "3", "q", "1"]) == 2


def test_ideal(capsys):
    assert cli.main(["ideal", data_path("s2.json"), "-N", "4",
                     "--right", "e"]) == 0
    out = capsys.readouterr().out
    assert "contains 1: False" in out
    assert "intersection with T: dim 2" in out


def test_ideal_no_generators_exit_2():
    assert cli.main(["ideal", data_path("s2.json"), "-N", "3"]) == 2
    assert cli.main(["ideal", data_path("s2.json"), "-N", "3",
                     "--right", "e - e"]) == 2


def test_verify_axioms(capsys):
    assert cli.main(["verify", data_path("s2.json"), "--suite", "axioms"]) == 0
    out = capsys.readouterr().out
    assert "[pass] axiom1_alternating" in out
    assert "suite axioms: pass" in out


def test_verify_fail_exit_1(capsys):
    assert cli.main(["verify", data_path("abelian3.json"),
                     "--suite", "endo"]) == 1


def test_verify_json_schema(capsys):
    assert cli.main(["verify", data_path("s2.json"), "--suite", "axioms",
                     "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["suite"] == "axioms"
    assert doc["status"] == "pass"
    assert doc["checks"] == 3
    assert "timing_seconds" not in doc


def test_verify_json_deterministic(capsys):
    argv = ["verify", data_path("sl2_lts.json"), "-N", "3",
            "--suite", "pbw", "--json"]
    assert cli.main(argv) == 0
    first = capsys.readouterr().out
    assert cli.main(argv) == 0
    second = capsys.readouterr().out
    assert first == second


def test_lie_input_converted(capsys):
    assert cli.main(["endo", data_path("sl2.json")]) == 0
    assert "dim 9, expected 9" in capsys.readouterr().out
