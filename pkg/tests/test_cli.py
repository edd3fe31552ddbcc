import json
from pathlib import Path

import pytest

from corings.cli import main
from corings.fixtures import WORKSPACES
from corings.workspace import WorkspaceError, dumps, load_workspace, workspace_from_json

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, doc, name="ws.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return p


@pytest.mark.parametrize("name", sorted(WORKSPACES))
def test_fixture_files_are_current(name):
    assert (FIXTURES / name).read_text() == dumps(WORKSPACES[name]())


# --- check -----------------------------------------------------------------------------


@pytest.mark.parametrize("path,obj", [
    ("trivial.json", "trivial"), ("trivial.json", "explicit"), ("trivial.json", "T2"),
    ("trivial.json", "T2reg"), ("dualnum_sweedler.json", "sweedler"),
    ("dualnum_sweedler.json", "sweedler_system"), ("dualnum_sweedler.json", "unit"),
    ("dualnum_sweedler.json", "D_over_k"), ("group_c2.json", "sweedler"),
])
def test_check_passes(capsys, path, obj):
    code, out, _ = run(capsys, "check", FIXTURES / path, obj)
    assert code == 0, out
    assert "PASS" in out


def test_check_json_output(capsys):
    code, out, _ = run(capsys, "check", FIXTURES / "dualnum_sweedler.json", "sweedler", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"] and doc["kind"] == "coring"
    assert doc["reports"][0]["clauses"][0]["clause"] == "gamma_balanced"


def test_corrupted_counit(capsys, tmp_path):
    doc = json.loads((FIXTURES / "trivial.json").read_text())
    eps = doc["corings"]["explicit"]["counit"]
    doc["corings"]["explicit"]["counit"] = [[str(2 * int(x)) for x in row] for row in eps]
    code, out, _ = run(capsys, "check", write(tmp_path, doc), "explicit")
    assert code == 1
    assert "CounitLawFails" in out


def test_corrupted_certificate(capsys, tmp_path):
    doc = json.loads((FIXTURES / "dualnum_sweedler.json").read_text())
    doc["certificates"]["sweedler_system"]["e"][0] = "5"
    code, out, _ = run(capsys, "check", write(tmp_path, doc), "sweedler_system")
    assert code == 1
    assert "first failure: e_invariant" in out


@pytest.mark.parametrize("mutate,pointer", [
    (lambda d: d["algebras"]["T2"].__setitem__("unit", [1.0, 0, 1]), "/algebras/T2/unit/0"),
    (lambda d: d["algebras"]["T2"].pop("mu"), "/algebras/T2"),
    (lambda d: d["corings"]["trivial"].__setitem__("algebra", "nope"), "/corings/trivial/algebra"),
    (lambda d: d["corings"]["explicit"].__setitem__("kind", "weird"), "/corings/explicit/kind"),
    (lambda d: d.__setitem__("field", "R"), "/field"),
    (lambda d: d["algebras"]["T2"]["mu"][0][0].__setitem__(0, "1/0"), "/algebras/T2/mu/0/0/0"),
])
def test_parse_errors(capsys, tmp_path, mutate, pointer):
    doc = json.loads((FIXTURES / "trivial.json").read_text())
    mutate(doc)
    code, _, err = run(capsys, "check", write(tmp_path, doc), "trivial")
    assert code == 2
    assert pointer in err
    with pytest.raises(WorkspaceError) as info:
        workspace_from_json(doc)
    assert info.value.pointer == pointer


def test_invalid_json_and_missing_things(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"field": "Q",\n "algebras": }')
    code, _, err = run(capsys, "check", p, "x")
    assert code == 2 and "line 2" in err
    code, _, err = run(capsys, "check", tmp_path / "missing.json", "x")
    assert code == 2
    code, _, err = run(capsys, "check", FIXTURES / "trivial.json", "nothing")
    assert code == 2 and "nothing" in err
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_builtin_ground_algebra():
    ws = load_workspace(FIXTURES / "dualnum_sweedler.json")
    assert ws.algebras["k"].dim == 1


# --- find-frobenius --------------------------------------------------------------------


@pytest.mark.parametrize("path", ["trivial.json", "dualnum_sweedler.json", "group_c2.json"])
def test_find_and_recheck(capsys, tmp_path, path):
    coring = "trivial" if path == "trivial.json" else "sweedler"
    code, out, _ = run(capsys, "find-frobenius", FIXTURES / path, coring, "--seed", 7)
    assert code == 0
    cert = json.loads(out)
    assert cert["status"] == "found" and cert["verified"] and cert["coring"] == coring
    assert cert["search"]["seed"] == 7
    p = tmp_path / "cert.json"
    p.write_text(out)
    code, out2, _ = run(capsys, "check", FIXTURES / path, coring, "--certificate", p)
    assert code == 0, out2


def test_find_is_byte_stable(capsys):
    outs = [run(capsys, "find-frobenius", FIXTURES / "dualnum_sweedler.json", "sweedler")[1]
            for _ in range(2)]
    assert outs[0] == outs[1] and outs[0].endswith("\n")
    assert list(json.loads(outs[0])) == sorted(json.loads(outs[0]))


def test_find_not_found(capsys):
    code, out, _ = run(capsys, "find-frobenius", FIXTURES / "t2_sweedler.json", "sweedler")
    assert code == 3
    doc = json.loads(out)
    assert doc["status"] == "not_found"
    assert doc["diagnostics"]["module_iso_found"] is False
    code2, out2, _ = run(capsys, "find-frobenius", FIXTURES / "t2_sweedler.json", "sweedler")
    assert out2 == out


def test_find_user_candidate(capsys):
    code, out, _ = run(capsys, "find-frobenius", FIXTURES / "dualnum_sweedler.json", "sweedler",
                       "--e-candidate", "0,2,2,0")
    assert code == 0
    assert json.loads(out)["e"] == ["0", "1", "1", "0"]
    code, _, err = run(capsys, "find-frobenius", FIXTURES / "dualnum_sweedler.json", "sweedler",
                       "--e-candidate", "0,1")
    assert code == 2


def test_certificate_for_wrong_coring(capsys, tmp_path):
    p = tmp_path / "cert.json"
    p.write_text(json.dumps({"coring": "D_over_k", "gamma": [["0"]], "e": ["1"]}))
    code, _, err = run(capsys, "check", FIXTURES / "dualnum_sweedler.json", "sweedler",
                       "--certificate", p)
    assert code == 2


# --- tower -----------------------------------------------------------------------------


def test_tower_trivial(capsys):
    code, out, _ = run(capsys, "tower", FIXTURES / "trivial.json", "trivial", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["dims"] == [3, 3, 3, 3]
    assert doc["index_profile"]["indices"] == [["1", "1"]] * 3


def test_tower_dual_numbers(capsys):
    code, out, _ = run(capsys, "tower", FIXTURES / "dualnum_sweedler.json", "sweedler", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["dims"] == [2, 4, 8, 16] and doc["verified"]
    assert doc["system_source"] == "stored extension data"
    assert "not_strongly_coseparable" in doc["index_profile"]


def test_tower_group_algebra(capsys):
    code, out, _ = run(capsys, "tower", FIXTURES / "group_c2.json", "sweedler", "--levels", 2)
    assert code == 0
    assert "index (2:1)" in out and "index (1:2)" in out and "alternation: ok" in out


def test_tower_exit_codes(capsys):
    code, out, _ = run(capsys, "tower", FIXTURES / "dualnum_sweedler.json", "sweedler",
                       "--budget", 10)
    assert code == 5 and "budget" in out
    code, _, _ = run(capsys, "tower", FIXTURES / "t2_sweedler.json", "sweedler", "--levels", 1)
    assert code == 3
    code, _, _ = run(capsys, "tower", FIXTURES / "trivial.json", "trivial", "--levels", 0)
    assert code == 2


def test_tower_from_certificate(capsys, tmp_path):
    doc = json.loads((FIXTURES / "dualnum_sweedler.json").read_text())
    del doc["extensions"]["unit"]["frobenius"]
    del doc["corings"]["D_over_k"]
    code, out, _ = run(capsys, "tower", write(tmp_path, doc), "sweedler", "--levels", 2)
    assert code == 0 and "certificate sweedler_system" in out


def test_find_certified_not_frobenius(capsys):
    code, out, _ = run(capsys, "find-frobenius", FIXTURES / "t2_diagonal.json", "sweedler")
    assert code == 4
    doc = json.loads(out)
    assert doc["status"] == "certified_not_frobenius" and "left dual" in doc["reason"]
    code, out, _ = run(capsys, "tower", FIXTURES / "t2_diagonal.json", "sweedler")
    assert code == 4 and "not Frobenius" in out
