from __future__ import annotations

import json
import re

import pytest

from groupoid_music.cli import main
from groupoid_music.instance import preset_spec


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err.strip()


@pytest.mark.parametrize("op, chord, image", [
    ("I_Mbeta", "0M", "2beta"),
    ("T1", "11M", "0M"),
    ("VL", "0alpha", "7beta"),
])
def test_act(capsys, op, chord, image):
    assert run(capsys, "act", "--op", op, "--chord", chord) == (0, image, "")


def test_act_with_morphism_and_partiality(capsys):
    assert run(capsys, "act", "--morphism", "(2,h:beta->M)", "--chord", "0M")[:2] == (0, "2beta")
    assert run(capsys, "act", "--morphism", "(0, id:alpha)", "--chord", "5alpha")[:2] == (0, "5alpha")
    code, _, err = run(capsys, "act", "--morphism", "(2,h:beta->M)", "--chord", "0alpha")
    assert code == 2 and "partiality" in err
    assert run(capsys, "act", "--op", "Nope", "--chord", "0M")[0] == 1
    assert run(capsys, "act", "--op", "T1", "--chord", "zz")[0] == 1
    assert run(capsys, "act", "--op", "T1", "--morphism", "(0,id:M)", "--chord", "0M")[0] == 1


def test_interval(capsys):
    assert run(capsys, "interval", "0M", "2beta")[:2] == (0, "(2, h:beta->M)")
    assert run(capsys, "interval", "5alpha", "5alpha")[:2] == (0, "(0, id:alpha)")
    code, out, _ = run(capsys, "interval", "0alpha", "7beta")
    assert code == 0
    assert run(capsys, "act", "--morphism", out, "--chord", "0alpha")[1] == "7beta"
    assert run(capsys, "interval", "0M", "bad")[0] == 1


def test_verify_presets(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == 0
    assert "[warning] VL'" in out
    assert "VL'^21 = T1: declared law True, formula law False" in out
    assert run(capsys, "verify", "--instance", "Mm")[0] == 0


def test_verify_mutated_instance(capsys, tmp_path):
    data = preset_spec("MAlphaBeta").to_dict()
    data["relations"].append("I_Malpha = T1")
    path = tmp_path / "mut.json"
    path.write_text(json.dumps(data))
    code, out, _ = run(capsys, "verify", "--instance", str(path), "--json")
    assert code == 1
    report = json.loads(out)
    assert not report["passed"]
    assert any(c.get("counterexamples") for c in report["checks"])
    data["phi"]["alpha->beta"] = 5
    path.write_text(json.dumps(data))
    code, _, err = run(capsys, "verify", "--instance", str(path))
    assert code == 1 and "functorial" in err


def test_closure(capsys):
    code, out, _ = run(capsys, "closure", "--ops", "T1,VL", "--json")
    report = json.loads(out)
    assert code == 0 and report["order"] == 36 and report["certificates"]["cyclic"] is True
    code, out, _ = run(capsys, "closure", "--ops", "I_Malpha,I_Mbeta,I_alphabeta,T_M", "--json")
    report = json.loads(out)
    assert report["order"] == 10368 and report["certificates"]["wreath(12,3)"]["ok"]
    report = json.loads(run(capsys, "closure", "--ops", "T1", "--json")[1])
    assert report["order"] == 12 and report["cyclic"]
    report = json.loads(run(capsys, "closure", "--instance", "Mm", "--ops", "T1,I0", "--json")[1])
    assert report["order"] == 24 and report["certificates"]["dihedral"]["ok"]
    assert run(capsys, "closure", "--ops", "Nope")[0] == 1


def test_enumerate_extensions(capsys):
    report = json.loads(run(capsys, "enumerate-extensions", "12", "3", "--trivial-action", "--json")[1])
    assert [c["invariant_factors"] for c in report["classes"]] == [[3, 12], [36]]
    report = json.loads(run(capsys, "enumerate-extensions", "12", "2", "--json")[1])
    assert any(not c["abelian"] and c["involutions"] == 13 for c in report["classes"])
    report = json.loads(run(capsys, "enumerate-extensions", "1", "5", "--json")[1])
    assert len(report["classes"]) == 1
    assert run(capsys, "enumerate-extensions", "100", "100")[0] == 1


def _dot(capsys, tmp_path, ops):
    path = tmp_path / "g.dot"
    assert run(capsys, "export-dot", "--ops", ops, "--out", str(path))[0] == 0
    text = path.read_text()
    nodes = re.findall(r'^  "([^"]+)";$', text, re.M)
    edges = re.findall(r'^  "([^"]+)" -> "([^"]+)" \[label="([^"]+)"\];$', text, re.M)
    assert text.startswith("digraph") and text.rstrip().endswith("}")
    return nodes, edges


def test_export_dot(capsys, tmp_path):
    nodes, edges = _dot(capsys, tmp_path, "VL")
    assert len(nodes) == 36 and len(edges) == 36
    succ = dict((a, b) for a, b, _ in edges)
    x, seen = "0M", set()
    while x not in seen:
        seen.add(x)
        x = succ[x]
    assert len(seen) == 36
    nodes, edges = _dot(capsys, tmp_path, "I_Malpha")
    loops = [a for a, b, _ in edges if a == b]
    assert len(edges) - len(loops) == 24
    assert sorted(loops) == sorted(f"{r}beta" for r in range(12))
    nodes, edges = _dot(capsys, tmp_path, "")
    assert len(nodes) == 36 and edges == []


def test_check_voicing(capsys):
    report = json.loads(run(capsys, "check-voicing", "--map", "z+2,x-1,y-2", "--json")[1])
    assert report["root_law"] == {"M": ["alpha", 9], "alpha": ["beta", 7], "beta": ["M", 7]}
    assert report["declared"]["VL"]["matches"]
    report = json.loads(run(capsys, "check-voicing", "--map", "x,y,z", "--json")[1])
    assert report["root_law"] == {t: [t, 0] for t in ("M", "alpha", "beta")}
    report = json.loads(run(capsys, "check-voicing", "--map", "z+4,x+1,y", "--json")[1])
    assert report["root_law"]["M"] == ["alpha", 11]
    assert report["declared"]["VL'"]["mismatched_rows"] == [
        {"type": "M", "declared": ["alpha", 1], "formula": ["alpha", 11]}]
    assert run(capsys, "check-voicing", "--map", "2x,y,z")[0] == 1
    assert run(capsys, "check-voicing", "--map", "x,y")[0] == 1


@pytest.mark.parametrize("argv", [
    ["verify", "--json"],
    ["closure", "--ops", "T1,VL'", "--json"],
    ["enumerate-extensions", "12", "2", "--json"],
    ["export-dot", "--ops", "VL,I_Mbeta"],
])
def test_deterministic_output(capsys, argv):
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second
    if "--json" in argv:
        assert "timing" not in json.loads(first[1])
        timed = json.loads(run(capsys, *argv, "--timing")[1])
        assert "seconds" in timed["timing"]
