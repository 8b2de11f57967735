import json

import pytest

from wgraphs import graphio
from wgraphs.cli import main
from wgraphs.deg import build_G_lambda
from wgraphs.kl import OVERRIDE_ENV


def run(capsys, *argv):
    code = main(["--quiet", *argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def report(out):
    return json.loads(out)["result"]


def test_deg_gen(capsys, tmp_path):
    f = tmp_path / "g.json"
    code, _, _ = run(capsys, "deg", "gen", "3,2", "--out", str(f))
    assert code == 0
    G = graphio.load(str(f))
    assert len(G.vertices) == 5 and G == build_G_lambda((3, 2))


def test_deg_gen_bad_shape(capsys):
    code, _, err = run(capsys, "deg", "gen", "2,x")
    assert code == 2 and "lambda" in err
    code, _, err = run(capsys, "deg", "gen", "1,2")
    assert code == 2


def test_deg_check(capsys, tmp_path):
    f = tmp_path / "g.json"
    graphio.save(build_G_lambda((3, 1, 1)), str(f))
    code, out, _ = run(capsys, "deg", "check", str(f))
    assert code == 0 and report(out)["status"] == "pass"


def test_deg_check_failure_has_witnesses(capsys, tmp_path):
    f = tmp_path / "bad.json"
    f.write_text(json.dumps({"format_version": "scg-1", "rank": 3,
                             "vertices": [{"id": "lonely", "tau": [1]}], "edges": []}))
    code, out, _ = run(capsys, "deg", "check", str(f), "--weak")
    assert code == 1
    wit = report(out)["axioms"]["1"]["witnesses"]
    assert wit and all(w["vertex"] == "lonely" for w in wit)


def test_mol_commands(capsys, tmp_path):
    f = tmp_path / "w.json"
    assert run(capsys, "kl", "wgraph", "4", "--out", str(f))[0] == 0
    code, out, _ = run(capsys, "mol", "check", str(f))
    assert code == 0
    code, out, _ = run(capsys, "mol", "components", str(f))
    assert code == 0 and report(out)["count"] == 10
    code, out, _ = run(capsys, "mol", "restrict", str(f), "--j", "1,2")
    assert code == 0 and report(out)["graph"]["generators"] == [1, 2]
    code, _, err = run(capsys, "mol", "restrict", str(f), "--j", "1,7")
    assert code == 2 and "--j" in err
    code, _, err = run(capsys, "mol", "check", str(f), "--rules", "sr,zz")
    assert code == 2 and "--rules" in err


def test_mol_check_failure_ids_come_from_input(capsys, tmp_path):
    f = tmp_path / "m.json"
    f.write_text(json.dumps({"format_version": "slg-1", "rank": 2,
                             "vertices": [{"id": "a", "tau": [1]}, {"id": "b", "tau": [2]}],
                             "edges": [{"src": "a", "dst": "b", "weight": 2},
                                       {"src": "b", "dst": "a", "weight": 2}]}))
    code, out, _ = run(capsys, "mol", "check", str(f))
    assert code == 1
    text = json.dumps(report(out))
    assert '"a"' in text and "lonely" not in text


def test_kl_cells_verify(capsys):
    code, out, _ = run(capsys, "kl", "cells", "4", "--verify")
    rep = report(out)
    assert code == 0 and rep["cell_count"] == 10 and rep["status"] == "pass"


def test_kl_guard(capsys, monkeypatch):
    monkeypatch.delenv(OVERRIDE_ENV, raising=False)
    code, _, err = run(capsys, "kl", "wgraph", "7")
    assert code == 2 and OVERRIDE_ENV in err


def test_kl_csv(capsys, tmp_path):
    f = tmp_path / "p.csv"
    assert run(capsys, "kl", "wgraph", "3", "--csv", str(f), "--out", str(tmp_path / "w.json"))[0] == 0
    assert f.read_text().splitlines()[0] == "u,w,P"


def test_search(capsys):
    code, out, _ = run(capsys, "search", "enumerate", "3", "--cap", "8")
    rep = report(out)
    assert code == 0 and rep["class_count"] == 5 and rep["saturated"]


def test_search_digest_serial_vs_parallel(capsys):
    _, a, _ = run(capsys, "search", "enumerate", "4", "--cap", "12", "--rules", "br,cr,axiom4")
    _, b, _ = run(capsys, "search", "enumerate", "4", "--cap", "12", "--rules", "br,cr,axiom4", "--jobs", "2")
    _, c, _ = run(capsys, "search", "enumerate", "4", "--cap", "12", "--rules", "br,cr,axiom4")
    da, db, dc = (json.loads(x)["manifest"]["result_digest"] for x in (a, b, c))
    assert da == db == dc


def test_iso(capsys, tmp_path):
    f = tmp_path / "a.json"
    graphio.save(build_G_lambda((3, 2)), str(f))
    code, out, _ = run(capsys, "iso", str(f), str(f))
    m = report(out)["mapping"]
    assert code == 0 and all(k == v for k, v in m.items())
    g = tmp_path / "b.json"
    graphio.save(build_G_lambda((2, 2, 1)), str(g))
    assert run(capsys, "iso", str(f), str(g))[0] == 1


def test_structural_errors(capsys, tmp_path):
    f = tmp_path / "x.json"
    f.write_text("{broken")
    assert run(capsys, "deg", "check", str(f))[0] == 2
    assert run(capsys, "deg", "check", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "nonsense")[0] == 2


def test_dot_to_stdout(capsys):
    code, out, _ = run(capsys, "deg", "gen", "2,2", "--dot", "-")
    assert code == 0 and out.startswith("digraph")
