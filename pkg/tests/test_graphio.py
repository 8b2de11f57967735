import json

import pytest

from wgraphs import graphio
from wgraphs.colored import SignedColoredGraph
from wgraphs.deg import build_G_lambda
from wgraphs.errors import StructureError
from wgraphs.kl import build_left_wgraph
from wgraphs.labeled import SLabeledGraph, restrict
from wgraphs.tableaux import partitions


def corpus():
    graphs = [build_G_lambda(lam) for m in range(1, 6) for lam in partitions(m)]
    graphs += [build_left_wgraph(m) for m in (2, 3, 4)]
    graphs.append(restrict(build_left_wgraph(4), [1, 3]))
    graphs.append(SLabeledGraph(0, (), {}, {}))
    return graphs


@pytest.mark.parametrize("G", corpus(), ids=lambda G: f"{type(G).__name__}-{len(G.vertices)}")
def test_round_trip(G):
    assert graphio.loads(graphio.dumps(G)) == G


def test_restricted_keeps_generators():
    R = restrict(build_left_wgraph(4), [1, 3])
    doc = graphio.to_json(R)
    assert doc["generators"] == [1, 3]


def test_bond_serialized_as_index():
    doc = graphio.to_json(build_G_lambda((2, 2)))
    assert doc["format_version"] == "scg-1"
    assert doc["edges"][0]["beta"] == [1, 2]


def bad(doc, field):
    with pytest.raises(StructureError, match=field):
        graphio.from_json(doc)


def base():
    return {"format_version": "slg-1", "rank": 2,
            "vertices": [{"id": "a", "tau": [1]}, {"id": "b", "tau": [2]}],
            "edges": [{"src": "a", "dst": "b", "weight": 1}]}


def test_validation_names_fields():
    d = base(); d["format_version"] = "x"; bad(d, "format_version")
    d = base(); del d["rank"]; bad(d, "rank")
    d = base(); d["vertices"][1]["id"] = "a"; bad(d, r"vertices\[1\]\.id")
    d = base(); d["vertices"][0]["tau"] = [3]; bad(d, r"vertices\[0\]\.tau")
    d = base(); d["edges"][0]["dst"] = "zz"; bad(d, r"edges\[0\]\.dst")
    d = base(); d["edges"][0]["weight"] = 0; bad(d, r"edges\[0\]\.weight")
    d = base(); d["edges"].append(dict(d["edges"][0])); bad(d, r"edges\[1\]")
    d = base(); d["edges"][0]["weight"] = True; bad(d, "weight")


def test_scg_duplicate_unordered_pair():
    d = {"format_version": "scg-1", "rank": 3,
         "vertices": [{"id": "p", "tau": [2]}, {"id": "q", "tau": [1, 3]}],
         "edges": [{"a": "p", "b": "q", "beta": [1, 2]}, {"a": "q", "b": "p", "beta": [1]}]}
    bad(d, r"edges\[1\]")


def test_malformed_json():
    with pytest.raises(StructureError, match="malformed"):
        graphio.loads("{nope")


class TestDot:
    def test_empty(self):
        text = graphio.export_dot(SignedColoredGraph(0, (), {}, {}))
        assert text.startswith("digraph") and text.rstrip().endswith("}")
        assert "->" not in text

    def test_g22(self):
        text = graphio.export_dot(build_G_lambda((2, 2)))
        assert text.count("[label=") == 2
        edges = [l for l in text.splitlines() if "->" in l]
        assert len(edges) == 1 and "dir=none" in edges[0] and "a1 a2" in edges[0]

    def test_arc_is_one_directed_statement(self):
        G = SLabeledGraph(2, ("u", "v"), {"u": 6, "v": 2}, {("u", "v"): 3})
        edges = [l for l in graphio.export_dot(G).splitlines() if "->" in l]
        assert edges == ['  "u" -> "v" [label="3"];']

    def test_deterministic(self):
        G = build_left_wgraph(4)
        assert graphio.export_dot(G) == graphio.export_dot(graphio.loads(graphio.dumps(G)))


def test_digest_stable():
    a = {"x": [1, 2], "y": {"b": 1, "a": 2}}
    b = json.loads(json.dumps({"y": {"a": 2, "b": 1}, "x": [1, 2]}))
    assert graphio.digest(a) == graphio.digest(b)
