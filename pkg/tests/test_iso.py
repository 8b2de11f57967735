from wgraphs.colored import as_labeled, simple_part
from wgraphs.deg import build_G_lambda
from wgraphs.iso import find_isomorphism, find_scg_isomorphism, find_simple_isomorphism
from wgraphs.kl import build_left_wgraph
from wgraphs.labeled import SLabeledGraph

from conftest import slg


def reversed_copy(G: SLabeledGraph) -> SLabeledGraph:
    return SLabeledGraph(G.rank, tuple(reversed(G.vertices)), dict(G.tau), dict(G.weights))


def test_identity(chain3):
    assert find_isomorphism(chain3, chain3) == {v: v for v in chain3.vertices}


def test_relabelled_chain(chain3):
    H = slg(3, {"c": [3], "b": [2], "a": [1]}, simple=[("c", "b"), ("b", "a")])
    assert find_isomorphism(chain3, H) == {"v1": "a", "v2": "b", "v3": "c"}


def test_size_mismatch(chain3):
    pair = slg(3, {"p": [2], "q": [1, 3]}, simple=[("p", "q")])
    assert find_isomorphism(chain3, pair) is None


def test_weights_matter_for_full_but_not_simple():
    G = slg(2, {"a": [1, 2], "b": [1], "c": [2]}, weights=[("a", "b", 1)], simple=[("b", "c")])
    H = slg(2, {"a": [1, 2], "b": [1], "c": [2]}, weights=[("a", "b", 2)], simple=[("b", "c")])
    assert find_isomorphism(G, H) is None
    assert find_simple_isomorphism(G, H) is not None


def test_fixed_mapping():
    G = build_G_lambda((3, 1))
    L = as_labeled(G)
    assert find_isomorphism(L, L, fixed={G.vertices[0]: G.vertices[1]}) is None


def test_kl_graph_self_symmetry():
    G = build_left_wgraph(4)
    H = reversed_copy(G)
    f = find_isomorphism(G, H)
    g = find_isomorphism(H, G)
    assert f is not None and g is not None
    # g o f need not be the identity when G has automorphisms, but the inverse
    # of f is always an isomorphism back
    inv = {b: a for a, b in f.items()}
    assert all(G.m(inv[a], inv[b]) == H.m(a, b) for a in H.vertices for b in H.out[a])
    assert all(G.tau[inv[a]] == H.tau[a] for a in H.vertices)


def test_scg_colours():
    G = build_G_lambda((3, 2))
    assert find_scg_isomorphism(G, simple_part(as_labeled(G))) is not None
