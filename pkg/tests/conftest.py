import pytest

from wgraphs.labeled import SLabeledGraph
from wgraphs.tau import tau_mask


def slg(rank, taus, weights=(), simple=(), generators=None):
    """Build a graph from {id: [gens]}, directed weights and unit simple edges."""
    w = {}
    for u, v, x in weights:
        w[u, v] = x
    for u, v in simple:
        w[u, v] = 1
        w[v, u] = 1
    return SLabeledGraph(rank, tuple(taus), {k: tau_mask(t) for k, t in taus.items()}, w, generators)


@pytest.fixture
def chain3():
    return slg(3, {"v1": [1], "v2": [2], "v3": [3]}, simple=[("v1", "v2"), ("v2", "v3")])


@pytest.fixture
def a3_molecules():
    return [
        slg(3, {"e": []}),
        slg(3, {"top": [1, 2, 3]}),
        slg(3, {"v1": [1], "v2": [2], "v3": [3]}, simple=[("v1", "v2"), ("v2", "v3")]),
        slg(3, {"x": [2, 3], "y": [1, 3], "z": [1, 2]}, simple=[("x", "y"), ("y", "z")]),
        slg(3, {"p": [2], "q": [1, 3]}, simple=[("p", "q")]),
    ]
