import pytest

from wgraphs.kl import build_left_wgraph, cells, extract_molecules
from wgraphs.transport import bond_transport, cabling, lpr_path_arcs, polygon_transport

from conftest import slg


def molecules(m):
    return extract_molecules(cells(build_left_wgraph(m)))


def totals(fn, mols):
    seen, bad = 0, []
    for M in mols:
        s, b = fn(M)
        seen += s
        bad += b
    return seen, bad


@pytest.mark.parametrize("m", [4, 5])
def test_bond_transport(m):
    seen, bad = totals(bond_transport, molecules(m))
    assert bad == []
    if m == 5:
        assert seen > 0


def test_polygon_transport_a3():
    seen, bad = totals(lambda M: polygon_transport(M, 2), molecules(5))
    assert seen > 0 and bad == []


def test_polygon_transport_a4_needs_m6():
    assert totals(lambda M: polygon_transport(M, 3), molecules(5)) == (0, [])
    seen, bad = totals(lambda M: polygon_transport(M, 3), molecules(6))
    assert seen > 0 and bad == []


def test_lpr_paths_have_at_most_one_arc():
    seen, bad = totals(lpr_path_arcs, molecules(5))
    assert seen > 0 and bad == []


@pytest.mark.parametrize("m", [3, 4, 5])
def test_cabling(m):
    seen, bad = totals(cabling, molecules(m))
    assert seen > 0 and bad == []


def test_bond_transport_detects_mismatch():
    # two parallel 1-2 edges sharing label 3 on one side, with unequal rungs
    G = slg(3, {"x": [1, 3], "y": [2, 3], "x2": [1], "y2": [2]},
            weights=[("x", "x2", 1), ("y", "y2", 2)],
            simple=[("x", "y"), ("x2", "y2")])
    seen, bad = bond_transport(G)
    assert seen > 0 and bad
