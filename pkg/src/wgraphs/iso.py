"""Backtracking isomorphism search for small vertex- and edge-labelled graphs.

Both graph flavours are reduced to the same shape: a label per vertex and
a directed adjacency map carrying an edge label.  Colour refinement is run
jointly on the two graphs before backtracking, so candidate lists are
short; the graphs met in this package have at most a few hundred vertices.
"""

from __future__ import annotations

from collections import Counter, deque
from typing import Hashable, Mapping

from .colored import SignedColoredGraph, simple_part
from .labeled import SLabeledGraph

Adj = Mapping[str, Mapping[str, Hashable]]


class _Shape:
    __slots__ = ("vertices", "label", "out", "into")

    def __init__(self, vertices, label, out):
        self.vertices = list(vertices)
        self.label = label
        self.out = out
        into = {v: {} for v in self.vertices}
        for u, nbrs in out.items():
            for v, e in nbrs.items():
                into[v][u] = e
        self.into = into


def _refine(shapes: list[_Shape]) -> list[dict[str, int]]:
    palette: dict[Hashable, int] = {}
    colors = []
    for s in shapes:
        colors.append({v: palette.setdefault(("L", s.label[v]), len(palette)) for v in s.vertices})
    count = len(palette)
    while True:
        palette = {}
        new = []
        for s, col in zip(shapes, colors):
            nc = {}
            for v in s.vertices:
                sig = (
                    col[v],
                    tuple(sorted((repr(e), col[w]) for w, e in s.out[v].items())),
                    tuple(sorted((repr(e), col[w]) for w, e in s.into[v].items())),
                )
                nc[v] = palette.setdefault(sig, len(palette))
            new.append(nc)
        colors = new
        if len(palette) == count:
            return colors
        count = len(palette)


def _match(g: _Shape, h: _Shape, fixed: Mapping[str, str] | None = None) -> dict[str, str] | None:
    if len(g.vertices) != len(h.vertices):
        return None
    if Counter(g.label.values()) != Counter(h.label.values()):
        return None
    cg, ch = _refine([g, h])
    if Counter(cg.values()) != Counter(ch.values()):
        return None
    fixed = dict(fixed or {})
    for a, b in fixed.items():
        if a not in cg or b not in ch or cg[a] != ch[b]:
            return None

    by_color: dict[int, list[str]] = {}
    for v in h.vertices:
        by_color.setdefault(ch[v], []).append(v)
    h_rank = {v: k for k, v in enumerate(h.vertices)}
    g_rank = {v: k for k, v in enumerate(g.vertices)}

    # BFS order so that later vertices have mapped neighbours
    freq = Counter(cg.values())
    order: list[str] = []
    placed: set[str] = set()
    roots = list(fixed) + sorted(g.vertices, key=lambda v: (freq[cg[v]], g_rank[v]))
    for root in roots:
        if root in placed:
            continue
        placed.add(root)
        queue = deque([root])
        while queue:
            x = queue.popleft()
            order.append(x)
            for y in sorted(set(g.out[x]) | set(g.into[x]), key=g_rank.__getitem__):
                if y not in placed:
                    placed.add(y)
                    queue.append(y)

    fwd: dict[str, str] = {}
    back: dict[str, str] = {}

    def consistent(x: str, y: str) -> bool:
        seen = 0
        for x2, e in g.out[x].items():
            if x2 in fwd:
                if h.out[y].get(fwd[x2]) != e:
                    return False
                seen += 1
        if sum(1 for y2 in h.out[y] if y2 in back) != seen:
            return False
        seen = 0
        for x2, e in g.into[x].items():
            if x2 in fwd:
                if h.into[y].get(fwd[x2]) != e:
                    return False
                seen += 1
        return sum(1 for y2 in h.into[y] if y2 in back) == seen

    def candidates(x: str) -> list[str]:
        if x in fixed:
            return [fixed[x]]
        for x2 in g.out[x]:
            if x2 in fwd:
                pool = h.into[fwd[x2]]
                return sorted((y for y in pool if ch[y] == cg[x]), key=h_rank.__getitem__)
        for x2 in g.into[x]:
            if x2 in fwd:
                pool = h.out[fwd[x2]]
                return sorted((y for y in pool if ch[y] == cg[x]), key=h_rank.__getitem__)
        return by_color.get(cg[x], [])

    def solve(k: int) -> bool:
        if k == len(order):
            return True
        x = order[k]
        for y in candidates(x):
            if y in back or not consistent(x, y):
                continue
            fwd[x] = y
            back[y] = x
            if solve(k + 1):
                return True
            del fwd[x]
            del back[y]
        return False

    return dict(fwd) if solve(0) else None


def _full_shape(G: SLabeledGraph) -> _Shape:
    return _Shape(G.vertices, dict(G.tau), {v: dict(G.out[v]) for v in G.vertices})


def _scg_shape(G: SignedColoredGraph, with_beta: bool = True) -> _Shape:
    out = {v: {x: (c if with_beta else 1) for x, c in G.adjacency[v].items()} for v in G.vertices}
    return _Shape(G.vertices, dict(G.tau), out)


def find_isomorphism(G: SLabeledGraph, H: SLabeledGraph,
                     fixed: Mapping[str, str] | None = None) -> dict[str, str] | None:
    """Bijection preserving tau and every weight m(u, v), or None."""
    return _match(_full_shape(G), _full_shape(H), fixed)


def find_simple_isomorphism(G: SLabeledGraph | SignedColoredGraph,
                            H: SLabeledGraph | SignedColoredGraph,
                            fixed: Mapping[str, str] | None = None) -> dict[str, str] | None:
    """Bijection preserving tau and simple edges only (arcs are ignored)."""
    g = simple_part(G) if isinstance(G, SLabeledGraph) else G
    h = simple_part(H) if isinstance(H, SLabeledGraph) else H
    return _match(_scg_shape(g, False), _scg_shape(h, False), fixed)


def find_scg_isomorphism(G: SignedColoredGraph, H: SignedColoredGraph,
                         fixed: Mapping[str, str] | None = None) -> dict[str, str] | None:
    """Bijection preserving tau, edges and edge colours."""
    return _match(_scg_shape(G), _scg_shape(H), fixed)
