"""Admissible S-labeled graphs of type A and the molecular rule checkers.

A graph is a vertex list, a tau-invariant per vertex and a sparse map of
non-negative integer weights on ordered vertex pairs.  Restricted graphs
keep the ambient rank but carry a mask of active generators; bonds and
the local polygon rules only range over those.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import DomainError, StructureError
from .tau import (
    TauSet,
    bonded,
    bonds,
    contains,
    full_mask,
    is_subset,
    tau_elements,
)

RULES = ("SR", "CR", "BR", "LPR2", "LPR3")
ADMISSIBILITY_RULES = ("admissibility-1", "admissibility-2", "admissibility-3")


@dataclass(frozen=True)
class SLabeledGraph:
    rank: int
    vertices: tuple[str, ...]
    tau: Mapping[str, TauSet]
    weights: Mapping[tuple[str, str], int]
    generators: TauSet | None = None

    def __post_init__(self):
        if self.rank < 0:
            raise StructureError(f"rank must be non-negative, got {self.rank}")
        verts = tuple(self.vertices)
        if len(set(verts)) != len(verts):
            raise StructureError("duplicate vertex ids")
        ambient = full_mask(self.rank)
        gens = ambient if self.generators is None else self.generators
        if gens & ~ambient:
            raise StructureError("generator mask outside 1..rank")
        tau = dict(self.tau)
        if set(tau) != set(verts):
            missing = sorted(set(verts) ^ set(tau))
            raise StructureError(f"tau keys do not match vertices: {missing}")
        for v, t in tau.items():
            if t & ~gens:
                raise StructureError(f"tau of {v!r} uses inactive generators")
        weights = {}
        for (u, v), w in self.weights.items():
            if u not in tau or v not in tau:
                raise StructureError(f"weight references unknown vertex in {(u, v)!r}")
            if not isinstance(w, int) or w < 0:
                raise StructureError(f"weight on {(u, v)!r} must be a non-negative integer")
            if w:
                weights[u, v] = w
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "tau", MappingProxyType(tau))
        object.__setattr__(self, "weights", MappingProxyType(weights))

    def __reduce__(self):
        return (type(self), (self.rank, self.vertices, dict(self.tau), dict(self.weights), self.generators))

    def m(self, u: str, v: str) -> int:
        return self.weights.get((u, v), 0)

    @cached_property
    def out(self) -> dict[str, dict[str, int]]:
        adj = {v: {} for v in self.vertices}
        for (u, v), w in self.weights.items():
            adj[u][v] = w
        return adj

    @cached_property
    def into(self) -> dict[str, dict[str, int]]:
        adj = {v: {} for v in self.vertices}
        for (u, v), w in self.weights.items():
            adj[v][u] = w
        return adj

    @cached_property
    def neighbors(self) -> dict[str, list[str]]:
        """Vertices joined to each vertex by a nonzero weight either way."""
        return {
            v: sorted(set(self.out[v]) | set(self.into[v]), key=self._order.__getitem__)
            for v in self.vertices
        }

    @cached_property
    def _order(self) -> dict[str, int]:
        return {v: k for k, v in enumerate(self.vertices)}

    def simple_edges(self) -> list[tuple[str, str]]:
        """Unordered simple edges, each once, in vertex order."""
        order = self._order
        edges = []
        for (u, v) in self.weights:
            if order[u] < order[v] and (v, u) in self.weights:
                edges.append((u, v))
        edges.sort(key=lambda e: (order[e[0]], order[e[1]]))
        return edges

    def arcs(self) -> list[tuple[str, str]]:
        order = self._order
        found = [(u, v) for (u, v) in self.weights if (v, u) not in self.weights]
        found.sort(key=lambda e: (order[e[0]], order[e[1]]))
        return found

    def bonds(self) -> list[tuple[int, int]]:
        return list(bonds(self.rank, self.generators))

    def induced(self, keep: Iterable[str]) -> "SLabeledGraph":
        keep = set(keep)
        verts = tuple(v for v in self.vertices if v in keep)
        return SLabeledGraph(
            self.rank,
            verts,
            {v: self.tau[v] for v in verts},
            {(u, v): w for (u, v), w in self.weights.items() if u in keep and v in keep},
            self.generators,
        )


class EdgeKind(enum.Enum):
    SIMPLE = "simple"
    ARC = "arc"
    NONE = "none"


@dataclass(frozen=True)
class Edge:
    kind: EdgeKind
    # set for arcs only: the arc runs src -> dst
    src: str | None = None
    dst: str | None = None


@dataclass
class RuleReport:
    rule: str
    witnesses: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.witnesses

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_json(self) -> dict:
        return {"rule": self.rule, "status": self.status, "witnesses": self.witnesses}


def _require_vertex(G: SLabeledGraph, v: str) -> None:
    if v not in G.tau:
        raise StructureError(f"unknown vertex {v!r}")


def edge_kind(G: SLabeledGraph, u: str, v: str) -> Edge:
    _require_vertex(G, u)
    _require_vertex(G, v)
    if u == v:
        raise DomainError("edge_kind needs two distinct vertices")
    a, b = G.m(u, v), G.m(v, u)
    if a and b:
        return Edge(EdgeKind.SIMPLE)
    if a:
        return Edge(EdgeKind.ARC, u, v)
    if b:
        return Edge(EdgeKind.ARC, v, u)
    return Edge(EdgeKind.NONE)


def is_simple(G: SLabeledGraph, u: str, v: str) -> bool:
    return G.m(u, v) != 0 and G.m(v, u) != 0


def activates_taus(tu: TauSet, tv: TauSet, i: int, j: int) -> bool:
    """True when i and j split across the two tau-sets, one in each."""
    return (contains(tu, i) != contains(tv, i)
            and contains(tu, j) != contains(tv, j)
            and contains(tu, i) != contains(tu, j))


def activates(G: SLabeledGraph, edge: tuple[str, str], bond: tuple[int, int]) -> bool:
    u, v = edge
    _require_vertex(G, u)
    _require_vertex(G, v)
    if u == v or not is_simple(G, u, v):
        raise DomainError(f"{edge!r} is not a simple edge; only simple edges activate bonds")
    i, j = bond
    if not bonded(i, j):
        raise DomainError(f"{bond!r} is not a bond")
    return activates_taus(G.tau[u], G.tau[v], i, j)


def _check_pattern_args(i: int, j: int, r: int) -> None:
    if i == j:
        raise DomainError("alternating paths need distinct generators")
    if r < 1:
        raise DomainError("path length must be at least 1")


def _layer_ok(t: TauSet, i: int, j: int, k: int) -> bool:
    """Tau pattern at interior position k of an alternating path of type (i, j)."""
    if k % 2:
        return contains(t, i) and not contains(t, j)
    return contains(t, j) and not contains(t, i)


def alternating_path_count(G: SLabeledGraph, u: str, v: str, i: int, j: int, r: int) -> int:
    """Weighted count of alternating paths of type (i, j) and length r from u to v.

    Interior vertices are filtered by the tau pattern; the endpoints are not.
    """
    _require_vertex(G, u)
    _require_vertex(G, v)
    _check_pattern_args(i, j, r)
    layer = {u: 1}
    for k in range(1, r):
        nxt: dict[str, int] = {}
        for y, acc in layer.items():
            for z, w in G.out[y].items():
                if _layer_ok(G.tau[z], i, j, k):
                    nxt[z] = nxt.get(z, 0) + acc * w
        layer = nxt
        if not layer:
            return 0
    return sum(acc * G.out[y].get(v, 0) for y, acc in layer.items())


def alternating_paths(G: SLabeledGraph, u: str, v: str, i: int, j: int, r: int) -> Iterator[tuple[str, ...]]:
    """Every vertex sequence u, v_1, ..., v_{r-1}, v with nonzero weight product."""
    _check_pattern_args(i, j, r)

    def extend(path):
        k = len(path)
        last = path[-1]
        if k == r:
            if v in G.out[last]:
                yield path + (v,)
            return
        for z in G.out[last]:
            if _layer_ok(G.tau[z], i, j, k):
                yield from extend(path + (z,))

    yield from extend((u,))


def path_weight(G: SLabeledGraph, path: Sequence[str]) -> int:
    w = 1
    for a, b in zip(path, path[1:]):
        w *= G.m(a, b)
    return w


# -- admissibility -----------------------------------------------------------

def _two_coloring_conflicts(G: SLabeledGraph) -> list[tuple[str, str]]:
    color: dict[str, int] = {}
    bad = []
    for root in G.vertices:
        if root in color:
            continue
        color[root] = 0
        stack = [root]
        while stack:
            x = stack.pop()
            for y in G.neighbors[x]:
                if y not in color:
                    color[y] = 1 - color[x]
                    stack.append(y)
                elif color[y] == color[x] and (y, x) not in bad:
                    bad.append((x, y))
    return bad


def check_admissible(G: SLabeledGraph) -> list[RuleReport]:
    """One report per admissibility condition (bipartite, zero on inclusion, symmetry)."""
    bip = RuleReport("admissibility-1")
    for x, y in _two_coloring_conflicts(G):
        bip.witnesses.append({"vertices": [x, y], "detail": "odd cycle through this edge"})
    zero = RuleReport("admissibility-2")
    sym = RuleReport("admissibility-3")
    for (u, v), w in G.weights.items():
        tu, tv = G.tau[u], G.tau[v]
        if is_subset(tu, tv):
            zero.witnesses.append({"vertices": [u, v], "weight": w,
                                   "detail": "tau(u) is contained in tau(v) but m(u,v) != 0"})
        elif not is_subset(tv, tu) and G.m(v, u) != w:
            # report each unordered pair once
            if G.m(v, u) == 0 or G._order[u] < G._order[v]:
                sym.witnesses.append({"vertices": [u, v], "weight": w, "reverse": G.m(v, u),
                                      "detail": "incomparable tau but m(u,v) != m(v,u)"})
    return [bip, zero, sym]


def is_admissible(G: SLabeledGraph) -> bool:
    return all(r.passed for r in check_admissible(G))


# -- molecular rules ---------------------------------------------------------

def _check_sr(G: SLabeledGraph) -> RuleReport:
    rep = RuleReport("SR")
    for u, v in G.simple_edges():
        if G.m(u, v) != 1 or G.m(v, u) != 1:
            rep.witnesses.append({"vertices": [u, v], "weight": G.m(u, v), "reverse": G.m(v, u)})
    return rep


def _check_cr(G: SLabeledGraph) -> RuleReport:
    rep = RuleReport("CR")
    for (u, v) in sorted(G.weights, key=lambda e: (G._order[e[0]], G._order[e[1]])):
        tu, tv = G.tau[u], G.tau[v]
        left = tau_elements(tu & ~tv)
        right = tau_elements(tv & ~tu)
        bad = [(i, j) for i in left for j in right if not bonded(i, j)]
        if bad:
            rep.witnesses.append({"vertices": [u, v], "unbonded": [list(p) for p in bad]})
    return rep


def br_count(G: SLabeledGraph, u: str, i: int, j: int) -> int:
    """Edges at u activating bond (i, j); only simple edges can activate."""
    tu = G.tau[u]
    n = 0
    for x in G.neighbors[u]:
        if is_simple(G, u, x) and activates_taus(tu, G.tau[x], i, j):
            n += 1
    return n


def _check_br(G: SLabeledGraph) -> RuleReport:
    rep = RuleReport("BR")
    for u in G.vertices:
        tu = G.tau[u]
        for a, b in G.bonds():
            for i, j in ((a, b), (b, a)):
                if contains(tu, i) and not contains(tu, j):
                    n = br_count(G, u, i, j)
                    if n != 1:
                        rep.witnesses.append({"vertices": [u], "bond": [i, j], "count": n})
    return rep


def _two_step_totals(G: SLabeledGraph, u: str, i: int, j: int) -> dict[str, int]:
    acc: dict[str, int] = {}
    for z, w1 in G.out[u].items():
        if _layer_ok(G.tau[z], i, j, 1):
            for v, w2 in G.out[z].items():
                acc[v] = acc.get(v, 0) + w1 * w2
    return acc


def lpr2_instances(G: SLabeledGraph) -> Iterator[tuple[str, str, int, int]]:
    """(u, v, i, j) with i < j meeting the LPR2 hypotheses and some path of either type."""
    gens = tau_elements(G.generators)
    for u in G.vertices:
        tu = G.tau[u]
        for i, j in combinations(gens, 2):
            if not (contains(tu, i) and contains(tu, j)):
                continue
            ends = set(_two_step_totals(G, u, i, j)) | set(_two_step_totals(G, u, j, i))
            for v in sorted(ends, key=G._order.__getitem__):
                tv = G.tau[v]
                if contains(tv, i) or contains(tv, j) or not tv & ~tu:
                    continue
                yield u, v, i, j


def _check_lpr2(G: SLabeledGraph) -> RuleReport:
    rep = RuleReport("LPR2")
    for u, v, i, j in lpr2_instances(G):
        a = alternating_path_count(G, u, v, i, j, 2)
        b = alternating_path_count(G, u, v, j, i, 2)
        if a != b:
            rep.witnesses.append({"vertices": [u, v], "generators": [i, j], "N_ij": a, "N_ji": b})
    return rep


def a4_paths(G: SLabeledGraph) -> list[tuple[int, int, int, int]]:
    """Copies k-i-j-l of A_4 in the active Coxeter graph, one orientation each."""
    out = []
    for k in range(1, G.rank - 2):
        quad = (k, k + 1, k + 2, k + 3)
        if all(contains(G.generators, g) for g in quad):
            out.append(quad)
    return out


def lpr3_instances(G: SLabeledGraph) -> Iterator[tuple[str, str, int, int, int, int]]:
    for k, i, j, l in a4_paths(G):
        for u in G.vertices:
            tu = G.tau[u]
            if not (contains(tu, i) and contains(tu, j)) or contains(tu, k) or contains(tu, l):
                continue
            ends: set[str] = set()
            for a, b in ((i, j), (j, i)):
                layer = {z for z in G.out[u] if _layer_ok(G.tau[z], a, b, 1)}
                layer2 = {y for z in layer for y in G.out[z] if _layer_ok(G.tau[y], a, b, 2)}
                ends.update(v for y in layer2 for v in G.out[y])
            for v in sorted(ends, key=G._order.__getitem__):
                tv = G.tau[v]
                if contains(tv, i) or contains(tv, j) or not (contains(tv, k) and contains(tv, l)):
                    continue
                yield u, v, k, i, j, l


def _check_lpr3(G: SLabeledGraph) -> RuleReport:
    rep = RuleReport("LPR3")
    for u, v, k, i, j, l in lpr3_instances(G):
        a = alternating_path_count(G, u, v, i, j, 3)
        b = alternating_path_count(G, u, v, j, i, 3)
        if a != b:
            rep.witnesses.append({"vertices": [u, v], "generators": [k, i, j, l], "N_ij": a, "N_ji": b})
    return rep


_CHECKERS = {"SR": _check_sr, "CR": _check_cr, "BR": _check_br, "LPR2": _check_lpr2, "LPR3": _check_lpr3}


def check_molecular(G: SLabeledGraph, rules: Iterable[str] = RULES) -> list[RuleReport]:
    """Run the requested molecular rules; one report per rule, in canonical order."""
    wanted = {r.upper() for r in rules}
    unknown = wanted - set(RULES)
    if unknown:
        raise DomainError(f"unknown rules: {sorted(unknown)}")
    return [_CHECKERS[r](G) for r in RULES if r in wanted]


def is_molecular(G: SLabeledGraph, rules: Iterable[str] = RULES) -> bool:
    return all(r.passed for r in check_molecular(G, rules))


# -- restriction and components ---------------------------------------------

def restrict(G: SLabeledGraph, J: Iterable[int] | TauSet) -> SLabeledGraph:
    """Parabolic restriction to the generators J (a mask or an iterable)."""
    mask = J if isinstance(J, int) else sum(1 << j for j in set(J))
    if mask & ~full_mask(G.rank):
        raise DomainError(f"J must lie in 1..{G.rank}")
    gens = G.generators & mask
    tau = {v: t & gens for v, t in G.tau.items()}
    weights = {
        (u, v): w for (u, v), w in G.weights.items()
        if not is_subset(tau[u], tau[v])
    }
    return SLabeledGraph(G.rank, G.vertices, tau, weights, gens)


def simple_component_sets(G: SLabeledGraph) -> list[list[str]]:
    parent = {v: v for v in G.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in G.simple_edges():
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    groups: dict[str, list[str]] = {}
    for v in G.vertices:
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values(), key=min)


def simple_components(G: SLabeledGraph) -> list[SLabeledGraph]:
    """Induced subgraphs on the simple-edge components, internal arcs kept."""
    return [G.induced(c) for c in simple_component_sets(G)]


def brute_force_path_count(G: SLabeledGraph, u: str, v: str, i: int, j: int, r: int) -> int:
    """Sum over all vertex sequences; exponential, for cross-checking only."""
    _check_pattern_args(i, j, r)
    total = 0
    for mid in product(G.vertices, repeat=r - 1):
        if not all(_layer_ok(G.tau[z], i, j, k) for k, z in enumerate(mid, 1)):
            continue
        total += path_weight(G, (u, *mid, v))
    return total
