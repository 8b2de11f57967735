"""Signed colored graphs: undirected, tau-labelled, edges carrying bond colors.

Bond ``a_i = (i, i + 1)`` is stored as bit ``i`` of an edge's beta mask.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import StructureError
from .labeled import SLabeledGraph, activates_taus
from .tau import TauSet, contains, full_mask, tau_elements

BetaSet = int


def edge_key(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class SignedColoredGraph:
    rank: int
    vertices: tuple[str, ...]
    tau: Mapping[str, TauSet]
    beta: Mapping[tuple[str, str], BetaSet]

    def __post_init__(self):
        verts = tuple(self.vertices)
        if len(set(verts)) != len(verts):
            raise StructureError("duplicate vertex ids")
        tau = dict(self.tau)
        if set(tau) != set(verts):
            raise StructureError("tau keys do not match vertices")
        ambient = full_mask(self.rank)
        for v, t in tau.items():
            if t & ~ambient:
                raise StructureError(f"tau of {v!r} outside 1..{self.rank}")
        bond_mask = full_mask(self.rank - 1) if self.rank > 1 else 0
        beta = {}
        for (a, b), colors in self.beta.items():
            if a not in tau or b not in tau:
                raise StructureError(f"edge references unknown vertex in {(a, b)!r}")
            if a == b:
                raise StructureError(f"loop at {a!r}")
            key = edge_key(a, b)
            if key in beta:
                raise StructureError(f"duplicate edge {key!r}")
            if colors & ~bond_mask:
                raise StructureError(f"beta of {key!r} uses bonds outside a_1..a_{self.rank - 1}")
            beta[key] = colors
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "tau", MappingProxyType(tau))
        object.__setattr__(self, "beta", MappingProxyType(beta))

    def __reduce__(self):
        return (type(self), (self.rank, self.vertices, dict(self.tau), dict(self.beta)))

    @property
    def type_rank(self) -> int:
        return self.rank + 1

    @cached_property
    def adjacency(self) -> dict[str, dict[str, BetaSet]]:
        adj = {v: {} for v in self.vertices}
        for (a, b), colors in self.beta.items():
            adj[a][b] = colors
            adj[b][a] = colors
        return adj

    def colored_neighbors(self, w: str, i: int) -> list[str]:
        return [x for x, colors in self.adjacency[w].items() if contains(colors, i)]

    def induced(self, keep: Iterable[str]) -> "SignedColoredGraph":
        keep = set(keep)
        verts = tuple(v for v in self.vertices if v in keep)
        return SignedColoredGraph(
            self.rank, verts, {v: self.tau[v] for v in verts},
            {e: c for e, c in self.beta.items() if e[0] in keep and e[1] in keep},
        )

    def components(self) -> list[list[str]]:
        seen: set[str] = set()
        comps = []
        for root in self.vertices:
            if root in seen:
                continue
            seen.add(root)
            comp, stack = [], [root]
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in self.adjacency[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            order = {v: k for k, v in enumerate(self.vertices)}
            comps.append(sorted(comp, key=order.__getitem__))
        return comps


def beta_from_tau(tu: TauSet, tv: TauSet, rank: int | None = None) -> BetaSet:
    """Bonds a_i with i in exactly one tau-set and i + 1 in exactly the other."""
    top = (tu | tv).bit_length() if rank is None else rank + 1
    out = 0
    for i in range(1, top):
        if activates_taus(tu, tv, i, i + 1):
            out |= 1 << i
    return out


def simple_part(G: SLabeledGraph) -> SignedColoredGraph:
    """Undirected simple edges of G labelled by the active bonds they activate."""
    beta = {}
    for u, v in G.simple_edges():
        colors = 0
        for i, j in G.bonds():
            if activates_taus(G.tau[u], G.tau[v], i, j):
                colors |= 1 << i
        beta[edge_key(u, v)] = colors
    return SignedColoredGraph(G.rank, G.vertices, dict(G.tau), beta)


def as_labeled(G: SignedColoredGraph) -> SLabeledGraph:
    """View as an S-labeled graph with weight 1 both ways on every edge."""
    weights = {}
    for a, b in G.beta:
        weights[a, b] = 1
        weights[b, a] = 1
    return SLabeledGraph(G.rank, G.vertices, dict(G.tau), weights)


def format_beta(colors: BetaSet) -> list[int]:
    return tau_elements(colors)
