"""Exhaustive search for simple parts of molecules, up to isomorphism.

Graphs are grown from a single seed vertex.  At each step the first vertex
with an unmet bonding-rule obligation (a bond (i, j) with i in tau(u),
j not in tau(u), and no activating edge at u) is resolved in every possible
way: by an edge to an existing vertex, or by a new vertex with a compatible
tau-invariant.  Every edge of a molecule activates some bond, so closing
all obligations reaches every molecule containing the seed.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

from .colored import SignedColoredGraph, beta_from_tau, edge_key
from .deg import build_G_lambda, check_deg_axioms
from .errors import DomainError
from .iso import find_simple_isomorphism
from .tableaux import Partition, hook_length_count, partitions
from .tau import TauSet, bonded, contains, flip, tau_elements

log = logging.getLogger(__name__)

RULE_FLAGS = ("br", "cr", "axiom4", "axiom5")


@dataclass(frozen=True)
class SearchConfig:
    rank: int
    max_vertices: int | None = None
    rules: frozenset[str] = frozenset({"br", "cr"})
    cache_size: int = 4096

    def __post_init__(self):
        if self.rank < 1:
            raise DomainError("rank must be at least 1")
        rules = frozenset(r.lower() for r in self.rules)
        unknown = rules - set(RULE_FLAGS)
        if unknown:
            raise DomainError(f"unknown rule flags: {sorted(unknown)}")
        object.__setattr__(self, "rules", rules | {"br", "cr"})
        if self.max_vertices is None:
            object.__setattr__(self, "max_vertices", default_cap(self.rank))
        if self.max_vertices < 1:
            raise DomainError("max_vertices must be at least 1")


def default_cap(rank: int) -> int:
    return 2 * max(hook_length_count(lam) for lam in partitions(rank + 1))


@dataclass
class SearchStats:
    nodes: int = 0
    saturated: int = 0
    cap_hits: int = 0
    rejected: int = 0

    def merge(self, other: "SearchStats") -> None:
        self.nodes += other.nodes
        self.saturated += other.saturated
        self.cap_hits += other.cap_hits
        self.rejected += other.rejected


@dataclass
class ClassificationResult:
    rank: int
    classes: list[SignedColoredGraph]
    matches: list[Partition | None]
    saturated: bool
    stats: SearchStats = field(default_factory=SearchStats)

    @property
    def cap_hit(self) -> bool:
        return self.stats.cap_hits > 0


class _Partial:
    """Mutable growing graph; undo is done by the caller."""

    def __init__(self, rank: int, seed: TauSet):
        self.rank = rank
        self.tau: list[TauSet] = [seed]
        self.adj: list[set[int]] = [set()]
        self.side: list[int] = [0]

    def activators(self, u: int, i: int, j: int) -> int:
        tu = self.tau[u]
        return sum(1 for x in self.adj[u] if _activates(tu, self.tau[x], i, j))

    def open_obligation(self) -> tuple[int, int, int] | None:
        for u, tu in enumerate(self.tau):
            for a in range(1, self.rank):
                for i, j in ((a, a + 1), (a + 1, a)):
                    if contains(tu, i) and not contains(tu, j) and not self.activators(u, i, j):
                        return u, i, j
        return None

    def edge_ok(self, u: int, x: int, tx: TauSet) -> bool:
        """CR on the new edge and no bond activated twice at either end."""
        tu = self.tau[u]
        if not _cr(tu, tx):
            return False
        for a in range(1, self.rank):
            for i, j in ((a, a + 1), (a + 1, a)):
                if _activates(tu, tx, i, j):
                    if self.activators(u, i, j):
                        return False
                    if x >= 0 and self.activators(x, j, i):
                        return False
        return True

    def window_overflow(self, u: int) -> bool:
        """Some window component through u is larger than any allowed shape."""
        n = self.rank
        for ncolors, limit in ((2, 3), (3, 6)):
            for first in range(1, n - ncolors + 1):
                mask = sum(1 << (first + c) for c in range(ncolors))
                seen = {u}
                stack = [u]
                while stack:
                    a = stack.pop()
                    for b in self.adj[a]:
                        if b not in seen and beta_from_tau(self.tau[a], self.tau[b], n) & mask:
                            seen.add(b)
                            stack.append(b)
                if len(seen) > limit:
                    return True
        return False


def _activates(tu: TauSet, tv: TauSet, i: int, j: int) -> bool:
    """Edge activates bond (i, j) with i on u's side."""
    return contains(tu, i) and not contains(tv, i) and contains(tv, j) and not contains(tu, j)


def _cr(tu: TauSet, tv: TauSet) -> bool:
    left = tau_elements(tu & ~tv)
    right = tau_elements(tv & ~tu)
    if not left or not right:
        return False
    return all(bonded(i, j) for i in left for j in right)


def _to_graph(p: _Partial) -> SignedColoredGraph:
    ids = [f"v{k}" for k in range(len(p.tau))]
    tau = {ids[k]: t for k, t in enumerate(p.tau)}
    beta = {}
    for u, nbrs in enumerate(p.adj):
        for x in nbrs:
            if u < x:
                beta[edge_key(ids[u], ids[x])] = beta_from_tau(p.tau[u], p.tau[x], p.rank)
    return SignedColoredGraph(p.rank, tuple(ids), tau, beta)


def flip_graph(G: SignedColoredGraph) -> SignedColoredGraph:
    tau = {v: flip(t, G.rank) for v, t in G.tau.items()}
    beta = {e: beta_from_tau(tau[e[0]], tau[e[1]], G.rank) for e in G.beta}
    return SignedColoredGraph(G.rank, G.vertices, tau, beta)


class _ClassStore:
    """Saturated graphs deduplicated up to simple-part isomorphism and flip."""

    def __init__(self):
        self.buckets: dict[tuple, list[int]] = {}
        self.reps: list[SignedColoredGraph] = []

    @staticmethod
    def _key(G: SignedColoredGraph) -> tuple:
        return (len(G.vertices), len(G.beta), tuple(sorted(G.tau.values())))

    def add(self, G: SignedColoredGraph) -> bool:
        for H in (G, flip_graph(G)):
            for k in self.buckets.get(self._key(H), ()):
                if find_simple_isomorphism(H, self.reps[k]) is not None:
                    return False
        self.buckets.setdefault(self._key(G), []).append(len(self.reps))
        self.reps.append(G)
        return True


def _passes_axioms(G: SignedColoredGraph, rules: frozenset[str]) -> bool:
    if not ({"axiom4", "axiom5"} & rules):
        return True
    rep = check_deg_axioms(G, 5)
    return all(rep.axiom_passed(k) for k, flag in ((4, "axiom4"), (5, "axiom5")) if flag in rules)


def _search_seed(cfg: SearchConfig, seed: TauSet) -> tuple[list[SignedColoredGraph], SearchStats]:
    stats = SearchStats()
    store = _ClassStore()
    p = _Partial(cfg.rank, seed)
    n = cfg.rank
    # window components of a molecule are standard graphs, so their size is bounded
    prune = "axiom4" in cfg.rules

    def candidates_new(tu: TauSet, i: int, j: int):
        for t in range(0, 1 << (n + 1), 2):
            if contains(t, j) and not contains(t, i) and _cr(tu, t):
                yield t

    def grow() -> None:
        stats.nodes += 1
        need = p.open_obligation()
        if need is None:
            stats.saturated += 1
            G = _to_graph(p)
            if _passes_axioms(G, cfg.rules):
                store.add(G)
            else:
                stats.rejected += 1
            return
        u, i, j = need
        tu = p.tau[u]
        for x in range(len(p.tau)):
            tx = p.tau[x]
            if x == u or x in p.adj[u] or p.side[x] == p.side[u]:
                continue
            if not (contains(tx, j) and not contains(tx, i)):
                continue
            if not p.edge_ok(u, x, tx):
                continue
            p.adj[u].add(x)
            p.adj[x].add(u)
            if prune and p.window_overflow(u):
                stats.rejected += 1
            else:
                grow()
            p.adj[u].discard(x)
            p.adj[x].discard(u)
        for t in candidates_new(tu, i, j):
            if not p.edge_ok(u, -1, t):
                continue
            if len(p.tau) >= cfg.max_vertices:
                stats.cap_hits += 1
                continue
            x = len(p.tau)
            p.tau.append(t)
            p.adj.append({u})
            p.side.append(1 - p.side[u])
            p.adj[u].add(x)
            if prune and p.window_overflow(u):
                stats.rejected += 1
            else:
                grow()
            p.adj[u].discard(x)
            p.tau.pop()
            p.adj.pop()
            p.side.pop()

    grow()
    return store.reps, stats


def seeds(rank: int) -> list[TauSet]:
    """Tau-values up to the diagram flip, smallest mask of each orbit."""
    out = []
    for t in range(0, 1 << (rank + 1), 2):
        if t <= flip(t, rank):
            out.append(t)
    return out


def match_against_catalog(G: SignedColoredGraph, m: int) -> Partition | None:
    """The partition lambda of m whose G_lambda matches G's simple part, if any."""
    taus = sorted(G.tau.values())
    for lam in partitions(m):
        if hook_length_count(lam) != len(G.vertices):
            continue
        L = build_G_lambda(lam)
        if sorted(L.tau.values()) != taus or len(L.beta) != len(G.beta):
            continue
        if find_simple_isomorphism(G, L) is not None:
            return lam
    return None


def enumerate_molecule_simple_parts(cfg: SearchConfig, jobs: int = 1) -> ClassificationResult:
    seed_list = seeds(cfg.rank)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            per_seed = list(pool.map(_search_seed, [cfg] * len(seed_list), seed_list))
    else:
        per_seed = [_search_seed(cfg, s) for s in seed_list]
    store = _ClassStore()
    stats = SearchStats()
    for seed, (reps, st) in zip(seed_list, per_seed):
        log.info("seed %s: %d nodes, %d saturated, %d cap hits",
                 tau_elements(seed), st.nodes, st.saturated, st.cap_hits)
        stats.merge(st)
        for G in reps:
            store.add(G)
    matches = [match_against_catalog(G, cfg.rank + 1) for G in store.reps]
    return ClassificationResult(cfg.rank, store.reps, matches, stats.cap_hits == 0, stats)
