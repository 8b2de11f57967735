"""Standard dual equivalence graphs G_lambda and the DEG axiom checker."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .colored import SignedColoredGraph, beta_from_tau, edge_key
from .errors import DomainError, PreconditionError
from .iso import find_scg_isomorphism
from .tableaux import (
    Partition,
    Tableau,
    check_partition,
    descent_tau,
    dual_knuth_neighbors,
    partitions,
    standard_tableaux,
    tableau_id,
)
from .tau import contains, full_mask


def build_G_lambda(shape) -> SignedColoredGraph:
    """Vertices SYT(shape), edges dual Knuth moves, beta computed from tau."""
    shape = check_partition(shape)
    return _build(shape)


@lru_cache(maxsize=None)
def _build(shape: Partition) -> SignedColoredGraph:
    rank = sum(shape) - 1
    tabs = standard_tableaux(shape)
    ids = [tableau_id(T) for T in tabs]
    tau = {tableau_id(T): descent_tau(T) for T in tabs}
    beta = {}
    for T in tabs:
        t = tableau_id(T)
        for U, _, _ in dual_knuth_neighbors(T):
            u = tableau_id(U)
            beta[edge_key(t, u)] = beta_from_tau(tau[t], tau[u], rank)
    return SignedColoredGraph(rank, tuple(ids), tau, beta)


def standard_catalog(m: int) -> dict[Partition, SignedColoredGraph]:
    return {lam: build_G_lambda(lam) for lam in partitions(m)}


# -- axioms ------------------------------------------------------------------

@dataclass
class DegAxiomReport:
    upto: int
    witnesses: dict[int, list[dict]] = field(default_factory=dict)

    def axiom_passed(self, k: int) -> bool:
        return not self.witnesses.get(k)

    @property
    def passed(self) -> bool:
        return all(self.axiom_passed(k) for k in range(1, self.upto + 1))

    def to_json(self) -> dict:
        return {
            "upto": self.upto,
            "status": "pass" if self.passed else "fail",
            "axioms": {
                str(k): {"status": "pass" if self.axiom_passed(k) else "fail",
                         "witnesses": self.witnesses.get(k, [])}
                for k in range(1, self.upto + 1)
            },
        }


def _window(G: SignedColoredGraph, comp: list[str], first: int, ncolors: int) -> SignedColoredGraph:
    """Component of the colors first..first+ncolors-1, shifted down to start at color 1."""
    color_mask = sum(1 << (first + c) for c in range(ncolors))
    tau_mask_ = sum(1 << (first + c) for c in range(ncolors + 1))
    keep = set(comp)
    tau = {v: (G.tau[v] & tau_mask_) >> (first - 1) for v in comp}
    beta = {
        e: (colors & color_mask) >> (first - 1)
        for e, colors in G.beta.items()
        if e[0] in keep and e[1] in keep and colors & color_mask
    }
    return SignedColoredGraph(ncolors + 1, tuple(comp), tau, beta)


def _colored_components(G: SignedColoredGraph, color_mask: int) -> list[list[str]]:
    sub = SignedColoredGraph(
        G.rank, G.vertices, dict(G.tau),
        {e: c for e, c in G.beta.items() if c & color_mask},
    )
    return sub.components()


@lru_cache(maxsize=None)
def window_catalog(ncolors: int) -> tuple[SignedColoredGraph, ...]:
    """Allowed component shapes for ncolors consecutive colors.

    These are the graphs G_lambda for lambda of size ncolors + 2, whose colors
    are exactly 1..ncolors.
    """
    return tuple(build_G_lambda(lam) for lam in partitions(ncolors + 2))


def _matches_catalog(W: SignedColoredGraph, ncolors: int) -> bool:
    for S in window_catalog(ncolors):
        if len(S.vertices) == len(W.vertices) and find_scg_isomorphism(W, S) is not None:
            return True
    return False


def _axiom1(G, n, bad):
    for w in G.vertices:
        t = G.tau[w]
        for i in range(1, n):
            admits = contains(t, i) != contains(t, i + 1)
            nbrs = G.colored_neighbors(w, i)
            if admits != bool(nbrs) or len(nbrs) > 1:
                bad.append({"vertex": w, "color": i, "admits": admits, "neighbors": sorted(nbrs)})


def _axiom2_3(G, n, bad2, bad3):
    for (a, b), colors in G.beta.items():
        for i in range(1, n):
            if not contains(colors, i):
                continue
            ta, tb = G.tau[a], G.tau[b]
            diff = ta ^ tb
            ok = contains(diff, i) and contains(diff, i + 1)
            ok = ok and all(not contains(diff, h) for h in range(1, n + 1) if h < i - 1 or h > i + 2)
            if not ok:
                bad2.append({"edge": [a, b], "color": i})
            for w in (ta, tb):
                if i > 1 and contains(diff, i - 1) and contains(w, i - 1) != contains(w, i + 1):
                    bad3.append({"edge": [a, b], "color": i, "label": i - 1})
                    break
                if i + 2 <= n and contains(diff, i + 2) and contains(w, i + 2) != contains(w, i):
                    bad3.append({"edge": [a, b], "color": i, "label": i + 2})
                    break


def _axiom4(G, n, bad):
    for ncolors in (2, 3):
        # every window of consecutive colors inside a_1..a_{n-1}
        for i in range(1, n - ncolors + 1):
            mask = sum(1 << (i + c) for c in range(ncolors))
            for comp in _colored_components(G, mask):
                W = _window(G, comp, i, ncolors)
                if not _matches_catalog(W, ncolors):
                    bad.append({"colors": list(range(i, i + ncolors)), "component": comp})


def _axiom5(G, n, bad):
    for x in G.vertices:
        for w, c1 in G.adjacency[x].items():
            for y, c2 in G.adjacency[x].items():
                if y == w:
                    continue
                for i in range(1, n):
                    if not contains(c1, i):
                        continue
                    for j in range(1, n):
                        if abs(i - j) < 3 or not contains(c2, j):
                            continue
                        ok = any(
                            contains(cv, j) and contains(G.adjacency[v].get(y, 0), i)
                            for v, cv in G.adjacency[w].items()
                        )
                        if not ok:
                            bad.append({"path": [w, x, y], "colors": [i, j]})


def _axiom6(G, n, bad):
    for i in range(1, n):
        upto = full_mask(i)
        below = full_mask(i - 1) if i > 1 else 0
        for comp in _colored_components(G, upto):
            sub = G.induced(comp)
            pieces = _colored_components(sub, below)
            if len(pieces) < 2:
                continue
            where = {v: k for k, piece in enumerate(pieces) for v in piece}
            joined = set()
            for (a, b), colors in sub.beta.items():
                if contains(colors, i) and where[a] != where[b]:
                    joined.add(frozenset((where[a], where[b])))
            for p, q in combinations(range(len(pieces)), 2):
                if frozenset((p, q)) not in joined:
                    bad.append({"color": i, "pieces": [pieces[p], pieces[q]]})


def check_deg_axioms(G: SignedColoredGraph, upto: int = 6) -> DegAxiomReport:
    if upto not in (5, 6):
        raise DomainError("upto must be 5 or 6")
    n = G.rank
    rep = DegAxiomReport(upto, {k: [] for k in range(1, upto + 1)})
    _axiom1(G, n, rep.witnesses[1])
    _axiom2_3(G, n, rep.witnesses[2], rep.witnesses[3])
    _axiom4(G, n, rep.witnesses[4])
    _axiom5(G, n, rep.witnesses[5])
    if upto == 6:
        _axiom6(G, n, rep.witnesses[6])
    return rep


# -- restriction -------------------------------------------------------------

@dataclass
class ScgRestriction:
    graph: SignedColoredGraph
    components: list[list[str]]

    def induced(self, G: SignedColoredGraph) -> list[SignedColoredGraph]:
        return [G.induced(c) for c in self.components]

    def restricted(self) -> list[SignedColoredGraph]:
        return [self.graph.induced(c) for c in self.components]


def restrict_scg(G: SignedColoredGraph, k: int) -> ScgRestriction:
    """Restriction to type k: tau cut to 1..k-1, colors to a_1..a_{k-2}.

    Edges left without colors are dropped.
    """
    if not 0 <= k < G.type_rank:
        raise DomainError(f"k must satisfy 0 <= k < {G.type_rank}, got {k}")
    rank = max(k - 1, 0)
    gens = full_mask(rank)
    colors = full_mask(rank - 1) if rank > 1 else 0
    beta = {e: c & colors for e, c in G.beta.items() if c & colors}
    R = SignedColoredGraph(rank, G.vertices, {v: t & gens for v, t in G.tau.items()}, beta)
    return ScgRestriction(R, R.components())


# -- morphisms onto G_lambda -------------------------------------------------

@dataclass
class StandardMorphism:
    shape: Partition
    mapping: dict[str, Tableau]
    surjective: bool
    isomorphism: bool


def _propagate(G: SignedColoredGraph, comp: list[str], seed_image: str,
               L: SignedColoredGraph) -> dict[str, str] | None:
    image = {comp[0]: seed_image}
    stack = [comp[0]]
    while stack:
        w = stack.pop()
        T = image[w]
        for x, colors in G.adjacency[w].items():
            targets = set()
            for i in range(1, G.rank):
                if contains(colors, i):
                    nb = L.colored_neighbors(T, i)
                    if len(nb) != 1:
                        return None
                    targets.add(nb[0])
            if len(targets) != 1:
                return None
            U = targets.pop()
            if L.tau[U] != G.tau[x] or L.adjacency[T].get(U) != colors:
                return None
            if x in image:
                if image[x] != U:
                    return None
            else:
                image[x] = U
                stack.append(x)
    return image


def morphism_to_standard(G: SignedColoredGraph) -> StandardMorphism | None:
    """A tau- and beta-preserving surjection onto some G_lambda, if one exists.

    Each connected component is mapped by propagation from its first vertex.
    """
    from .tableaux import parse_tableau_id

    weak = check_deg_axioms(G, 5)
    if not weak.passed:
        raise PreconditionError("input is not a weak dual equivalence graph", weak)
    if not G.vertices:
        return None
    comps = G.components()
    for lam in partitions(G.rank + 1):
        L = build_G_lambda(lam)
        total: dict[str, str] = {}
        for comp in comps:
            seed_tau = G.tau[comp[0]]
            found = None
            for T in L.vertices:
                if L.tau[T] != seed_tau:
                    continue
                found = _propagate(G, comp, T, L)
                if found is not None:
                    break
            if found is None:
                break
            total.update(found)
        else:
            surjective = set(total.values()) == set(L.vertices)
            if not surjective:
                continue
            bijective = len(G.vertices) == len(L.vertices)
            iso = bijective and check_deg_axioms(G, 6).passed
            return StandardMorphism(lam, {v: parse_tableau_id(t) for v, t in total.items()},
                                    surjective, iso)
    return None
