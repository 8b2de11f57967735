"""Symmetric group, Bruhat order, Kazhdan-Lusztig polynomials and the KL W-graph.

Permutations are tuples in one-line notation on ``1..m``.  The W-graph is
built with tau = left descent set; simple edges inside a cell then agree
with dual Knuth moves on the RSK insertion tableau (checked for m <= 4 on
every build).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

from .errors import DomainError, ResourceError
from .labeled import SLabeledGraph, simple_components
from .tableaux import Partition, Tableau, rsk, shape_of
from .tau import TauSet, is_subset, tau_mask

Perm = tuple[int, ...]
Poly = tuple[int, ...]

MAX_M = 6
OVERRIDE_ENV = "WGRAPHS_ALLOW_LARGE"


def check_perm(w: Sequence[int]) -> Perm:
    w = tuple(w)
    if sorted(w) != list(range(1, len(w) + 1)):
        raise DomainError(f"not a permutation of 1..{len(w)}: {w}")
    return w


def inverse(w: Perm) -> Perm:
    inv = [0] * len(w)
    for pos, val in enumerate(w, 1):
        inv[val - 1] = pos
    return tuple(inv)


def length(w: Perm) -> int:
    return sum(1 for a in range(len(w)) for b in range(a + 1, len(w)) if w[a] > w[b])


def right_descents(w: Perm) -> TauSet:
    return tau_mask(i for i in range(1, len(w)) if w[i - 1] > w[i])


def left_descents(w: Perm) -> TauSet:
    """i such that i + 1 stands to the left of i in one-line notation."""
    return right_descents(inverse(w))


def left_mult(i: int, w: Perm) -> Perm:
    """s_i w: swap the values i and i + 1."""
    return tuple(i + 1 if x == i else i if x == i + 1 else x for x in w)


def right_mult(w: Perm, i: int) -> Perm:
    """w s_i: swap the entries in positions i and i + 1."""
    w = list(w)
    w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


def perm_id(w: Perm) -> str:
    return "".join(map(str, w)) if len(w) < 10 else ",".join(map(str, w))


def parse_perm_id(s: str) -> Perm:
    return check_perm(int(x) for x in (s.split(",") if "," in s else s))


def bruhat_leq(u: Sequence[int], w: Sequence[int]) -> bool:
    """Tableau criterion: sorted prefixes of u are dominated entrywise by those of w."""
    u, w = check_perm(u), check_perm(w)
    if len(u) != len(w):
        raise DomainError("permutations of different sizes")
    for k in range(1, len(u)):
        if any(a > b for a, b in zip(sorted(u[:k]), sorted(w[:k]))):
            return False
    return True


# -- polynomial helpers ------------------------------------------------------

def _trim(p: list[int]) -> Poly:
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _add_shifted(acc: list[int], p: Poly, shift: int, coeff: int = 1) -> None:
    if len(acc) < len(p) + shift:
        acc.extend([0] * (len(p) + shift - len(acc)))
    for k, c in enumerate(p):
        acc[k + shift] += coeff * c


def format_poly(p: Poly) -> str:
    terms = []
    for k, c in enumerate(p):
        if c:
            terms.append(str(c) if k == 0 else f"{'' if c == 1 else c}q" + (f"^{k}" if k > 1 else ""))
    return " + ".join(terms) or "0"


# -- KL table ----------------------------------------------------------------

class KLTable:
    """All P_{x,w} for S_m, computed column by column with the left recursion."""

    def __init__(self, m: int):
        if m < 1:
            raise DomainError("m must be positive")
        self.m = m
        perms = sorted(permutations(range(1, m + 1)), key=lambda w: (length(w), w))
        self.perms: list[Perm] = perms
        self.index = {w: k for k, w in enumerate(perms)}
        self.length = [length(w) for w in perms]
        self.ldes = [left_descents(w) for w in perms]
        self.lmul = [[self.index[left_mult(i, w)] for w in perms] if i else None
                     for i in range(m)]
        self.P: list[dict[int, Poly]] = []
        self.mu_down: list[list[tuple[int, int]]] = []
        self._build()

    def _build(self) -> None:
        P, mu_down, L = self.P, self.mu_down, self.length
        for w in range(len(self.perms)):
            if w == 0:
                P.append({0: (1,)})
                mu_down.append([])
                continue
            s = (self.ldes[w] & -self.ldes[w]).bit_length() - 1
            smul = self.lmul[s]
            v = smul[w]
            Pv = P[v]
            lower = set(Pv) | {smul[x] for x in Pv}
            col: dict[int, Poly] = {}
            corrections = [(z, mu) for z, mu in mu_down[v] if self.ldes[z] >> s & 1]
            for x in lower:
                sx = smul[x]
                c = self.ldes[x] >> s & 1
                acc: list[int] = []
                if sx in Pv:
                    _add_shifted(acc, Pv[sx], 1 - c)
                if x in Pv:
                    _add_shifted(acc, Pv[x], c)
                for z, mu in corrections:
                    pz = P[z].get(x)
                    if pz is not None:
                        _add_shifted(acc, pz, (L[w] - L[z]) // 2, -mu)
                poly = _trim(acc)
                if any(coef < 0 for coef in poly):
                    raise ArithmeticError(f"negative KL coefficient at {self.perms[x]}, {self.perms[w]}")
                if not poly:
                    raise ArithmeticError(f"vanishing P for Bruhat pair {self.perms[x]} <= {self.perms[w]}")
                col[x] = poly
            P.append(col)
            downs = []
            for x, poly in col.items():
                d = L[w] - L[x]
                if d % 2 == 1 and len(poly) == (d + 1) // 2:
                    downs.append((x, poly[-1]))
            downs.sort()
            mu_down.append(downs)

    def poly(self, u: Sequence[int], w: Sequence[int]) -> Poly:
        u, w = check_perm(u), check_perm(w)
        if len(u) != self.m or len(w) != self.m:
            raise DomainError(f"expected permutations of 1..{self.m}")
        return self.P[self.index[w]].get(self.index[u], ())

    def leq(self, u: Sequence[int], w: Sequence[int]) -> bool:
        return bool(self.poly(u, w))

    def mu(self, u: Sequence[int], w: Sequence[int]) -> int:
        p = self.poly(u, w)
        d = self.length[self.index[tuple(w)]] - self.length[self.index[tuple(u)]]
        if d <= 0 or d % 2 == 0:
            return 0
        k = (d - 1) // 2
        return p[k] if k < len(p) else 0

    def pairs(self):
        """(u, w, P_{u,w}) for every Bruhat pair, w-major in length order."""
        for w, col in enumerate(self.P):
            for x in sorted(col):
                yield self.perms[x], self.perms[w], col[x]


_tables: dict[int, KLTable] = {}


def _guard(m: int, allow_large: bool) -> None:
    if m > MAX_M and not (allow_large or os.environ.get(OVERRIDE_ENV)):
        raise ResourceError(f"m = {m} exceeds the guard m <= {MAX_M}; set {OVERRIDE_ENV}=1 to override")
    if m > 7:
        raise ResourceError("m >= 8 is not supported")


def kl_table(m: int, allow_large: bool = False) -> KLTable:
    _guard(m, allow_large)
    if m not in _tables:
        _tables[m] = KLTable(m)
    return _tables[m]


def kl_polynomial(u: Sequence[int], w: Sequence[int]) -> Poly:
    u, w = check_perm(u), check_perm(w)
    if len(u) != len(w):
        raise DomainError("permutations of different sizes")
    return kl_table(len(u)).poly(u, w)


# -- W-graph -----------------------------------------------------------------

def build_left_wgraph(m: int, allow_large: bool = False, descents: str = "left") -> SLabeledGraph:
    """The KL W-graph of S_m as an S-labeled graph of rank m - 1.

    For every Bruhat pair x < w with mu(x, w) != 0, m(a, b) = mu for each
    orientation with tau(a) not contained in tau(b).
    """
    if not 2 <= m:
        raise ResourceError("m must be at least 2")
    table = kl_table(m, allow_large)
    des = left_descents if descents == "left" else right_descents
    if descents not in ("left", "right"):
        raise DomainError("descents must be 'left' or 'right'")
    ids = [perm_id(w) for w in table.perms]
    tau = {ids[k]: des(w) for k, w in enumerate(table.perms)}
    weights = {}
    for w, downs in enumerate(table.mu_down):
        for x, mu in downs:
            a, b = ids[x], ids[w]
            if not is_subset(tau[a], tau[b]):
                weights[a, b] = mu
            if not is_subset(tau[b], tau[a]):
                weights[b, a] = mu
    G = SLabeledGraph(m - 1, tuple(sorted(ids)), tau, weights)
    if m <= 4 and descents == "left":
        bad = knuth_agreement_violations(G)
        assert not bad, f"W-graph convention check failed: {bad[:3]}"
    return G


# -- cells -------------------------------------------------------------------

def strongly_connected_components(G: SLabeledGraph) -> list[list[str]]:
    """Iterative Tarjan over the nonzero-weight relation."""
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    comps: list[list[str]] = []
    counter = 0
    for root in G.vertices:
        if root in index:
            continue
        work = [(root, iter(G.out[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(G.out[w])))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    x = stack.pop()
                    on_stack.discard(x)
                    comp.append(x)
                    if x == v:
                        break
                comps.append(comp)
    order = {v: k for k, v in enumerate(G.vertices)}
    comps = [sorted(c, key=order.__getitem__) for c in comps]
    comps.sort(key=lambda c: order[c[0]])
    return comps


@dataclass
class CellDecomposition:
    cells: list[list[str]]
    graphs: list[SLabeledGraph]
    shapes: list[Partition | None]

    def __len__(self) -> int:
        return len(self.cells)


def _rsk_shape(vertex_id: str) -> Partition | None:
    try:
        w = parse_perm_id(vertex_id)
    except (DomainError, ValueError):
        return None
    return shape_of(rsk(w)[0])


def cells(G: SLabeledGraph) -> CellDecomposition:
    comps = strongly_connected_components(G)
    graphs = [G.induced(c) for c in comps]
    shapes = []
    for c in comps:
        found = {_rsk_shape(v) for v in c}
        shapes.append(found.pop() if len(found) == 1 else None)
    return CellDecomposition(comps, graphs, shapes)


def extract_molecules(d: CellDecomposition) -> list[SLabeledGraph]:
    return [mol for g in d.graphs for mol in simple_components(g)]


def insertion_tableau(vertex_id: str) -> Tableau:
    return rsk(parse_perm_id(vertex_id))[0]


def recording_tableau(vertex_id: str) -> Tableau:
    return rsk(parse_perm_id(vertex_id))[1]


def knuth_agreement_violations(G: SLabeledGraph, tableau_of=insertion_tableau) -> list[dict]:
    """Compare simple edges in each cell with dual Knuth moves on tableaux.

    Under the pinned convention the map vertex -> tableau is injective on a
    cell, preserves tau, and carries simple edges exactly onto dual Knuth moves.
    """
    from .tableaux import descent_tau, dual_knuth_neighbors

    bad = []
    for cell in strongly_connected_components(G):
        tabs = {v: tableau_of(v) for v in cell}
        if len(set(tabs.values())) != len(cell):
            bad.append({"cell": cell, "detail": "tableau map not injective"})
            continue
        back = {t: v for v, t in tabs.items()}
        for v in cell:
            if descent_tau(tabs[v]) != G.tau[v]:
                bad.append({"vertex": v, "detail": "tau differs from tableau descents"})
            moves = {back[U] for U, _, _ in dual_knuth_neighbors(tabs[v]) if U in back}
            if len(moves) != len(dual_knuth_neighbors(tabs[v])):
                bad.append({"vertex": v, "detail": "dual Knuth move leaves the cell"})
            simple = {x for x in G.neighbors[v] if G.m(v, x) and G.m(x, v)}
            if simple != moves:
                bad.append({"vertex": v, "simple": sorted(simple), "knuth": sorted(moves)})
    return bad


def involution_count(m: int) -> int:
    a, b = 1, 1
    for k in range(2, m + 1):
        a, b = b, b + (k - 1) * a
    return b if m >= 1 else 1


def csv_rows(m: int):
    """(u, w, coefficients) rows for every Bruhat pair of S_m."""
    for u, w, p in kl_table(m).pairs():
        yield perm_id(u), perm_id(w), " ".join(map(str, p))
