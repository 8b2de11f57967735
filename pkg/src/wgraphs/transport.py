"""Arc-transport identities, alternating-path structure and the cabling property.

Each checker returns ``(configurations_seen, violations)`` so callers can
tell a vacuous pass from a real one.
"""

from __future__ import annotations

from itertools import product

from .iso import find_simple_isomorphism
from .labeled import (
    SLabeledGraph,
    _layer_ok,
    activates_taus,
    alternating_paths,
    is_simple,
    lpr2_instances,
    lpr3_instances,
    restrict,
    simple_component_sets,
)
from .tau import contains, full_mask, is_subset, tau_elements


def _oriented_activations(G: SLabeledGraph) -> dict[tuple[int, int], list[tuple[str, str]]]:
    """(i, j) -> simple edges (x, y) activating bond {i, j} with i in tau(x), j in tau(y)."""
    out: dict[tuple[int, int], list[tuple[str, str]]] = {}
    for a, b in G.simple_edges():
        for p, q in G.bonds():
            if not activates_taus(G.tau[a], G.tau[b], p, q):
                continue
            x, y = (a, b) if contains(G.tau[a], p) else (b, a)
            out.setdefault((p, q), []).append((x, y))
            out.setdefault((q, p), []).append((y, x))
    return out


def bond_transport(G: SLabeledGraph) -> tuple[int, list[dict]]:
    """Simple edges (x, y), (x', y') on one bond with a shared extra label k.

    When some k lies in tau(x) and tau(y) but in neither tau(x') nor tau(y'),
    the weights m(x, x') and m(y, y') must agree.
    """
    seen = 0
    bad = []
    for (i, j), edges in _oriented_activations(G).items():
        for (x, y), (x2, y2) in product(edges, repeat=2):
            if (x, y) == (x2, y2):
                continue
            shared = G.tau[x] & G.tau[y] & ~(G.tau[x2] | G.tau[y2])
            if not shared:
                continue
            seen += 1
            if G.m(x, x2) != G.m(y, y2):
                bad.append({"edges": [[x, y], [x2, y2]], "bond": [i, j],
                            "k": tau_elements(shared), "weights": [G.m(x, x2), G.m(y, y2)]})
    return seen, bad


def _supported_paths(R: SLabeledGraph, u: str, v: str, i: int, j: int, r: int) -> list[tuple[tuple[str, ...], int | None]]:
    """Pattern-matching sequences u .. v whose steps are simple except at most one.

    Returns (path, dashed step index or None).  The dashed step must go from
    a strictly larger tau-set to a smaller one (anything else has weight zero
    in an admissible graph); its weight may still be zero.
    """
    found = []
    mids = [[z for z in R.vertices if _layer_ok(R.tau[z], i, j, k)] for k in range(1, r)]
    for mid in product(*mids):
        path = (u, *mid, v)
        if len(set(path)) != len(path):
            continue
        loose = [k for k in range(r) if not is_simple(R, path[k], path[k + 1])]
        if len(loose) == 1:
            a, b = path[loose[0]], path[loose[0] + 1]
            if not (is_subset(R.tau[b], R.tau[a]) and R.tau[a] != R.tau[b]):
                continue
        if len(loose) <= 1:
            found.append((path, loose[0] if loose else None))
    return found


def polygon_transport(G: SLabeledGraph, r: int) -> tuple[int, list[dict]]:
    """Weights on the non-simple steps of matching polygon configurations agree.

    For r = 2 the graph is restricted to each consecutive triple of
    generators (an A_3 window) and every LPR2 instance is examined; for
    r = 3, to each A_4 window with LPR3 instances.  A configuration is an
    instance where each path type has exactly one path made of simple edges
    and at most one other step, and at least one such other step occurs.
    The two path weights must then be equal.
    """
    width = r + 1
    seen = 0
    bad = []
    for a in range(1, G.rank - width + 2):
        J = full_mask(a + width - 1) & ~full_mask(a - 1)
        if J & ~G.generators:
            continue
        R = restrict(G, J)
        if r == 2:
            instances = [(u, v, i, j) for u, v, i, j in lpr2_instances(R)]
        else:
            instances = [(u, v, i, j) for u, v, _, i, j, _ in lpr3_instances(R)]
        # lpr*_instances only yields ends reached by a nonzero path, so add
        # the ones reached only through dashed steps of weight zero
        instances = set(instances) | set(_dashed_instances(R, r))
        for u, v, i, j in sorted(instances):
            one = _supported_paths(R, u, v, i, j, r)
            two = _supported_paths(R, u, v, j, i, r)
            if len(one) != 1 or len(two) != 1:
                continue
            (p1, d1), (p2, d2) = one[0], two[0]
            if d1 is None and d2 is None:
                continue
            seen += 1
            w1 = R.m(p1[d1], p1[d1 + 1]) if d1 is not None else 1
            w2 = R.m(p2[d2], p2[d2 + 1]) if d2 is not None else 1
            if w1 != w2:
                bad.append({"window": tau_elements(J), "paths": [list(p1), list(p2)],
                            "weights": [w1, w2]})
    return seen, bad


def _dashed_instances(R: SLabeledGraph, r: int):
    gens = tau_elements(R.generators)
    for u in R.vertices:
        tu = R.tau[u]
        for v in R.vertices:
            tv = R.tau[v]
            if r == 2:
                for i in gens:
                    for j in gens:
                        if i < j and contains(tu, i) and contains(tu, j) and not (
                                contains(tv, i) or contains(tv, j)) and tv & ~tu:
                            yield u, v, i, j
            else:
                k, i, j, l = gens[:4]
                if (contains(tu, i) and contains(tu, j) and not contains(tu, k) and not contains(tu, l)
                        and contains(tv, k) and contains(tv, l)
                        and not contains(tv, i) and not contains(tv, j)):
                    yield u, v, i, j


def lpr_path_arcs(G: SLabeledGraph) -> tuple[int, list[dict]]:
    """Every contributing alternating path of an LPR instance has at most one arc."""
    seen = 0
    bad = []

    def scan(u, v, i, j, r):
        nonlocal seen
        for a, b in ((i, j), (j, i)):
            for path in alternating_paths(G, u, v, a, b, r):
                seen += 1
                arcs = sum(1 for x, y in zip(path, path[1:]) if not is_simple(G, x, y))
                if arcs > 1:
                    bad.append({"path": list(path), "type": [a, b], "arcs": arcs})

    for u, v, i, j in lpr2_instances(G):
        scan(u, v, i, j, 2)
    for u, v, _, i, j, _ in lpr3_instances(G):
        scan(u, v, i, j, 3)
    return seen, bad


def cabling(M: SLabeledGraph) -> tuple[int, list[dict]]:
    """Simple edges between rank-(n-1) submolecules, with n in tau(x).

    The rank-(n-2) submolecules A' of x and B' of y must be isomorphic through
    some psi with psi(x) = y, and m(z, psi(z)) = 1 for every z in A'.
    """
    n = M.rank
    upper = restrict(M, full_mask(n - 1))
    lower = restrict(M, full_mask(n - 2) if n >= 2 else 0)
    up_of = {v: k for k, c in enumerate(simple_component_sets(upper)) for v in c}
    low_sets = simple_component_sets(lower)
    low_of = {v: k for k, c in enumerate(low_sets) for v in c}
    seen = 0
    bad = []
    for a, b in M.simple_edges():
        for x, y in ((a, b), (b, a)):
            if up_of[x] == up_of[y] or not contains(M.tau[x], n):
                continue
            seen += 1
            A = lower.induced(low_sets[low_of[x]])
            B = lower.induced(low_sets[low_of[y]])
            psi = find_simple_isomorphism(A, B, fixed={x: y})
            if psi is None:
                bad.append({"edge": [x, y], "detail": "submolecules not isomorphic"})
                continue
            off = {z: M.m(z, psi[z]) for z in A.vertices if M.m(z, psi[z]) != 1}
            if off:
                bad.append({"edge": [x, y], "weights": off})
    return seen, bad
