from hypothesis import given, settings
from hypothesis import strategies as st

from wgraphs import graphio
from wgraphs.iso import find_isomorphism
from wgraphs.kl import build_left_wgraph
from wgraphs.labeled import SLabeledGraph, alternating_path_count, brute_force_path_count, restrict
from wgraphs.tableaux import dual_knuth_neighbors, partitions, rsk, standard_tableaux
from wgraphs.tau import full_mask, is_subset


@st.composite
def admissible_graphs(draw, max_rank=4, max_vertices=6):
    rank = draw(st.integers(1, max_rank))
    n = draw(st.integers(0, max_vertices))
    ids = [f"v{k}" for k in range(n)]
    tau = {v: draw(st.integers(0, full_mask(rank))) & full_mask(rank) for v in ids}
    side = {v: draw(st.booleans()) for v in ids}
    weights = {}
    for a in ids:
        for b in ids:
            if a >= b or side[a] == side[b] or not draw(st.booleans()):
                continue
            w = draw(st.integers(1, 3))
            if not is_subset(tau[a], tau[b]):
                weights[a, b] = w
            if not is_subset(tau[b], tau[a]):
                weights[b, a] = w
    return SLabeledGraph(rank, tuple(ids), tau, weights)


KL4 = build_left_wgraph(4)


@given(st.sets(st.integers(1, 3)), st.sets(st.integers(1, 3)))
def test_restriction_composes(J, K):
    assert restrict(restrict(KL4, J), K) == restrict(KL4, J & K)


@given(admissible_graphs(), st.sets(st.integers(1, 4)), st.sets(st.integers(1, 4)))
def test_restriction_composes_random(G, J, K):
    J = {j for j in J if j <= G.rank}
    K = {k for k in K if k <= G.rank}
    assert restrict(restrict(G, J), K) == restrict(G, J & K)


@settings(max_examples=60)
@given(admissible_graphs(max_vertices=5), st.integers(1, 4), st.data())
def test_path_dp_matches_brute_force(G, r, data):
    if not G.vertices or G.rank < 2:
        return
    u = data.draw(st.sampled_from(G.vertices))
    v = data.draw(st.sampled_from(G.vertices))
    i = data.draw(st.integers(1, G.rank))
    j = data.draw(st.integers(1, G.rank).filter(lambda x: x != i))
    assert alternating_path_count(G, u, v, i, j, r) == brute_force_path_count(G, u, v, i, j, r)


@given(admissible_graphs(), st.randoms())
def test_iso_symmetric(G, rnd):
    order = list(G.vertices)
    rnd.shuffle(order)
    ren = {v: f"w{k}" for k, v in enumerate(order)}
    H = SLabeledGraph(G.rank, tuple(ren[v] for v in order), {ren[v]: G.tau[v] for v in G.vertices},
                      {(ren[a], ren[b]): w for (a, b), w in G.weights.items()})
    f = find_isomorphism(G, H)
    g = find_isomorphism(H, G)
    assert f is not None and g is not None
    assert all(H.tau[f[v]] == G.tau[v] for v in G.vertices)
    assert all(H.m(f[a], f[b]) == G.m(a, b) for a in G.vertices for b in G.vertices)
    assert all(G.m(g[a], g[b]) == H.m(a, b) for a in H.vertices for b in H.vertices)


@given(admissible_graphs())
def test_json_round_trip(G):
    assert graphio.loads(graphio.dumps(G)) == G


@given(st.integers(1, 7).flatmap(lambda m: st.sampled_from(partitions(m))), st.data())
def test_dual_knuth_involutive(lam, data):
    T = data.draw(st.sampled_from(standard_tableaux(lam)))
    for U, i, _ in dual_knuth_neighbors(T):
        assert T in [V for V, k, _ in dual_knuth_neighbors(U) if k == i]


@given(st.permutations(range(1, 8)))
def test_rsk_inverse_swaps(w):
    P, Q = rsk(w)
    inv = tuple(sorted(range(1, len(w) + 1), key=lambda k: w[k - 1]))
    assert rsk(inv) == (Q, P)
