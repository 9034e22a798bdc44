"""Property-based checks of the invariants that hold on every input."""

import random
from itertools import combinations

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from entangle.connectivity import connectivity, vertex_disjoint_paths
from entangle.cyclicity import cyclicity_digraph, cyclicity_undirected, is_edge_cover
from entangle.game import GENERALIZED, STANDARD, entanglement, solve, verify_strategy
from entangle.graph import Graph, contract_edge, delete_edge, delete_isolated_vertex
from entangle.io import emit_edgelist, emit_json, parse
from entangle.minors import has_minor_small, is_isomorphic_small
from entangle.tutte import (build_tutte_tree, check_path_labels, is_2_connected, recompose,
                            two_sum, validate_tree_decomposition)
from entangle.generators import random_2conn

FAST = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def graphs(draw, n_min=1, n_max=7):
    n = draw(st.integers(n_min, n_max))
    pairs = list(combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, k in zip(pairs, keep) if k])


@st.composite
def biconnected(draw, n_max=8):
    n = draw(st.integers(3, n_max))
    return random_2conn(n, draw(st.integers(0, 10 ** 6)), chords=draw(st.integers(0, 5)))


@FAST
@given(graphs(n_min=2), st.data())
def test_minor_ops_shrink(g, data):
    assume(g.m > 0)
    u, v = data.draw(st.sampled_from(sorted(g.edges)))
    d = delete_edge(g, u, v)
    assert d.n == g.n and d.m == g.m - 1
    c = contract_edge(g, u, v)
    assert c.n == g.n - 1 and c.m < g.m


@FAST
@given(graphs())
def test_delete_isolated(g):
    iso = [v for v in range(g.n) if g.degree(v) == 0]
    assume(iso)
    assert delete_isolated_vertex(g, iso[0]).n == g.n - 1


@FAST
@given(graphs(n_max=6))
def test_graph_is_its_own_minor(g):
    assert has_minor_small(g, g)


@FAST
@given(graphs(n_max=6), graphs(n_max=4), st.data())
def test_minor_monotone_under_added_edges(g, pattern, data):
    missing = [(u, v) for u, v in combinations(range(g.n), 2) if not g.has_edge(u, v)]
    assume(missing)
    e = data.draw(st.sampled_from(missing))
    if has_minor_small(g, pattern):
        assert has_minor_small(Graph(g.n, g.edges | {e}), pattern)


@FAST
@given(graphs(), st.randoms(use_true_random=False))
def test_isomorphism_is_an_equivalence(g, rnd):
    p1 = list(range(g.n))
    rnd.shuffle(p1)
    h = g.relabel(p1)
    p2 = list(range(g.n))
    rnd.shuffle(p2)
    k = h.relabel(p2)
    assert is_isomorphic_small(g, g)
    assert is_isomorphic_small(g, h) and is_isomorphic_small(h, g)
    assert is_isomorphic_small(g, k)


@FAST
@given(graphs())
def test_text_round_trips(g):
    assert parse(emit_edgelist(g)) == g
    assert parse(emit_json(g)) == g


@FAST
@given(graphs(n_max=6))
def test_game_monotone_and_rules_agree(g):
    prev = False
    for k in range(g.n + 1):
        std = solve(g, k, STANDARD)
        assert std.winner == solve(g, k, GENERALIZED).winner
        assert std.cops_win or not prev
        prev = std.cops_win
        assert verify_strategy(g, k, STANDARD, std).ok


@FAST
@given(graphs(n_max=7))
def test_sandwich(g):
    val = connectivity(g).value
    kappa = g.n - 1 if val is None else val
    ent = entanglement(g).value
    cyc = cyclicity_undirected(g).size
    assert kappa <= ent <= cyc
    if ent == kappa:
        assert cyc == ent


@FAST
@given(graphs(n_max=8))
def test_covers_are_minimal_and_match_fvs(g):
    sol = cyclicity_undirected(g)
    for w in sol.witnesses:
        assert len(w) == sol.size and is_edge_cover(g, w)
        assert all(not is_edge_cover(g, w - {x}) for x in w)
    assert cyclicity_digraph(g.to_digraph()).size == sol.size


@FAST
@given(graphs(n_min=2, n_max=8), st.data())
def test_paths_bounded_by_degree(g, data):
    a, b = data.draw(st.sampled_from(list(combinations(range(g.n), 2))))
    k, paths = vertex_disjoint_paths(g, a, b)
    assert k == len(paths) <= min(g.degree(a), g.degree(b))


@FAST
@given(biconnected(), biconnected(), st.data())
def test_two_sum_keeps_2_connected(g1, g2, data):
    e1 = data.draw(st.sampled_from(sorted(g1.edges)))
    e2 = data.draw(st.sampled_from(sorted(g2.edges)))
    assert is_2_connected(two_sum(g1, e1, g2, e2))


@FAST
@given(biconnected(n_max=10))
def test_tutte_tree_round_trip(g):
    t = build_tutte_tree(g)
    assert validate_tree_decomposition(g, t).ok
    assert recompose(t) == Graph(g.n, g.edges)
    assert check_path_labels(t) == []
