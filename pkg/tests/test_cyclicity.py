import random

import pytest

from entangle.cyclicity import (covers_containing, cyclicity_digraph, cyclicity_undirected,
                                is_edge_cover, minimum_cover_size)
from entangle.errors import BudgetError
from entangle.graph import Digraph, Graph, complete_graph, cycle_graph, empty_graph
from entangle.molecules import legal_specs, make_molecule, spec3

from oracles import min_vertex_cover_brute


def test_edge_cover_examples():
    assert is_edge_cover(cycle_graph(4), {0, 2})
    assert is_edge_cover(make_molecule(spec3(2, 2)), {0, 1, 2})
    assert not is_edge_cover(complete_graph(4), {0, 1})


@pytest.mark.parametrize("n", range(3, 11))
def test_cycles(n):
    assert cyclicity_undirected(cycle_graph(n)).size == (n + 1) // 2


def test_molecules_have_base_cover():
    for spec in legal_specs(3, 4):
        sol = cyclicity_undirected(make_molecule(spec))
        assert sol.size == 3 and frozenset({0, 1, 2}) in sol.witnesses


def test_edgeless():
    sol = cyclicity_undirected(empty_graph(3))
    assert sol.size == 0 and sol.witnesses == (frozenset(),)


def test_digraph_examples(fig1):
    dag = Digraph.from_arcs(4, [(0, 1), (1, 2), (0, 3), (3, 2)])
    assert cyclicity_digraph(dag).size == 0
    tri = Digraph.from_arcs(3, [(0, 1), (1, 2), (2, 0)])
    assert cyclicity_digraph(tri).size == 1
    assert cyclicity_digraph(fig1.to_digraph()).size == cyclicity_undirected(fig1).size == 5


def test_digraph_budget():
    with pytest.raises(BudgetError):
        cyclicity_digraph(complete_graph(9).to_digraph(), budget=50)


def test_covers_containing_examples():
    assert covers_containing(cycle_graph(4), {0})
    assert covers_containing(complete_graph(4), {1, 3})
    mol = make_molecule(spec3(1, 3))
    assert not covers_containing(mol, {3, 4})


def test_cap_and_fallback_agree():
    g = cycle_graph(10)
    capped = cyclicity_undirected(g, cap=1)
    assert capped.capped and len(capped.witnesses) == 1
    for S in ({0}, {0, 1}, {0, 2}, {0, 1, 2}):
        assert covers_containing(g, S, cap=1) == covers_containing(g, S)


def test_forced_cover_size():
    assert minimum_cover_size(cycle_graph(4), {0, 1}) == 3


@pytest.mark.parametrize("seed", range(60))
def test_matches_bruteforce(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 9)
    g = Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)
                             if rng.random() < rng.random()])
    size, covers = min_vertex_cover_brute(g)
    sol = cyclicity_undirected(g)
    assert sol.size == size
    assert set(sol.witnesses) == set(covers)
    for w in sol.witnesses:
        assert is_edge_cover(g, w)
        for x in w:
            assert not is_edge_cover(g, w - {x})
    fvs = cyclicity_digraph(g.to_digraph())
    assert fvs.size == size and set(fvs.witnesses) == set(covers)
