import dataclasses
import random

import pytest

from entangle.errors import InputError
from entangle.generators import bond, random_2conn
from entangle.graph import Graph, complete_graph, cycle_graph, path_graph
from entangle.minors import has_minor_small, is_isomorphic_small
from entangle.analysis import domino
from entangle.tutte import (BOND, CYCLE, THREE_CONNECTED, Separation, bridges_of,
                            build_tutte_tree, canonical_form, check_path_labels,
                            hinge_node_form, hinges, hinges_cross, is_2_connected,
                            recompose, two_sum, validate_tree_decomposition)


def names(g, vs):
    return {g.label(v) for v in vs}


def test_separation_validity(fig1):
    v3, v4 = fig1.ids("v3", "v4")
    A = set(fig1.ids("v1", "v2", "v3", "v4"))
    B = set(range(fig1.n)) - set(fig1.ids("v1", "v2"))
    sep = Separation(frozenset(A), frozenset(B))
    assert sep.separator == {v3, v4} and sep.order == 2 and sep.is_valid(fig1)
    bad = Separation(frozenset(A - {v4}), frozenset(B - {v4}))
    assert not bad.is_valid(fig1)


def test_bridges_of_fig1(fig1):
    br = bridges_of(fig1, set(fig1.ids("v5", "v6")))
    inner = sorted(sorted(names(fig1, b.vertices)) for b in br)
    assert len(br) == 3
    assert ["v5", "v6", "v7"] in inner and ["v5", "v6", "v8", "v9"] in inner
    br = bridges_of(fig1, set(fig1.ids("v6", "v8")))
    assert len(br) == 2 and not any(b.is_2_connected() for b in br)


def test_bridges_of_c4():
    br = bridges_of(cycle_graph(4), {0, 2})
    assert len(br) == 2 and all(len(b.edges) == 2 for b in br)


def test_trivial_bridge_for_present_edge():
    br = bridges_of(cycle_graph(4), {0, 1})
    assert sum(b.trivial for b in br) == 1


def test_fig1_hinges(fig1):
    found = {frozenset(names(fig1, h.pair)) for h in hinges(fig1)}
    # {v1,v2} and {v8,v9} split off only a single edge, so they are no hinges
    assert found == {frozenset({"v3", "v4"}), frozenset({"v5", "v6"})}
    assert frozenset({"v6", "v8"}) not in found


@pytest.mark.parametrize("n", range(3, 9))
def test_cycle_has_no_hinges(n):
    assert hinges(cycle_graph(n)) == []


def test_domino_rungs_are_hinges():
    d3 = domino(3)
    pairs = {h.pair for h in hinges(d3)}
    assert pairs == {(2, 3), (4, 5)}


def test_hinges_need_2_connected():
    with pytest.raises(InputError):
        hinges(path_graph(4))
    assert not is_2_connected(path_graph(3))


def test_fig1_tree(fig1):
    t = build_tutte_tree(fig1)
    assert t.size == 6
    kinds = sorted(t.kind(i) for i in range(t.size))
    assert kinds == ["bond(3)", "bond(3)", "cycle", "cycle", "cycle", "cycle"]
    cycles = sorted(sorted(names(fig1, t.bags[i])) for i in range(t.size) if t.kinds[i] == CYCLE)
    assert ["v5", "v6", "v7"] in cycles and ["v5", "v6", "v8", "v9"] in cycles
    assert ["v1", "v2", "v3", "v4"] in cycles and ["v3", "v4", "v5", "v6"] in cycles
    bonds = sorted(sorted(names(fig1, t.bags[i])) for i in range(t.size) if t.kinds[i] == BOND)
    assert bonds == [["v3", "v4"], ["v5", "v6"]]
    assert validate_tree_decomposition(fig1, t).ok
    assert recompose(t) == fig1


def test_single_node_trees():
    t = build_tutte_tree(cycle_graph(5))
    assert t.size == 1 and t.kinds == (CYCLE,)
    t = build_tutte_tree(complete_graph(4))
    assert t.size == 1 and t.kinds == (THREE_CONNECTED,)
    assert recompose(t) == complete_graph(4)


def test_domino_tree_is_path():
    d5 = domino(5)
    t = build_tutte_tree(d5)
    # six rungs: four inner rung hinges, each a real edge, hence a 3-bond
    assert t.size == 9
    assert sorted(t.kind(i) for i in range(9)) == ["bond(3)"] * 4 + ["cycle"] * 5
    assert max(len(nb) for nb in t.neighbours()) == 2
    assert is_isomorphic_small(recompose(t), d5)


def test_fault_missing_vertex(fig1):
    t = build_tutte_tree(fig1)
    bags = list(t.bags)
    v1 = fig1.vertex_id("v1")
    bags = [b - {v1} for b in bags]
    rep = validate_tree_decomposition(fig1, dataclasses.replace(t, bags=tuple(bags)))
    assert not rep.ok and any(v.startswith("T-1") for v in rep.violations)


def test_fault_swapped_bags():
    d5 = domino(5)
    t = build_tutte_tree(d5)
    bags = list(t.bags)
    ends = [i for i, nb in enumerate(t.neighbours()) if len(nb) == 1]
    bond_node = t.neighbours()[ends[0]][0]
    far = next(j for j in t.neighbours()[bond_node] if j != ends[0])
    bags[ends[0]], bags[far] = bags[far], bags[ends[0]]
    rep = validate_tree_decomposition(d5, dataclasses.replace(t, bags=tuple(bags), hinge_labels=()))
    assert not rep.ok and any(v.startswith("T-3") for v in rep.violations)


def test_two_sum_triangles():
    assert is_isomorphic_small(two_sum(cycle_graph(3), (0, 1), cycle_graph(3), (0, 1)),
                               cycle_graph(4))


def test_two_bond_is_neutral(fig1):
    u, v = fig1.ids("v1", "v2")
    out = two_sum(fig1, (u, v), bond(2), (0, 1))
    assert is_isomorphic_small(out.simple(), fig1)


def test_two_sum_of_k4s():
    g = two_sum(complete_graph(4), (0, 1), complete_graph(4), (0, 1))
    assert g.n == 6 and g.m == 10 and is_2_connected(g)
    t = build_tutte_tree(g)
    # the glued edge is gone, so the pair has two bridges and no bond node
    assert list(t.kinds) == [THREE_CONNECTED, THREE_CONNECTED]
    kept = Graph(6, g.edges | {(0, 1)})
    assert sorted(build_tutte_tree(kept).kinds) == [BOND, THREE_CONNECTED, THREE_CONNECTED]


def test_two_sum_missing_edge():
    with pytest.raises(InputError):
        two_sum(cycle_graph(4), (0, 2), cycle_graph(3), (0, 1))


def test_hinge_node_form_alternates(fig1):
    t = build_tutte_tree(fig1)
    bags, edges, is_hinge = hinge_node_form(t)
    for a, b in edges:
        assert is_hinge[a] != is_hinge[b]
    assert all(len(bags[i]) == 2 for i in range(len(bags)) if is_hinge[i])


def _corpus():
    rng = random.Random(7)
    out = [domino(4), complete_graph(5)]
    for seed in range(40):
        out.append(random_2conn(rng.randint(4, 9), seed, chords=rng.randint(0, 4)))
    return out


@pytest.mark.parametrize("g", _corpus())
def test_tree_properties(g):
    t = build_tutte_tree(g)
    assert validate_tree_decomposition(g, t).ok
    assert recompose(t) == Graph(g.n, g.edges)
    assert check_path_labels(t) == []
    hl = hinges(g)
    for h1 in hl:
        for h2 in hl:
            assert not hinges_cross(g, h1, h2)
    for i in range(t.size):
        torso = t.torsos[i].simple()
        if torso.n <= 8:
            assert has_minor_small(g, torso)
    perm = list(range(g.n))
    random.Random(g.n).shuffle(perm)
    t2 = build_tutte_tree(g.relabel(perm))
    inv = {perm[v]: v for v in range(g.n)}
    back = dataclasses.replace(t2, bags=tuple(frozenset(inv[v] for v in b) for b in t2.bags),
                               hinge_labels=())
    assert canonical_form(back) == canonical_form(t)


def test_dot_export(fig1):
    dot = build_tutte_tree(fig1).to_dot()
    assert dot.startswith("graph tutte {") and "dashed" in dot
