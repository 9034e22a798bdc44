"""Slow, obviously-correct reference implementations used to freeze values."""

from __future__ import annotations

from itertools import combinations

import networkx as nx

from entangle.graph import Graph


def _cop_sets(n, k):
    return [frozenset(c) for r in range(k + 1) for c in combinations(range(n), r)]


def _cops_succ(v, C, k, generalized):
    if generalized:
        subs = [frozenset(s) for r in range(len(C) + 1) for s in combinations(sorted(C), r)]
        out = set(subs) | {s | {v} for s in subs if len(s | {v}) <= k}
        return out
    out = {C}
    if len(C | {v}) <= k:
        out.add(C | {v})
    out |= {(C - {x}) | {v} for x in C}
    return out


def cops_win_naive(succ: list[list[int]], k: int, generalized: bool = False) -> bool:
    """Least fixpoint of the cops' winning set by repeated full scans."""
    n = len(succ)
    sets = _cop_sets(n, k)
    win = set()
    changed = True
    while changed:
        changed = False
        for v in range(n):
            for C in sets:
                tp = (v, C, "T")
                if tp not in win and all((w, C, "C") in win for w in succ[v] if w not in C):
                    win.add(tp)
                    changed = True
                cp = (v, C, "C")
                if cp not in win and any((v, D, "T") in win for D in _cops_succ(v, C, k, generalized)):
                    win.add(cp)
                    changed = True
    return all((v, frozenset(), "C") in win for v in range(n))


def entanglement_naive(g: Graph, generalized: bool = False) -> int:
    succ = [sorted(g.adj[v]) for v in range(g.n)]
    k = 0
    while not cops_win_naive(succ, k, generalized):
        k += 1
    return k


def min_vertex_cover_brute(g: Graph) -> tuple[int, list[frozenset[int]]]:
    for r in range(g.n + 1):
        found = [frozenset(s) for s in combinations(range(g.n), r)
                 if all(u in s or v in s for u, v in g.edges)]
        if found:
            return r, found
    raise AssertionError


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def from_nx(h: nx.Graph) -> Graph:
    m = {v: i for i, v in enumerate(sorted(h))}
    return Graph(len(m), frozenset((min(m[u], m[v]), max(m[u], m[v])) for u, v in h.edges()))
