"""Cyclicity: minimum feedback vertex sets and minimum vertex covers.

On an undirected graph every edge is a directed 2-cycle of its symmetric
digraph, so the feedback vertex sets are exactly the vertex covers.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import networkx as nx

from .errors import BudgetError, InputError
from .graph import Digraph, Graph

WITNESS_CAP = 10_000
FVS_SUBSET_BUDGET = 5_000_000


@dataclass(frozen=True)
class CoverSolution:
    size: int
    witnesses: tuple[frozenset[int], ...]
    capped: bool

    def to_dict(self) -> dict:
        return {"size": self.size, "witnesses": [sorted(w) for w in self.witnesses],
                "capped": self.capped}


def is_edge_cover(g: Graph, X) -> bool:
    """True iff every edge has an endpoint in X."""
    X = set(X)
    for x in X:
        if not 0 <= x < g.n:
            raise InputError(f"vertex {x} out of range")
    return all(u in X or v in X for u, v in g.edges)


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _matching_bound(adj: list[int], alive: int) -> int:
    """Size of a greedy maximal matching among vertices in ``alive``."""
    size = 0
    free = alive
    for v in _bits(alive):
        if not free >> v & 1:
            continue
        nb = adj[v] & free
        if nb:
            w = (nb & -nb).bit_length() - 1
            free &= ~((1 << v) | (1 << w))
            size += 1
    return size


def _min_cover_size(adj: list[int], alive: int) -> int:
    """Exact minimum vertex cover of the subgraph induced by ``alive``."""
    best = [bin(alive).count("1")]

    def rec(alive: int, taken: int):
        if taken + _matching_bound(adj, alive) >= best[0]:
            return
        # highest remaining degree
        pick, deg = -1, 0
        for v in _bits(alive):
            d = bin(adj[v] & alive).count("1")
            if d > deg:
                pick, deg = v, d
        if deg == 0:
            best[0] = taken
            return
        if deg <= 2 and _max_degree_two(adj, alive):
            best[0] = min(best[0], taken + _paths_cycles_cover(adj, alive))
            return
        rec(alive & ~(1 << pick), taken + 1)
        nb = adj[pick] & alive
        rec(alive & ~nb & ~(1 << pick), taken + bin(nb).count("1"))

    rec(alive, 0)
    return best[0]


def _max_degree_two(adj: list[int], alive: int) -> bool:
    return all(bin(adj[v] & alive).count("1") <= 2 for v in _bits(alive))


def _paths_cycles_cover(adj: list[int], alive: int) -> int:
    """Minimum cover of a disjoint union of paths and cycles."""
    total = 0
    seen = 0
    for s in _bits(alive):
        if seen >> s & 1:
            continue
        comp, stack, edges2 = 0, [s], 0
        comp |= 1 << s
        while stack:
            x = stack.pop()
            for y in _bits(adj[x] & alive):
                edges2 += 1
                if not comp >> y & 1:
                    comp |= 1 << y
                    stack.append(y)
        seen |= comp
        size, m = bin(comp).count("1"), edges2 // 2
        if m == size and size >= 3:      # cycle
            total += (size + 1) // 2
        else:                            # path on `size` vertices
            total += size // 2
    return total


def _adj(g: Graph) -> list[int]:
    return list(g.adj_masks)


def minimum_cover_size(g: Graph, forced=()) -> int:
    """Size of a minimum vertex cover containing every vertex of ``forced``."""
    adj = _adj(g)
    forced_mask = sum(1 << x for x in set(forced))
    alive = ((1 << g.n) - 1) & ~forced_mask
    return len(set(forced)) + _min_cover_size(adj, alive)


def _enumerate_covers(adj: list[int], n: int, size: int, cap: int):
    """All vertex covers of cardinality ``size`` (a minimum) up to ``cap``."""
    out: list[frozenset[int]] = []
    capped = False

    def rec(alive: int, taken: int, chosen: int) -> bool:
        nonlocal capped
        budget = size - bin(chosen).count("1")
        if _matching_bound(adj, alive) > budget:
            return True
        u = -1
        for v in _bits(alive):
            if adj[v] & alive:
                u = v
                break
        if u < 0:
            if len(out) >= cap:
                capped = True
                return False
            out.append(frozenset(_bits(chosen)))
            return True
        # u in the cover, or u out and all its live neighbours in
        if not rec(alive & ~(1 << u), taken, chosen | 1 << u):
            return False
        nb = adj[u] & alive
        return rec(alive & ~nb & ~(1 << u), taken, chosen | nb)

    rec((1 << n) - 1, 0, 0)
    return out, capped


def cyclicity_undirected(g: Graph, cap: int = WITNESS_CAP) -> CoverSolution:
    """Minimum vertex cover size with every optimal cover (up to ``cap``)."""
    adj = _adj(g)
    size = _min_cover_size(adj, (1 << g.n) - 1)
    witnesses, capped = _enumerate_covers(adj, g.n, size, cap)
    witnesses.sort(key=sorted)
    return CoverSolution(size, tuple(witnesses), capped)


def covers_containing(g: Graph, S, cap: int = WITNESS_CAP) -> bool:
    """True iff some minimum vertex cover contains all of S."""
    S = frozenset(S)
    for x in S:
        if not 0 <= x < g.n:
            raise InputError(f"vertex {x} out of range")
    sol = cyclicity_undirected(g, cap)
    if not sol.capped:
        return any(S <= w for w in sol.witnesses)
    return minimum_cover_size(g, S) == sol.size


def _acyclic_without(g: Digraph, removed: frozenset[int]) -> bool:
    indeg = [0] * g.n
    for u, v in g.arcs:
        if u not in removed and v not in removed:
            if u == v:
                return False
            indeg[v] += 1
    stack = [v for v in range(g.n) if v not in removed and indeg[v] == 0]
    count = 0
    while stack:
        u = stack.pop()
        count += 1
        for w in g.succ[u]:
            if w not in removed:
                indeg[w] -= 1
                if indeg[w] == 0:
                    stack.append(w)
    return count == g.n - len(removed)


def _cyclic_vertices(g: Digraph) -> list[int]:
    """Vertices lying on some directed cycle (loop or non-trivial SCC)."""
    h = nx.DiGraph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.arcs)
    out = set()
    for comp in nx.strongly_connected_components(h):
        if len(comp) > 1:
            out |= comp
    out |= {u for u, v in g.arcs if u == v}
    return sorted(out)


def cyclicity_digraph(g: Digraph, cap: int = WITNESS_CAP,
                      budget: int = FVS_SUBSET_BUDGET) -> CoverSolution:
    """Minimum feedback vertex set by subset search of increasing size.

    Only vertices on some cycle are candidates. Every minimum set is listed
    up to ``cap``.
    """
    cand = _cyclic_vertices(g)
    tried = 0
    for size in range(len(cand) + 1):
        found: list[frozenset[int]] = []
        capped = False
        for s in combinations(cand, size):
            tried += 1
            if tried > budget:
                raise BudgetError(f"feedback vertex search exceeded {budget} subsets",
                                  estimate=2 ** len(cand), lower_bound=size)
            fs = frozenset(s)
            if _acyclic_without(g, fs):
                if len(found) >= cap:
                    capped = True
                    break
                found.append(fs)
        if found:
            return CoverSolution(size, tuple(found), capped)
    raise AssertionError("removing every cyclic vertex leaves a DAG")  # pragma: no cover
