"""Vertex connectivity, Menger paths and the block-cut tree."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

import networkx as nx

from .errors import InputError, InvariantError
from .graph import Graph, MultiGraph, component_of


@dataclass(frozen=True)
class ConnectivityValue:
    """Either a finite connectivity or the infinite value of complete graphs."""

    value: int | None          # None means infinite
    convention_applied: bool = False

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    @property
    def kind(self) -> str:
        return "infinite" if self.value is None else "finite"

    def at_least(self, k: int) -> bool:
        return self.value is None or self.value >= k

    def __str__(self):
        return "infinite" if self.value is None else str(self.value)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "value": self.value,
                "conventionApplied": self.convention_applied}


INFINITE = ConnectivityValue(None)


def _as_graph(g) -> Graph:
    return g.simple() if isinstance(g, MultiGraph) else g


def vertex_disjoint_paths(g: Graph, a: int, b: int) -> tuple[int, list[list[int]]]:
    """Maximum set of internally disjoint a-b paths, by unit vertex-split flow.

    When a and b are adjacent the edge itself is one of the paths.
    """
    g = _as_graph(g)
    if a == b:
        raise InputError("endpoints of a path query must differ")
    for x in (a, b):
        if not 0 <= x < g.n:
            raise InputError(f"vertex {x} out of range")
    # node 2v is v_in, 2v+1 is v_out; residual capacities in a dict of dicts
    cap: dict[int, dict[int, int]] = {i: {} for i in range(2 * g.n)}

    def arc(x, y, c):
        cap[x][y] = cap[x].get(y, 0) + c
        cap[y].setdefault(x, 0)

    for v in range(g.n):
        arc(2 * v, 2 * v + 1, 1)
    for u, v in g.edges:
        arc(2 * u + 1, 2 * v, 1)
        arc(2 * v + 1, 2 * u, 1)
    src, dst = 2 * a + 1, 2 * b
    flow = 0
    while True:
        parent = {src: None}
        queue = deque([src])
        while queue and dst not in parent:
            x = queue.popleft()
            for y in sorted(cap[x]):
                if cap[x][y] > 0 and y not in parent:
                    parent[y] = x
                    queue.append(y)
        if dst not in parent:
            break
        y = dst
        while parent[y] is not None:
            x = parent[y]
            cap[x][y] -= 1
            cap[y][x] += 1
            y = x
        flow += 1

    # an original arc x->y carries flow iff its reverse residual went up
    used: dict[int, list[int]] = {}
    for u, v in g.edges:
        for x, y in ((u, v), (v, u)):
            xo, yi = 2 * x + 1, 2 * y
            if cap[yi][xo] > 0 and cap[xo][yi] == 0:
                used.setdefault(x, []).append(y)
    paths = []
    for first in sorted(used.get(a, [])):
        path = [a, first]
        while path[-1] != b:
            path.append(used[path[-1]].pop())
        paths.append(path)
    return flow, paths


def connectivity(g: Graph, apply_convention: bool = False) -> ConnectivityValue:
    """Largest k with g k-connected; infinite for complete graphs.

    With ``apply_convention`` a clique on k >= 3 vertices gets k - 1.
    """
    g = _as_graph(g)
    n = g.n
    pairs = [(a, b) for a, b in combinations(range(n), 2) if not g.has_edge(a, b)]
    if not pairs:
        if apply_convention and n >= 3:
            return ConnectivityValue(n - 1, convention_applied=True)
        return INFINITE
    best = None
    # disconnected shortcut avoids flows
    if not g.is_connected():
        return ConnectivityValue(0)
    for a, b in pairs:
        k, _ = vertex_disjoint_paths(g, a, b)
        if best is None or k < best:
            best = k
            if best == 0:
                break
    return ConnectivityValue(best)


def is_k_connected(g: Graph, k: int) -> bool:
    if k < 0:
        raise InputError("k must be non-negative")
    if k == 0:
        return True
    return connectivity(g, apply_convention=False).at_least(k)


def minimum_separator_size(g: Graph, a: int, b: int) -> int:
    """Smallest vertex set separating non-adjacent a and b, by enumeration.

    Exponential; meant as an oracle for small graphs.
    """
    g = _as_graph(g)
    if g.has_edge(a, b):
        raise InputError("adjacent vertices cannot be separated")
    rest = [v for v in range(g.n) if v not in (a, b)]
    for size in range(len(rest) + 1):
        for s in combinations(rest, size):
            if b not in component_of(g, a, set(s)):
                return size
    raise InvariantError("non-adjacent vertices always have a separator")  # pragma: no cover


@dataclass(frozen=True)
class BlockCutTree:
    articulation_points: frozenset[int]
    blocks: tuple[frozenset[int], ...]
    tree_edges: tuple[tuple[int, int], ...]   # (articulation point, block index)
    connected: bool

    def to_dict(self) -> dict:
        return {
            "articulationPoints": sorted(self.articulation_points),
            "blocks": [sorted(b) for b in self.blocks],
            "treeEdges": [list(e) for e in self.tree_edges],
            "connected": self.connected,
        }


def block_cut_tree(g: Graph) -> BlockCutTree:
    """Biconnected components and their incidence with cut vertices.

    Isolated vertices are trivial one-vertex blocks; ``connected`` is False
    when the result is a forest rather than a tree.
    """
    g = _as_graph(g)
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    blocks = [frozenset(c) for c in nx.biconnected_components(h)]
    blocks += [frozenset([v]) for v in range(g.n) if g.degree(v) == 0]
    blocks.sort(key=lambda b: sorted(b))
    cuts = frozenset(nx.articulation_points(h))
    edges = tuple(sorted((a, i) for i, b in enumerate(blocks) for a in b if a in cuts))
    return BlockCutTree(cuts, tuple(blocks), edges, g.is_connected())


def emit_block_cut_dot(g: Graph, t: BlockCutTree) -> str:
    lines = ["graph blockcut {"]
    for a in sorted(t.articulation_points):
        lines.append(f'  a{a} [shape=circle,label="{g.label(a)}"];')
    for i, b in enumerate(t.blocks):
        names = " ".join(g.label(v) for v in sorted(b))
        lines.append(f'  b{i} [shape=box,label="{names}"];')
    for a, i in t.tree_edges:
        lines.append(f"  a{a} -- b{i};")
    lines.append("}")
    return "\n".join(lines) + "\n"
