"""Graph types and the three minor operations.

Vertices are dense integer ids ``0..n-1``; labels are cosmetic and never take
part in equality. All graph values are immutable.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, NamedTuple

from .errors import InputError

Edge = tuple[int, int]


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Finite simple undirected graph."""

    n: int
    edges: frozenset[Edge]
    labels: Mapping[int, str] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.n < 0:
            raise InputError(f"vertex count must be non-negative, got {self.n}")
        norm = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise InputError(f"self-loop on vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InputError(f"edge {u}-{v} has an endpoint outside 0..{self.n - 1}")
            norm.add(_norm(u, v))
        object.__setattr__(self, "edges", frozenset(norm))
        if self.labels is not None:
            bad = [i for i in self.labels if not 0 <= i < self.n]
            if bad:
                raise InputError(f"labels reference unknown vertices {bad}")
            object.__setattr__(self, "labels", dict(self.labels))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge], labels=None) -> "Graph":
        edges = list(edges)
        seen = set()
        for u, v in edges:
            e = _norm(u, v)
            if e in seen:
                raise InputError(f"duplicate edge {e[0]}-{e[1]}")
            seen.add(e)
        return cls(n, frozenset(edges), labels)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adj(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def adj_masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << w for w in s) for s in self.adj)

    def vertices(self) -> range:
        return range(self.n)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self.edges

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def label(self, v: int) -> str:
        if self.labels and v in self.labels:
            return self.labels[v]
        return str(v)

    def vertex_id(self, name: str | int) -> int:
        """Resolve a label (or a decimal id) to a vertex id."""
        if self.labels:
            for i, lab in self.labels.items():
                if lab == name:
                    return i
        try:
            i = int(name)
        except (TypeError, ValueError):
            raise InputError(f"unknown vertex {name!r}") from None
        if not 0 <= i < self.n:
            raise InputError(f"vertex {i} out of range")
        return i

    def ids(self, *names) -> list[int]:
        return [self.vertex_id(x) for x in names]

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        return len(component_of(self, 0)) == self.n

    def to_digraph(self) -> "Digraph":
        """The symmetric digraph: each edge becomes a pair of opposite arcs."""
        arcs = set()
        for u, v in self.edges:
            arcs.add((u, v))
            arcs.add((v, u))
        return Digraph(self.n, frozenset(arcs), self.labels)

    def relabel(self, perm: list[int] | Mapping[int, int]) -> "Graph":
        """Image of the graph under the bijection ``v -> perm[v]``."""
        labels = None
        if self.labels:
            labels = {perm[i]: lab for i, lab in self.labels.items()}
        return Graph(self.n, frozenset(_norm(perm[u], perm[v]) for u, v in self.edges), labels)

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Digraph:
    """Finite digraph; self-loops are allowed (a loop is a directed 1-cycle)."""

    n: int
    arcs: frozenset[Edge]
    labels: Mapping[int, str] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        for u, v in self.arcs:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InputError(f"arc {u}->{v} has an endpoint outside 0..{self.n - 1}")
        object.__setattr__(self, "arcs", frozenset(self.arcs))

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[Edge], labels=None) -> "Digraph":
        arcs = list(arcs)
        if len(set(arcs)) != len(arcs):
            raise InputError("duplicate arc")
        return cls(n, frozenset(arcs), labels)

    @cached_property
    def succ(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            out[u].append(v)
        return tuple(tuple(sorted(s)) for s in out)

    def is_symmetric(self) -> bool:
        return all((v, u) in self.arcs for u, v in self.arcs)

    def __repr__(self):
        return f"Digraph(n={self.n}, arcs={len(self.arcs)})"


class MultiEdge(NamedTuple):
    u: int
    v: int
    virtual: bool = False
    tag: int | None = None


@dataclass(frozen=True)
class MultiGraph:
    """Undirected multigraph whose edges are tagged original or virtual.

    ``tag`` pairs each virtual edge with its twin in a neighbouring torso.
    """

    n: int
    edges: tuple[MultiEdge, ...]
    labels: Mapping[int, str] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        norm = []
        for e in self.edges:
            e = MultiEdge(*e)
            if e.u == e.v:
                raise InputError(f"self-loop on vertex {e.u}")
            if not (0 <= e.u < self.n and 0 <= e.v < self.n):
                raise InputError(f"edge {e.u}-{e.v} out of range")
            u, v = _norm(e.u, e.v)
            norm.append(MultiEdge(u, v, bool(e.virtual), e.tag))
        object.__setattr__(self, "edges", tuple(sorted(norm, key=lambda e: (e.u, e.v, e.virtual, e.tag is not None, e.tag or 0))))

    @classmethod
    def from_graph(cls, g: Graph) -> "MultiGraph":
        return cls(g.n, tuple(MultiEdge(u, v) for u, v in g.sorted_edges()), g.labels)

    def multiplicity(self, u: int, v: int) -> int:
        a, b = _norm(u, v)
        return sum(1 for e in self.edges if e.u == a and e.v == b)

    def pair_counts(self) -> Counter:
        return Counter((e.u, e.v) for e in self.edges)

    def is_simple(self) -> bool:
        return all(c == 1 for c in self.pair_counts().values())

    def virtual_edges(self) -> list[MultiEdge]:
        return [e for e in self.edges if e.virtual]

    def original_edges(self) -> list[MultiEdge]:
        return [e for e in self.edges if not e.virtual]

    def simple(self) -> Graph:
        """Underlying simple graph (parallel edges merged, tags dropped)."""
        return Graph(self.n, frozenset((e.u, e.v) for e in self.edges), self.labels)

    def __repr__(self):
        return f"MultiGraph(n={self.n}, m={len(self.edges)}, virtual={len(self.virtual_edges())})"


def component_of(g: Graph, start: int, removed: frozenset[int] | set[int] = frozenset()) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in g.adj[u]:
            if w not in seen and w not in removed:
                seen.add(w)
                stack.append(w)
    return seen


def components(g: Graph, removed: Iterable[int] = ()) -> list[set[int]]:
    """Connected components of ``g`` minus ``removed``, ordered by least vertex."""
    removed = frozenset(removed)
    out = []
    seen: set[int] = set(removed)
    for v in range(g.n):
        if v not in seen:
            comp = component_of(g, v, removed)
            seen |= comp
            out.append(comp)
    return out


def induced_subgraph(g: Graph, X: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """G[X], relabelled to ``0..|X|-1`` in increasing id order.

    Returns the subgraph and the map old id -> new id.
    """
    xs = sorted(set(X))
    for x in xs:
        if not 0 <= x < g.n:
            raise InputError(f"vertex {x} out of range 0..{g.n - 1}")
    idmap = {old: new for new, old in enumerate(xs)}
    edges = frozenset((idmap[u], idmap[v]) for u, v in g.edges if u in idmap and v in idmap)
    labels = {idmap[i]: lab for i, lab in g.labels.items() if i in idmap} if g.labels else None
    return Graph(len(xs), edges, labels), idmap


def _drop_vertex(g: Graph, w: int, edges: Iterable[Edge]) -> Graph:
    def shift(x):
        return x - 1 if x > w else x

    new_edges = frozenset(_norm(shift(u), shift(v)) for u, v in edges)
    labels = None
    if g.labels:
        labels = {shift(i): lab for i, lab in g.labels.items() if i != w}
    return Graph(g.n - 1, new_edges, labels)


def delete_edge(g: Graph, u: int, v: int) -> Graph:
    e = _norm(u, v)
    if e not in g.edges:
        raise InputError(f"{u}-{v} is not an edge")
    return Graph(g.n, g.edges - {e}, g.labels)


def contract_edge(g: Graph, u: int, v: int) -> Graph:
    """Merge the endpoints of edge uv into the smaller id.

    Loops and parallel edges created by the merge are dropped; ids above the
    removed endpoint shift down by one.
    """
    a, b = _norm(u, v)
    if (a, b) not in g.edges:
        raise InputError(f"cannot contract {u}-{v}: not an edge")
    merged = set()
    for x, y in g.edges:
        x = a if x == b else x
        y = a if y == b else y
        if x != y:
            merged.add(_norm(x, y))
    return _drop_vertex(g, b, merged)


def delete_isolated_vertex(g: Graph, v: int) -> Graph:
    if not 0 <= v < g.n:
        raise InputError(f"vertex {v} out of range")
    if g.adj[v]:
        raise InputError(f"vertex {v} is not isolated (degree {g.degree(v)})")
    return _drop_vertex(g, v, g.edges)


MINOR_OPS = ("delete-edge", "contract-edge", "delete-isolated-vertex")


def minor_op(g: Graph, op: str, arg) -> Graph:
    """Apply one minor operation; ``arg`` is an edge pair or a vertex id."""
    if op == "delete-edge":
        return delete_edge(g, *arg)
    if op == "contract-edge":
        return contract_edge(g, *arg)
    if op == "delete-isolated-vertex":
        return delete_isolated_vertex(g, arg)
    raise InputError(f"unknown minor operation {op!r}")


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset(combinations(range(n), 2)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InputError("a cycle needs at least 3 vertices")
    return Graph(n, frozenset(_norm(i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


def empty_graph(n: int) -> Graph:
    return Graph(n, frozenset())


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, frozenset((i, a + j) for i in range(a) for j in range(b)))


def disjoint_union(g: Graph, h: Graph) -> Graph:
    shifted = frozenset((u + g.n, v + g.n) for u, v in h.edges)
    return Graph(g.n + h.n, g.edges | shifted)
