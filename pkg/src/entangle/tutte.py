"""Hinges, bridges and the Tutte decomposition of 2-connected graphs.

A hinge is a 2-separator {x, y} with at least three [x,y]-bridges, or with
two bridges at least one of which is 2-connected.  An existing edge xy counts
as a bridge of its own.

The decomposition splits the graph along every hinge, lexicographically
least first.  Each split replaces the far side of the hinge by a virtual
edge; when a hinge has three or more bridges the pieces hang off a bond node
that keeps the real edge xy, if any.  Twin virtual edges share a tag, and the
tree edges join the two nodes holding each tag.  Every real edge ends up in
exactly one torso.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations

from .connectivity import connectivity
from .errors import InputError, InvariantError
from .graph import Graph, MultiEdge, MultiGraph, component_of, components

CYCLE = "cycle"
BOND = "bond"
THREE_CONNECTED = "threeConnected"


@dataclass(frozen=True)
class Separation:
    A: frozenset[int]
    B: frozenset[int]

    @property
    def separator(self) -> frozenset[int]:
        return self.A & self.B

    @property
    def order(self) -> int:
        return len(self.separator)

    def is_valid(self, g: Graph) -> bool:
        if self.A | self.B != frozenset(range(g.n)):
            return False
        only_a, only_b = self.A - self.B, self.B - self.A
        return not any((u in only_a and v in only_b) or (u in only_b and v in only_a)
                       for u, v in g.edges)


@dataclass(frozen=True)
class Bridge:
    """A component of G - S with its attachment edges, or one edge inside S."""

    vertices: frozenset[int]
    edges: frozenset[tuple[int, int]]
    trivial: bool = False

    def graph(self) -> tuple[Graph, dict[int, int]]:
        order = sorted(self.vertices)
        idx = {v: i for i, v in enumerate(order)}
        return Graph(len(order), frozenset((idx[u], idx[v]) for u, v in self.edges)), idx

    def is_2_connected(self) -> bool:
        h, _ = self.graph()
        return is_2_connected(h)


def is_2_connected(g: Graph) -> bool:
    """At least three vertices, connected, and no cut vertex."""
    if g.n < 3 or not g.is_connected():
        return False
    return all(len(component_of(g, (v + 1) % g.n, {v})) == g.n - 1 for v in range(g.n))


def bridges_of(g: Graph, S) -> list[Bridge]:
    """All S-bridges of g: extended components of g - S, then edges inside S."""
    S = frozenset(S)
    out = []
    for comp in components(g, S):
        edges = frozenset((u, v) for u, v in g.edges
                          if (u in comp or v in comp))
        verts = frozenset(comp) | {x for e in edges for x in e}
        out.append(Bridge(verts, edges))
    for u, v in sorted(g.edges):
        if u in S and v in S:
            out.append(Bridge(frozenset((u, v)), frozenset([(u, v)]), trivial=True))
    return out


@dataclass(frozen=True)
class Hinge:
    x: int
    y: int
    bridges: tuple[Bridge, ...]

    @property
    def pair(self) -> tuple[int, int]:
        return (self.x, self.y)

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.pair)


def hinge_bridges(g: Graph, x: int, y: int) -> tuple[Bridge, ...] | None:
    """The bridges of {x, y} when it is a hinge, else None."""
    comps = components(g, {x, y})
    if len(comps) < 2:
        return None
    bridges = bridges_of(g, {x, y})
    if len(bridges) >= 3:
        return tuple(bridges)
    if any(b.is_2_connected() for b in bridges):
        return tuple(bridges)
    return None


def hinges(g: Graph) -> list[Hinge]:
    """Every hinge of a 2-connected graph, in lexicographic order."""
    _require_2_connected(g)
    out = []
    for x, y in combinations(range(g.n), 2):
        b = hinge_bridges(g, x, y)
        if b is not None:
            out.append(Hinge(x, y, b))
    return out


def _require_2_connected(g: Graph):
    if not is_2_connected(g):
        raise InputError("graph must be 2-connected with at least 3 vertices")


@dataclass(frozen=True)
class TutteTree:
    """Tree of bags; ``torsos[i]`` lives on the local ids ``sorted(bags[i])``."""

    graph: Graph
    bags: tuple[frozenset[int], ...]
    torsos: tuple[MultiGraph, ...]
    kinds: tuple[str, ...]
    tree_edges: tuple[tuple[int, int], ...]
    hinge_labels: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        if not self.hinge_labels:
            labels = tuple(tuple(sorted(self.bags[i] & self.bags[j])) for i, j in self.tree_edges)
            object.__setattr__(self, "hinge_labels", labels)

    @property
    def size(self) -> int:
        return len(self.bags)

    def order(self, i: int) -> list[int]:
        return sorted(self.bags[i])

    def kind(self, i: int) -> str:
        if self.kinds[i] == BOND:
            return f"bond({len(self.torsos[i].edges)})"
        return self.kinds[i]

    def neighbours(self) -> list[list[int]]:
        nb: list[list[int]] = [[] for _ in self.bags]
        for i, j in self.tree_edges:
            nb[i].append(j)
            nb[j].append(i)
        return [sorted(x) for x in nb]

    def torso_in_graph_ids(self, i: int) -> list[MultiEdge]:
        order = self.order(i)
        return [MultiEdge(order[e.u], order[e.v], e.virtual, e.tag) for e in self.torsos[i].edges]

    def label(self, v: int) -> str:
        return self.graph.label(v)

    def to_dict(self) -> dict:
        nodes = []
        for i in range(self.size):
            nodes.append({
                "id": i,
                "bag": [self.label(v) for v in self.order(i)],
                "kind": self.kind(i),
                "edges": [[self.label(e.u), self.label(e.v)] + (["virtual"] if e.virtual else [])
                          for e in self.torso_in_graph_ids(i)],
            })
        edges = [{"nodes": [i, j], "hinge": [self.label(v) for v in lab]}
                 for (i, j), lab in zip(self.tree_edges, self.hinge_labels)]
        return {"nodes": nodes, "treeEdges": edges}

    def to_dot(self) -> str:
        lines = ["graph tutte {", "  compound=true;"]
        for i in range(self.size):
            lines.append(f"  subgraph cluster_{i} {{")
            lines.append(f'    label="{i}: {self.kind(i)}"; shape=box;')
            for v in self.order(i):
                lines.append(f'    t{i}_{v} [label="{self.label(v)}"];')
            for e in self.torso_in_graph_ids(i):
                style = " [style=dashed]" if e.virtual else ""
                lines.append(f"    t{i}_{e.u} -- t{i}_{e.v}{style};")
            lines.append("  }")
        for (i, j), lab in zip(self.tree_edges, self.hinge_labels):
            a, b = min(self.bags[i]), min(self.bags[j])
            name = "{" + ",".join(self.label(v) for v in lab) + "}"
            lines.append(f'  t{i}_{a} -- t{j}_{b} [ltail=cluster_{i},lhead=cluster_{j},'
                         f'label="{name}",penwidth=2];')
        lines.append("}")
        return "\n".join(lines) + "\n"


class _Piece:
    __slots__ = ("verts", "edges", "bond")

    def __init__(self, verts, edges, bond=False):
        self.verts = frozenset(verts)
        self.edges = list(edges)   # MultiEdge in graph ids
        self.bond = bond


def _split(piece: _Piece, x: int, y: int, next_tag) -> list[_Piece]:
    """Split a piece at hinge {x, y}; twin virtual edges share fresh tags."""
    adj = defaultdict(set)
    for e in piece.edges:
        adj[e.u].add(e.v)
        adj[e.v].add(e.u)
    seen = {x, y}
    comps = []
    for s in sorted(piece.verts - {x, y}):
        if s in seen:
            continue
        comp = {s}
        stack = [s]
        seen.add(s)
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    stack.append(w)
        comps.append(comp)
    direct = [e for e in piece.edges if {e.u, e.v} == {x, y}]
    if len(comps) < 2:
        raise InvariantError(f"hinge {{{x},{y}}} does not separate its piece")
    a, b = min(x, y), max(x, y)
    parts = []
    for comp in comps:
        edges = [e for e in piece.edges if e.u in comp or e.v in comp]
        parts.append(_Piece(comp | {x, y}, edges))
    if len(comps) + len(direct) >= 3:
        bond = _Piece({x, y}, list(direct), bond=True)
        for p in parts:
            t = next_tag()
            p.edges.append(MultiEdge(a, b, True, t))
            bond.edges.append(MultiEdge(a, b, True, t))
        return [bond] + parts
    t = next_tag()
    for p in parts:
        p.edges.append(MultiEdge(a, b, True, t))
    return parts


def _classify(torso: MultiGraph) -> str:
    if torso.n == 2:
        if len(torso.edges) < 3:
            raise InvariantError(f"bond with {len(torso.edges)} edges in the decomposition")
        return BOND
    if not torso.is_simple():
        raise InvariantError("non-bond torso with parallel edges")
    simple = torso.simple()
    if torso.n >= 3 and simple.is_connected() and all(simple.degree(v) == 2 for v in range(simple.n)):
        return CYCLE
    if torso.n >= 4 and connectivity(simple).at_least(3):
        return THREE_CONNECTED
    raise InvariantError(f"torso on {torso.n} vertices is neither cycle, bond nor 3-connected")


def build_tutte_tree(g: Graph, hinge_list: list[Hinge] | None = None) -> TutteTree:
    """Canonical Tutte decomposition of a 2-connected graph."""
    if hinge_list is None:
        hinge_list = hinges(g)
    pieces = [_Piece(range(g.n), [MultiEdge(u, v) for u, v in g.sorted_edges()])]
    counter = iter(range(1, 1 << 30))

    def next_tag():
        return next(counter)

    for h in hinge_list:
        owners = [i for i, p in enumerate(pieces) if not p.bond and h.vertices <= p.verts]
        if len(owners) != 1:
            raise InvariantError(f"hinge {h.pair} lies in {len(owners)} pieces")
        i = owners[0]
        pieces[i:i + 1] = _split(pieces[i], h.x, h.y, next_tag)

    # canonical node order: sorted bag, bonds before others on the same bag
    pieces.sort(key=lambda p: (sorted(p.verts), not p.bond))
    bags, torsos, kinds = [], [], []
    holder: dict[int, list[int]] = defaultdict(list)
    for idx, p in enumerate(pieces):
        order = sorted(p.verts)
        local = {v: i for i, v in enumerate(order)}
        labels = {local[v]: g.label(v) for v in order}
        torso = MultiGraph(len(order), tuple(MultiEdge(local[e.u], local[e.v], e.virtual, e.tag)
                                             for e in p.edges), labels)
        bags.append(p.verts)
        torsos.append(torso)
        kinds.append(_classify(torso))
        for e in p.edges:
            if e.virtual:
                holder[e.tag].append(idx)
    tree_edges = []
    for tag, nodes in holder.items():
        if len(nodes) != 2 or nodes[0] == nodes[1]:
            raise InvariantError(f"virtual edge tag {tag} held by nodes {nodes}")
        tree_edges.append(tuple(sorted(nodes)))
    tree_edges.sort()
    tree = TutteTree(g, tuple(bags), tuple(torsos), tuple(kinds), tuple(tree_edges))
    report = validate_tree_decomposition(g, tree)
    if not report.ok:
        raise InvariantError("constructed decomposition is invalid: " + "; ".join(report.violations))
    return tree


@dataclass
class ValidationReport:
    ok: bool
    violations: list[str]


def _tree_components_without(n_nodes: int, edges, skip: int) -> tuple[set[int], set[int]]:
    i, j = edges[skip]
    adj = defaultdict(set)
    for k, (a, b) in enumerate(edges):
        if k != skip:
            adj[a].add(b)
            adj[b].add(a)
    side = {i}
    stack = [i]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in side:
                side.add(w)
                stack.append(w)
    return side, set(range(n_nodes)) - side


def validate_tree_decomposition(g: Graph, t: TutteTree) -> ValidationReport:
    """Check the tree-decomposition axioms plus the hinge-edge rules."""
    bad: list[str] = []
    nodes = len(t.bags)
    edges = list(t.tree_edges)
    # the index structure must itself be a tree
    is_tree = len(edges) == nodes - 1
    if not is_tree:
        bad.append(f"tree has {nodes} nodes but {len(edges)} edges")
    else:
        adj = defaultdict(set)
        for a, b in edges:
            adj[a].add(b)
            adj[b].add(a)
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in adj[u] - seen:
                seen.add(w)
                stack.append(w)
        if len(seen) != nodes:
            is_tree = False
            bad.append("tree is disconnected")
    covered = set().union(*t.bags) if t.bags else set()
    missing = set(range(g.n)) - covered
    if missing:
        bad.append(f"T-1: vertices {sorted(missing)} in no bag")
    for u, v in g.sorted_edges():
        if not any(u in b and v in b for b in t.bags):
            bad.append(f"T-2: edge {u}-{v} in no bag")
    for v in range(g.n):
        holding = {i for i, b in enumerate(t.bags) if v in b}
        if not holding:
            continue
        start = min(holding)
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for a, b in edges:
                for p, q in ((a, b), (b, a)):
                    if p == u and q in holding and q not in seen:
                        seen.add(q)
                        stack.append(q)
        if seen != holding:
            bad.append(f"T-3: bags holding vertex {v} are not connected in the tree")
    for k, (a, b) in enumerate(edges):
        inter = t.bags[a] & t.bags[b]
        if len(inter) != 2:
            bad.append(f"tree edge {a}-{b}: bags meet in {len(inter)} vertices, expected 2")
            continue
        if is_tree:
            left, right = _tree_components_without(nodes, edges, k)
            u1 = set().union(*(t.bags[i] for i in left)) - inter
            u2 = set().union(*(t.bags[i] for i in right)) - inter
            reach = set()
            for s in u1:
                if s not in reach:
                    reach |= component_of(g, s, inter)
            if reach & u2:
                bad.append(f"tree edge {a}-{b}: {sorted(inter)} does not separate its sides")
    return ValidationReport(not bad, bad)


def _edge_key(e) -> MultiEdge:
    if isinstance(e, MultiEdge):
        return e
    u, v = e
    return MultiEdge(min(u, v), max(u, v))


def two_sum(g1: Graph | MultiGraph, e1, g2: Graph | MultiGraph, e2,
            simplify: bool | None = None) -> Graph | MultiGraph:
    """Glue g2 onto g1 along e1 = (a1, b1) and e2 = (a2, b2), deleting both.

    a2 is identified with a1 and b2 with b1.  Vertices of g1 keep their ids;
    the remaining vertices of g2 follow in increasing order.  For multigraph
    input ``e1``/``e2`` may be MultiEdges naming one copy of a parallel edge.
    The result is a simple Graph when both inputs are simple (or ``simplify``
    is set), otherwise a MultiGraph.
    """
    if simplify is None:
        simplify = isinstance(g1, Graph) and isinstance(g2, Graph)
    m1 = g1 if isinstance(g1, MultiGraph) else MultiGraph.from_graph(g1)
    m2 = g2 if isinstance(g2, MultiGraph) else MultiGraph.from_graph(g2)
    a1, b1 = e1[0], e1[1]
    a2, b2 = e2[0], e2[1]
    l1 = list(m1.edges)
    l2 = list(m2.edges)
    for lst, e, name in ((l1, e1, "first"), (l2, e2, "second")):
        want = _edge_key(e)
        hit = next((i for i, f in enumerate(lst)
                    if (f.u, f.v) == (want.u, want.v)
                    and (not isinstance(e, MultiEdge) or f == want)), None)
        if hit is None:
            raise InputError(f"{tuple(e)[:2]} is not an edge of the {name} graph")
        del lst[hit]
    mapping = {a2: a1, b2: b1}
    nxt = m1.n
    for v in range(m2.n):
        if v not in mapping:
            mapping[v] = nxt
            nxt += 1
    edges = l1 + [MultiEdge(mapping[f.u], mapping[f.v], f.virtual, f.tag) for f in l2]
    labels = None
    if m1.labels or m2.labels:
        labels = {v: (m1.labels or {}).get(v, str(v)) for v in range(m1.n)}
        for v in range(m2.n):
            if v not in (a2, b2):
                labels[mapping[v]] = (m2.labels or {}).get(v, str(v))
    result = MultiGraph(nxt, tuple(edges), labels)
    return result.simple() if simplify else result


def recompose(t: TutteTree) -> Graph:
    """Fold the torsos back together by 2-sums over twin virtual edges."""
    if not t.bags:
        raise InputError("empty decomposition")
    adj = defaultdict(list)
    for i, j in t.tree_edges:
        adj[i].append(j)
        adj[j].append(i)
    # accumulator in graph ids: (vertex count is g.n, unused ids isolated)
    n = t.graph.n
    acc = MultiGraph(n, tuple(t.torso_in_graph_ids(0)))
    seen = {0}
    queue = [0]
    while queue:
        i = queue.pop(0)
        for j in sorted(adj[i]):
            if j in seen:
                continue
            seen.add(j)
            queue.append(j)
            tags_i = {e.tag for e in acc.edges if e.virtual}
            child = t.torsos[j]
            shared = [e for e in child.edges if e.virtual and e.tag in tags_i]
            if len(shared) != 1:
                raise InvariantError(f"node {j} shares {len(shared)} virtual edges with its parent")
            ce = shared[0]
            pe = next(e for e in acc.edges if e.virtual and e.tag == ce.tag)
            order = t.order(j)
            if {order[ce.u], order[ce.v]} != {pe.u, pe.v}:
                raise InvariantError(f"twin virtual edges of tag {ce.tag} join different pairs")
            # embed the child so the glue vertices land on the parent's ends
            child_ids = MultiGraph(n, tuple(MultiEdge(order[e.u], order[e.v], e.virtual, e.tag)
                                            for e in child.edges))
            glued = two_sum(acc, pe, child_ids,
                            MultiEdge(pe.u, pe.v, True, ce.tag), simplify=False)
            # two_sum appended the child's vertices after acc's; fold them back
            back = {v: v for v in range(n)}
            for k, v in enumerate(x for x in range(n) if x not in (pe.u, pe.v)):
                back[n + k] = v
            acc = MultiGraph(n, tuple(MultiEdge(back[e.u], back[e.v], e.virtual, e.tag)
                                      for e in glued.edges))
    if len(seen) != len(t.bags):
        raise InvariantError("decomposition tree is disconnected")
    if acc.virtual_edges():
        raise InvariantError("unmatched virtual edges remain after recomposition")
    if not acc.is_simple():
        raise InvariantError("recomposition produced parallel real edges")
    return Graph(n, frozenset((e.u, e.v) for e in acc.edges), t.graph.labels)


def hinge_node_form(t: TutteTree) -> tuple[list[frozenset[int]], list[tuple[int, int]], list[bool]]:
    """Subdivide every tree edge by a node whose bag is the hinge.

    Returns bags, edges and a flag per node telling hinge nodes apart.
    """
    bags = list(t.bags)
    is_hinge = [False] * len(bags)
    edges = []
    for (i, j), lab in zip(t.tree_edges, t.hinge_labels):
        bags.append(frozenset(lab))
        is_hinge.append(True)
        h = len(bags) - 1
        edges += [(i, h), (j, h)]
    return bags, edges, is_hinge


def tree_paths(t: TutteTree):
    """Every simple path of the tree as a node list (each path once)."""
    nb = t.neighbours()
    for s in range(t.size):
        stack = [[s]]
        while stack:
            path = stack.pop()
            if len(path) > 1 and path[0] < path[-1]:
                yield path
            for w in nb[path[-1]]:
                if w not in path:
                    stack.append(path + [w])


def edge_label(t: TutteTree, i: int, j: int) -> frozenset[int]:
    return t.bags[i] & t.bags[j]


def check_path_labels(t: TutteTree) -> list[str]:
    """Label rules along tree paths; returns the violations found.

    Consecutive hinge labels share at most one vertex, and once two labels
    on a path are disjoint every later label is disjoint from the earlier.
    A bond carries the same hinge on all its edges, so repeated labels
    collapse into one before the checks.
    """
    bad = []
    for path in tree_paths(t):
        labels = []
        for a, b in zip(path, path[1:]):
            lab = edge_label(t, a, b)
            if not labels or labels[-1] != lab:
                labels.append(lab)
        for k in range(len(labels) - 1):
            if len(labels[k] & labels[k + 1]) > 1:
                bad.append(f"path {path}: labels {k},{k + 1} share two vertices")
        for i in range(len(labels)):
            for j in range(i + 1, len(labels)):
                if not labels[i] & labels[j]:
                    for l in range(j + 1, len(labels)):
                        if labels[i] & labels[l]:
                            bad.append(f"path {path}: label {l} meets {i} after {j} did not")
    return bad


def hinges_cross(g: Graph, h1: Hinge, h2: Hinge) -> bool:
    """True if disjoint hinge h2 has vertices in two different bridges of h1."""
    if h1.vertices & h2.vertices:
        return False
    owners = set()
    for v in h2.pair:
        owners.add(next(i for i, b in enumerate(h1.bridges)
                        if not b.trivial and v in b.vertices))
    return len(owners) > 1


def canonical_form(t: TutteTree) -> tuple:
    """Label-independent summary used to compare decompositions."""
    nodes = sorted((tuple(sorted(b)), t.kind(i)) for i, b in enumerate(t.bags))
    edges = sorted(tuple(sorted((tuple(sorted(t.bags[i])), tuple(sorted(t.bags[j])))))
                   for i, j in t.tree_edges)
    return tuple(nodes), tuple(edges)
