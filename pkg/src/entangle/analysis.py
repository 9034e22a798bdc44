"""Spread, parallel hinges, dominoes and the entanglement-3 structure checker."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

from .errors import InputError
from .graph import Graph
from .molecules import MoleculeWitness, bases, witness_for
from .tutte import THREE_CONNECTED, TutteTree, build_tutte_tree, hinges

DIAMETER_FACTOR = 2 ** 7


def domino(n: int, centered: bool = False) -> Graph:
    """The 2 x (n+1) ladder: rails v_0..v_n and w_0..w_n joined by rungs.

    v_i has id 2i and w_i id 2i+1.  With ``centered`` (n even) the labels run
    from -n/2 to n/2 instead of 0 to n.
    """
    if n < 0:
        raise InputError("domino index must be non-negative")
    if centered and n % 2:
        raise InputError("centered labels need an even domino index")
    shift = n // 2 if centered else 0
    edges = [(2 * i, 2 * i + 1) for i in range(n + 1)]
    edges += [(2 * i, 2 * i + 2) for i in range(n)]
    edges += [(2 * i + 1, 2 * i + 3) for i in range(n)]
    labels = {}
    for i in range(n + 1):
        labels[2 * i] = f"v{i - shift}"
        labels[2 * i + 1] = f"w{i - shift}"
    return Graph.from_edges(2 * n + 2, edges, labels)


def domino_index(label: str) -> int:
    """Rung index encoded in a domino vertex label such as ``v-3``."""
    return int(label[1:])


@dataclass(frozen=True)
class SpreadReport:
    per_vertex: dict[int, int]
    spread: int

    def to_dict(self, g: Graph | None = None) -> dict:
        name = g.label if g is not None else str
        return {"perVertex": {name(v): c for v, c in sorted(self.per_vertex.items())},
                "spread": self.spread}


def spread(g: Graph, hinge_list=None) -> SpreadReport:
    """How many hinges contain each vertex, and the maximum."""
    if hinge_list is None:
        hinge_list = hinges(g)
    counts = {v: 0 for v in range(g.n)}
    for h in hinge_list:
        counts[h.x] += 1
        counts[h.y] += 1
    return SpreadReport(counts, max(counts.values(), default=0))


def _farthest(nb: list[list[int]], start: int) -> tuple[int, int, dict[int, int]]:
    dist = {start: 0}
    parent = {start: -1}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in nb[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                parent[w] = u
                queue.append(w)
    far = max(dist, key=lambda v: (dist[v], -v))
    return far, dist[far], parent


def tree_diameter(t: TutteTree) -> int:
    """Edges on a longest path of the tree as built (bond nodes included)."""
    if t.size <= 1:
        return 0
    nb = t.neighbours()
    a, _, _ = _farthest(nb, 0)
    _, d, _ = _farthest(nb, a)
    return d


def _leaf_paths(t: TutteTree):
    nb = t.neighbours()
    leaves = [i for i in range(t.size) if len(nb[i]) <= 1]
    for a, b in combinations(leaves, 2):
        _, _, parent = _farthest(nb, a)
        path = [b]
        while path[-1] != a:
            path.append(parent[path[-1]])
        yield path[::-1]


def path_hinge_labels(t: TutteTree, path: list[int]) -> list[frozenset[int]]:
    """Distinct hinge labels met along a tree path, in order."""
    out: list[frozenset[int]] = []
    for a, b in zip(path, path[1:]):
        lab = t.bags[a] & t.bags[b]
        if lab not in out:
            out.append(lab)
    return out


def greedy_disjoint(labels: list[frozenset[int]]) -> list[frozenset[int]]:
    """Earliest-first disjoint subfamily of labels read along one path."""
    chosen: list[frozenset[int]] = []
    for lab in labels:
        if not chosen or not (chosen[-1] & lab):
            chosen.append(lab)
    return chosen


def brute_disjoint(labels: list[frozenset[int]]) -> int:
    """Largest pairwise-disjoint subfamily by exhaustive search."""
    for r in range(len(labels), 0, -1):
        for sub in combinations(labels, r):
            if all(not (a & b) for a, b in combinations(sub, 2)):
                return r
    return 0


@dataclass(frozen=True)
class ParallelHinges:
    count: int
    hinges: tuple[tuple[int, int], ...]
    path: tuple[int, ...]


def max_parallel_hinges(g: Graph, t: TutteTree | None = None) -> ParallelHinges:
    """Largest set of pairwise-disjoint hinges lying on one tree path."""
    if t is None:
        t = build_tutte_tree(g)
    best = ParallelHinges(0, (), (0,) if t.size else ())
    for path in _leaf_paths(t):
        chosen = greedy_disjoint(path_hinge_labels(t, path))
        if len(chosen) > best.count:
            best = ParallelHinges(len(chosen), tuple(tuple(sorted(c)) for c in chosen), tuple(path))
    return best


def hinges_path_like(g: Graph, t: TutteTree | None = None) -> bool:
    """True iff one leaf-to-leaf tree path passes every hinge."""
    if t is None:
        t = build_tutte_tree(g)
    every = {t.bags[a] & t.bags[b] for a, b in t.tree_edges}
    if not every:
        return True
    return any(every <= set(path_hinge_labels(t, p)) for p in _leaf_paths(t))


def parallel_to_domino_bound(n_parallel: int) -> int:
    """Index of the domino minor guaranteed by this many parallel hinges."""
    if n_parallel < 8:
        raise InputError("the domino bound needs at least 8 parallel hinges")
    return n_parallel // 4 - 1


def interface(t: TutteTree, i: int) -> frozenset[int]:
    """Vertices of bag i that also lie in a neighbouring bag."""
    out: set[int] = set()
    for j in t.neighbours()[i]:
        out |= t.bags[i] & t.bags[j]
    return frozenset(out)


def torso_graph(t: TutteTree, i: int) -> Graph:
    """Torso i with virtual edges realised, on local ids."""
    return t.torsos[i].simple()


@dataclass
class TorsoFinding:
    node: int
    bag: tuple[int, ...]
    witness: MoleculeWitness | None       # condition 1
    interface: tuple[int, ...]
    interface_base: tuple[int, ...] | None  # condition 2: a base holding the interface
    hingewise: bool = False                  # each shared pair lies in some base

    @property
    def is_molecule(self) -> bool:
        return self.witness is not None

    @property
    def interface_ok(self) -> bool:
        return self.interface_base is not None


@dataclass
class Ent3Report:
    torso_findings: list[TorsoFinding]
    diameter: int
    spread: int
    reasons: list[str] = field(default_factory=list)

    @property
    def diameter_bound(self) -> int:
        return DIAMETER_FACTOR * self.spread

    @property
    def diameter_ok(self) -> bool:
        return self.diameter <= self.diameter_bound

    @property
    def molecules_ok(self) -> bool:
        return all(f.is_molecule for f in self.torso_findings)

    @property
    def interfaces_ok(self) -> bool:
        return all(f.interface_ok for f in self.torso_findings)

    @property
    def hingewise_ok(self) -> bool:
        """Weaker per-hinge reading: every shared pair sits in some base."""
        return all(f.hingewise for f in self.torso_findings)

    @property
    def consistent(self) -> bool:
        return self.molecules_ok and self.interfaces_ok and self.diameter_ok

    @property
    def verdict(self) -> str:
        return "consistent" if self.consistent else "violated"

    def to_dict(self, g: Graph | None = None) -> dict:
        name = g.label if g is not None else str
        torsos = []
        for f in self.torso_findings:
            torsos.append({
                "node": f.node,
                "bag": [name(v) for v in f.bag],
                "molecule": f.witness.spec.to_dict() if f.witness else None,
                "base": [name(v) for v in sorted(f.witness.base)] if f.witness else None,
                "interface": [name(v) for v in f.interface],
                "interfaceBase": [name(v) for v in f.interface_base] if f.interface_base else None,
                "eachHingeInBase": f.hingewise,
            })
        return {"schema": "entangle.ent3/1", "verdict": self.verdict, "reasons": self.reasons,
                "torsos": torsos, "diameter": self.diameter, "spread": self.spread,
                "diameterBound": self.diameter_bound}


def check_ent3(g: Graph, t: TutteTree | None = None) -> Ent3Report:
    """Test the necessary structure of a 2-connected graph of entanglement 3.

    Every 3-connected torso must be a 3-molecule whose interface lies inside
    one of its 3-vertex bases, and the tree diameter must be at most 2^7
    times the spread.
    """
    hinge_list = hinges(g)
    if t is None:
        t = build_tutte_tree(g, hinge_list)
    findings = []
    reasons = []
    for i in range(t.size):
        if t.kinds[i] != THREE_CONNECTED:
            continue
        order = t.order(i)
        local = {v: j for j, v in enumerate(order)}
        tg = torso_graph(t, i)
        found = [b for b in bases(tg) if len(b) == 3]
        iface = interface(t, i)
        iface_local = frozenset(local[v] for v in iface)
        witness = None
        holder = None
        if found:
            wl = witness_for(tg, found[0])
            witness = MoleculeWitness(frozenset(order[j] for j in wl.base),
                                      {order[j]: w for j, w in wl.iso_map.items()}, wl.spec)
            for b in found:
                if iface_local <= b:
                    holder = tuple(sorted(order[j] for j in b))
                    break
        else:
            reasons.append(f"torso {i} on {[g.label(v) for v in order]} is not a 3-molecule")
        shared = [frozenset(local[v] for v in t.bags[i] & t.bags[j]) for j in t.neighbours()[i]]
        hingewise = bool(found) and all(any(s <= b for b in found) for s in shared)
        if found and holder is None:
            reasons.append(f"torso {i}: interface {[g.label(v) for v in sorted(iface)]} "
                           f"lies in no 3-vertex base")
        findings.append(TorsoFinding(i, tuple(order), witness, tuple(sorted(iface)), holder,
                                     hingewise))
    sp = spread(g, hinge_list).spread
    diam = tree_diameter(t)
    report = Ent3Report(findings, diam, sp, reasons)
    if not report.diameter_ok:
        reasons.append(f"tree diameter {diam} exceeds {report.diameter_bound}")
    return report

