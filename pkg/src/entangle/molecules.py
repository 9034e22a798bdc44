"""k-molecules: a base of k vertices plus h apexes joined to the whole base.

The apexes form an independent set, and h must be at least k - k' where k'
is the connectivity of the base graph (cliques of size >= 3 count as k - 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .connectivity import connectivity
from .errors import InputError, InvariantError
from .graph import Graph, induced_subgraph

NON_AMBIGUOUS = "nonAmbiguous"
AMBIGUOUS_CASES = {(3, 1): "ambiguousI", (2, 2): "ambiguousII", (0, 3): "ambiguousIII"}


def base_connectivity(k: int, base_edges) -> int | None:
    """Connectivity of the base graph, None when infinite."""
    return connectivity(Graph(k, frozenset(base_edges)), apply_convention=True).value


@dataclass(frozen=True)
class MoleculeSpec:
    k: int
    base_edges: frozenset[tuple[int, int]]
    h: int

    def __post_init__(self):
        if self.k < 1:
            raise InputError("a molecule base needs at least one vertex")
        if self.h < 1:
            raise InputError("a molecule needs at least one apex (h >= 1)")
        norm = set()
        for u, v in self.base_edges:
            if u == v or not (0 <= u < self.k and 0 <= v < self.k):
                raise InputError(f"base edge {u}-{v} is not a pair of base vertices 0..{self.k - 1}")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "base_edges", frozenset(norm))
        kp = base_connectivity(self.k, self.base_edges)
        if kp is not None and self.h < self.k - kp:
            raise InputError(f"h >= k - k' fails: {self.h} < {self.k} - {kp}")

    @property
    def base_connectivity(self) -> int | None:
        return base_connectivity(self.k, self.base_edges)

    @property
    def b(self) -> int:
        return len(self.base_edges)

    def to_dict(self) -> dict:
        return {"k": self.k, "baseEdges": sorted(list(e) for e in self.base_edges), "h": self.h}


def is_legal(k: int, base_edges, h: int) -> bool:
    try:
        MoleculeSpec(k, frozenset(base_edges), h)
    except InputError:
        return False
    return True


def make_molecule(spec: MoleculeSpec) -> Graph:
    """Base vertices get ids 0..k-1 (b1..bk), apexes k..k+h-1 (v1..vh)."""
    k, h = spec.k, spec.h
    edges = set(spec.base_edges)
    edges |= {(j, k + i) for i in range(h) for j in range(k)}
    labels = {j: f"b{j + 1}" for j in range(k)}
    labels.update({k + i: f"v{i + 1}" for i in range(h)})
    return Graph(k + h, frozenset(edges), labels)


_K3_EDGE_ORDER = ((0, 1), (1, 2), (0, 2))


def spec3(b: int, h: int) -> MoleculeSpec:
    """The 3-molecule with b base edges; for k = 3 the count fixes the base."""
    if not 0 <= b <= 3:
        raise InputError("a 3-vertex base has 0..3 edges")
    return MoleculeSpec(3, frozenset(_K3_EDGE_ORDER[:b]), h)


@dataclass(frozen=True)
class MoleculeWitness:
    base: frozenset[int]
    iso_map: dict[int, int]          # host vertex -> molecule vertex
    spec: MoleculeSpec

    def to_dict(self, g: Graph | None = None) -> dict:
        name = g.label if g is not None else str
        return {"base": [name(v) for v in sorted(self.base)],
                "isoMap": {name(v): w for v, w in sorted(self.iso_map.items())},
                "spec": self.spec.to_dict()}


def bases(g: Graph) -> list[frozenset[int]]:
    """Every vertex set B making g a |B|-molecule with base B.

    Outside a base every vertex is adjacent to exactly the base, so each
    candidate is the neighbourhood of some vertex.
    """
    found = set()
    for u in range(g.n):
        B = g.adj[u]
        if not B or B in found:
            continue
        outside = [w for w in range(g.n) if w not in B]
        if any(g.adj[w] != B for w in outside):
            continue
        sub, _ = induced_subgraph(g, B)
        kp = connectivity(sub, apply_convention=True).value
        if kp is not None and len(outside) < len(B) - kp:
            continue
        found.add(B)
    return sorted(found, key=lambda b: (len(b), sorted(b)))


def witness_for(g: Graph, B: frozenset[int]) -> MoleculeWitness:
    order = sorted(B) + sorted(set(range(g.n)) - B)
    iso = {v: i for i, v in enumerate(order)}
    k = len(B)
    base_edges = frozenset((iso[u], iso[v]) if iso[u] < iso[v] else (iso[v], iso[u])
                           for u, v in g.edges if u in B and v in B)
    spec = MoleculeSpec(k, base_edges, g.n - k)
    if g.relabel(iso) != make_molecule(spec):
        raise InvariantError("base does not map the graph onto its molecule")
    return MoleculeWitness(frozenset(B), iso, spec)


def recognize_molecule(g: Graph) -> MoleculeWitness | None:
    """Witness for the first base in canonical order, or None."""
    found = bases(g)
    return witness_for(g, found[0]) if found else None


def classify_ambiguity_3(g: Graph) -> str:
    """nonAmbiguous, or the ambiguity case I/II/III of a 3-molecule."""
    found = [b for b in bases(g) if len(b) == 3]
    if not found:
        raise InputError("graph is not a 3-molecule")
    w = witness_for(g, found[0])
    case = AMBIGUOUS_CASES.get((w.spec.b, w.spec.h))
    if len(found) >= 2:
        if case is None:
            raise InvariantError(f"ambiguous 3-molecule with |B|={w.spec.b}, h={w.spec.h}")
        return case
    if case is not None:
        raise InvariantError(f"case ({w.spec.b},{w.spec.h}) should be ambiguous")
    return NON_AMBIGUOUS


def legal_specs(k: int, max_h: int):
    """All legal specs for base size k (every base edge set) with h <= max_h."""
    pairs = list(combinations(range(k), 2))
    for m in range(len(pairs) + 1):
        for edges in combinations(pairs, m):
            for h in range(1, max_h + 1):
                if is_legal(k, edges, h):
                    yield MoleculeSpec(k, frozenset(edges), h)
