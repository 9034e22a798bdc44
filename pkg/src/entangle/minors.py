"""Budgeted isomorphism and minor containment for small graphs.

Both searches are exhaustive; they raise BudgetError instead of guessing
when an input exceeds the documented size limits.
"""

from __future__ import annotations

from .errors import BudgetError
from .graph import Graph, components

ISO_MAX_VERTICES = 12
MINOR_MAX_PATTERN = 8
MINOR_MAX_HOST = 16
MINOR_NODE_CAP = 2_000_000


def _refined_colors(g: Graph) -> list[tuple]:
    """Degree refined once by the multiset of neighbour degrees."""
    deg = [g.degree(v) for v in range(g.n)]
    return [(deg[v], tuple(sorted(deg[w] for w in g.adj[v]))) for v in range(g.n)]


def find_isomorphism(g: Graph, h: Graph, max_vertices: int = ISO_MAX_VERTICES) -> dict[int, int] | None:
    """An edge-preserving bijection g -> h, or None."""
    if max(g.n, h.n) > max_vertices:
        raise BudgetError(f"isomorphism check limited to {max_vertices} vertices",
                          estimate=max(g.n, h.n))
    if g.n != h.n or g.m != h.m:
        return None
    cg, ch = _refined_colors(g), _refined_colors(h)
    if sorted(cg) != sorted(ch):
        return None
    # most constrained first: rare colours, then high degree
    freq: dict[tuple, int] = {}
    for c in cg:
        freq[c] = freq.get(c, 0) + 1
    order = sorted(range(g.n), key=lambda v: (freq[cg[v]], -g.degree(v), v))
    # prefer vertices adjacent to already ordered ones so adjacency prunes early
    seq: list[int] = []
    left = set(order)
    while left:
        placed = set(seq)
        pick = next((v for v in order if v in left and g.adj[v] & placed), None)
        if pick is None:
            pick = next(v for v in order if v in left)
        seq.append(pick)
        left.discard(pick)

    mapping: dict[int, int] = {}
    used: set[int] = set()

    def extend(i: int) -> bool:
        if i == len(seq):
            return True
        v = seq[i]
        for w in range(h.n):
            if w in used or ch[w] != cg[v]:
                continue
            if all((mapping[u] in h.adj[w]) == (u in g.adj[v]) for u in mapping):
                mapping[v] = w
                used.add(w)
                if extend(i + 1):
                    return True
                del mapping[v]
                used.discard(w)
        return False

    return dict(mapping) if extend(0) else None


def is_isomorphic_small(g: Graph, h: Graph, max_vertices: int = ISO_MAX_VERTICES) -> bool:
    return find_isomorphism(g, h, max_vertices) is not None


def _spanning_embedding(pattern: Graph, q_adj: list[set[int]]) -> dict[int, int] | None:
    """Bijection pattern -> quotient with every pattern edge present."""
    p = pattern.n
    order = sorted(range(p), key=lambda a: -pattern.degree(a))
    qdeg = [len(s) for s in q_adj]
    phi: dict[int, int] = {}
    used: set[int] = set()

    def extend(i: int) -> bool:
        if i == p:
            return True
        a = order[i]
        for x in range(p):
            if x in used or qdeg[x] < pattern.degree(a):
                continue
            if all(phi[b] in q_adj[x] for b in pattern.adj[a] if b in phi):
                phi[a] = x
                used.add(x)
                if extend(i + 1):
                    return True
                del phi[a]
                used.discard(x)
        return False

    return dict(phi) if extend(0) else None


def find_minor_model(g: Graph, pattern: Graph, max_pattern: int = MINOR_MAX_PATTERN,
                     max_host: int = MINOR_MAX_HOST,
                     node_cap: int = MINOR_NODE_CAP) -> list[set[int]] | None:
    """Branch sets exhibiting ``pattern`` as a minor of ``g``, or None.

    A model can always be grown until its branch sets cover every component
    they touch, so the search enumerates partitions of whole components into
    connected blocks (components may also be dropped) and then looks for the
    pattern as a spanning subgraph of the block quotient.  ``result[a]`` is
    the branch set of pattern vertex ``a``.
    """
    if pattern.n > max_pattern:
        raise BudgetError(f"minor pattern limited to {max_pattern} vertices", estimate=pattern.n)
    if g.n > max_host:
        raise BudgetError(f"minor host limited to {max_host} vertices", estimate=g.n)
    p = pattern.n
    if p == 0:
        return []
    if p > g.n or pattern.m > g.m:
        return None

    comps = components(g)
    order: list[int] = []
    comp_start: set[int] = set()
    for comp in comps:
        first = min(comp)
        seq = [first]
        seen = {first}
        for u in seq:
            for w in sorted(g.adj[u]):
                if w not in seen:
                    seen.add(w)
                    seq.append(w)
        comp_start.add(len(order))
        order.extend(seq)
    n = g.n
    block = [-1] * n          # -1 unassigned, -2 dropped, else block id
    members: list[list[int]] = []
    nodes = 0

    comp_end = {}
    starts = sorted(comp_start)
    for idx, s in enumerate(starts):
        comp_end[s] = starts[idx + 1] if idx + 1 < len(starts) else n
    comp_of_pos = {}
    for s in starts:
        for j in range(s, comp_end[s]):
            comp_of_pos[j] = s
    comp_set = {s: set(order[s:comp_end[s]]) for s in starts}

    def reachable_ok(b: int) -> bool:
        verts = members[b]
        start = verts[0]
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if w not in seen and (block[w] == b or block[w] == -1):
                    seen.add(w)
                    stack.append(w)
        return all(v in seen for v in verts)

    def free_after(i: int) -> int:
        return sum(1 for j in range(i, n) if block[order[j]] == -1)

    def quotient() -> list[set[int]]:
        q = [set() for _ in range(len(members))]
        for u, v in g.edges:
            a, b = block[u], block[v]
            if a >= 0 and b >= 0 and a != b:
                q[a].add(b)
                q[b].add(a)
        return q

    result: list[list[int]] = []

    def search(i: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > node_cap:
            raise BudgetError(f"minor search exceeded {node_cap} nodes", estimate=nodes)
        if i == n:
            if len(members) != p:
                return False
            phi = _spanning_embedding(pattern, quotient())
            if phi is None:
                return False
            result.extend([sorted(members[phi[a]]) for a in range(p)])
            return True
        v = order[i]
        if i in comp_start:
            # whole component dropped
            end = comp_end[i]
            span = [order[j] for j in range(i, end)]
            for w in span:
                block[w] = -2
            if search(end):
                return True
            for w in span:
                block[w] = -1
        if block[v] == -2:
            return search(i + 1)
        cstart = comp_of_pos[i]
        # blocks still needed must fit in the unassigned vertices, this one included
        needed = p - len(members)
        can_new = needed > 0
        must_new = needed >= free_after(i) and needed > 0
        candidates = [] if must_new else [b for b in range(len(members))
                                          if members[b][0] in comp_set[cstart]]
        if can_new:
            candidates.append(len(members))
        for b in candidates:
            if b == len(members):
                members.append([v])
            else:
                members[b].append(v)
            block[v] = b
            live = [c for c in range(len(members)) if members[c][0] in comp_set[cstart]]
            if all(reachable_ok(c) for c in live) and search(i + 1):
                return True
            block[v] = -1
            if len(members[b]) == 1:
                members.pop()
            else:
                members[b].pop()
        return False

    if search(0):
        return [set(b) for b in result]
    return None


def has_minor_small(g: Graph, pattern: Graph, max_pattern: int = MINOR_MAX_PATTERN,
                    max_host: int = MINOR_MAX_HOST, node_cap: int = MINOR_NODE_CAP) -> bool:
    return find_minor_model(g, pattern, max_pattern, max_host, node_cap) is not None
