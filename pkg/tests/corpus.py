"""Graph corpora shared by the slower suites.

The 8-vertex 2-connected graphs take about a minute to enumerate, so the
list is cached as graph6 lines under tests/data.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache
from pathlib import Path

import networkx as nx

from entangle.graph import Graph

from oracles import from_nx

DATA = Path(__file__).parent / "data"
BICONNECTED_8 = DATA / "biconnected8.g6"
BICONNECTED_8_COUNT = 7123          # known count of 2-connected graphs on 8 vertices


def _atlas(n_min: int, n_max: int):
    return [h for h in nx.graph_atlas_g() if n_min <= h.number_of_nodes() <= n_max]


def connected_upto(n_max: int) -> list[Graph]:
    """Every connected graph on 1..n_max (<= 7) vertices up to isomorphism."""
    return [from_nx(h) for h in _atlas(1, n_max) if nx.is_connected(h)]


def random_connected(count: int, n_lo: int, n_hi: int, seed: int) -> list[Graph]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(n_lo, n_hi)
        h = nx.gnp_random_graph(n, rng.uniform(0.25, 0.7), seed=rng.randrange(1 << 30))
        if nx.is_connected(h):
            out.append(from_nx(h))
    return out


def _extend_to_8() -> list[nx.Graph]:
    # a 2-connected graph minus any vertex stays connected
    buckets: dict[str, list[nx.Graph]] = {}
    for g in _atlas(7, 7):
        if not nx.is_connected(g):
            continue
        for r in range(2, 8):
            for nbrs in itertools.combinations(range(7), r):
                h = g.copy()
                h.add_edges_from((7, s) for s in nbrs)
                if not nx.is_biconnected(h):
                    continue
                key = nx.weisfeiler_lehman_graph_hash(h, iterations=3)
                same = buckets.setdefault(key, [])
                if not any(nx.is_isomorphic(h, o) for o in same):
                    same.append(h)
    return [h for hs in buckets.values() for h in hs]


@lru_cache(maxsize=None)
def biconnected_upto_8() -> tuple[Graph, ...]:
    small = [from_nx(h) for h in _atlas(3, 7) if nx.is_biconnected(h)]
    if BICONNECTED_8.exists():
        eight = [nx.from_graph6_bytes(line) for line in BICONNECTED_8.read_bytes().split()]
    else:
        eight = _extend_to_8()
        DATA.mkdir(exist_ok=True)
        BICONNECTED_8.write_bytes(b"\n".join(nx.to_graph6_bytes(h, header=False).strip()
                                             for h in eight) + b"\n")
    return tuple(small + [from_nx(h) for h in eight])
