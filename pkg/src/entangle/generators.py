"""Graph families: dominoes, cliques, bonds, molecules, 2-sum chains and
random 2-connected graphs.  Random generators take an explicit seed."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .analysis import domino
from .errors import InputError
from .graph import Graph, MultiEdge, MultiGraph, complete_graph, cycle_graph
from .molecules import MoleculeSpec, legal_specs, make_molecule, spec3
from .tutte import two_sum

__all__ = ["domino", "cycle", "clique", "bond", "molecule", "ChainPiece",
           "twosum_chain", "random_chain", "random_2conn", "subdivide"]


def cycle(n: int) -> Graph:
    if n < 3:
        raise InputError("a cycle needs at least 3 vertices")
    return cycle_graph(n)


def clique(n: int) -> Graph:
    if n < 1:
        raise InputError("a clique needs at least one vertex")
    return complete_graph(n)


def bond(k: int) -> MultiGraph:
    """Two vertices joined by k parallel edges."""
    if k < 1:
        raise InputError("a bond needs at least one edge")
    return MultiGraph(2, tuple(MultiEdge(0, 1) for _ in range(k)))


def molecule(k: int, base_edges=(), h: int = 1) -> Graph:
    return make_molecule(MoleculeSpec(k, frozenset(base_edges), h))


@dataclass(frozen=True)
class ChainPiece:
    """One link of a chain.

    ``graph`` is glued along its edge ``attach`` onto edge ``onto`` of the
    previous link (given in that link's own ids).  With ``keep_edge`` the
    glued edge survives in the result, so the separating pair gets a bond.
    """
    graph: Graph
    attach: tuple[int, int] = (0, 1)
    onto: tuple[int, int] = (0, 1)
    keep_edge: bool = False


def twosum_chain(first: Graph, pieces: list[ChainPiece]) -> Graph:
    """2-sum each piece onto the one before it, left to right."""
    g = first
    local = list(range(first.n))          # previous link id -> id in g
    for p in pieces:
        a, b = local[p.onto[0]], local[p.onto[1]]
        if not g.has_edge(a, b):
            raise InputError(f"edge {p.onto} of the previous link is gone")
        x, y = p.attach
        if not p.graph.has_edge(x, y):
            raise InputError(f"{p.attach} is not an edge of the piece")
        n_before = g.n
        g = two_sum(g, (a, b), p.graph, (x, y))
        rest = iter(range(n_before, g.n))
        local = [a if v == x else b if v == y else next(rest) for v in range(p.graph.n)]
        if p.keep_edge:
            g = Graph(g.n, g.edges | {(min(a, b), max(a, b))}, g.labels)
    return g


def _random_piece(rng: random.Random, max_h: int) -> Graph:
    if rng.random() < 0.3:
        return cycle_graph(rng.randint(3, 5))
    while True:
        try:
            return make_molecule(spec3(rng.randint(0, 3), rng.randint(1, max_h)))
        except InputError:
            continue


def random_chain(seed: int, links: int = 3, max_h: int = 3,
                 keep_prob: float = 0.3) -> Graph:
    """A path of cycles and 3-molecules joined by 2-sums at random edges."""
    if links < 1:
        raise InputError("a chain needs at least one link")
    rng = random.Random(seed)
    links_g = [_random_piece(rng, max_h) for _ in range(links)]
    pieces = []
    used = None                           # edge of prev consumed by the last gluing
    for prev, nxt in zip(links_g, links_g[1:]):
        free = [e for e in sorted(prev.edges) if e != used]
        attach = rng.choice(sorted(nxt.edges))
        pieces.append(ChainPiece(nxt, attach, rng.choice(free), rng.random() < keep_prob))
        used = attach
    first = links_g[0]
    return twosum_chain(first, pieces)


def random_2conn(n: int, seed: int, chords: int = 0) -> Graph:
    """Random 2-connected graph grown from a cycle by ears, plus chords."""
    if n < 3:
        raise InputError("2-connected generation needs n >= 3")
    rng = random.Random(seed)
    start = rng.randint(3, n)
    edges = {(i, i + 1) for i in range(start - 1)} | {(0, start - 1)}
    used = start
    while used < n:
        length = rng.randint(1, n - used)
        a, b = rng.sample(range(used), 2)
        path = [a] + list(range(used, used + length)) + [b]
        edges |= {(min(u, v), max(u, v)) for u, v in zip(path, path[1:])}
        used += length
    missing = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in edges]
    edges |= set(rng.sample(missing, min(chords, len(missing))))
    return Graph(n, frozenset(edges))


def subdivide(g: Graph, u: int, v: int) -> Graph:
    """Replace edge uv by a path through a new vertex (a triangle 2-summed on uv)."""
    return two_sum(g, (u, v), cycle_graph(3), (0, 1))


def legal_3_molecules(max_h: int):
    return list(legal_specs(3, max_h))
