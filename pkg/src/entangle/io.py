"""Edge-list text, structured (JSON) and DOT formats.

Edge-list text::

    # comment
    # labels: a b c        (optional, one name per vertex id)
    3
    0 1
    1 2

Multigraph edge lists may repeat pairs and mark a line ``u v virtual``.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

from .errors import InputError, ParseError
from .graph import Digraph, Graph, MultiEdge, MultiGraph

_LABEL_DIRECTIVE = "labels:"


def _lines(text: str):
    """Yield (lineno, tokens, label-directive-or-None) for meaningful lines."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped.startswith("#"):
            body = stripped[1:].strip()
            if body.startswith(_LABEL_DIRECTIVE):
                yield lineno, None, body[len(_LABEL_DIRECTIVE):].split()
            continue
        stripped = stripped.split("#", 1)[0].strip()
        if stripped:
            yield lineno, stripped.split(), None


def _parse_edge_lines(text: str, allow_multi: bool, allow_loops: bool = False):
    n = None
    labels = None
    edges = []
    for lineno, toks, lab in _lines(text):
        if lab is not None:
            labels = lab
            continue
        if n is None:
            if len(toks) != 1:
                raise ParseError("first line must hold the vertex count", lineno)
            try:
                n = int(toks[0])
            except ValueError:
                raise ParseError(f"vertex count {toks[0]!r} is not an integer", lineno) from None
            if n < 0:
                raise ParseError("vertex count must be non-negative", lineno)
            continue
        virtual = False
        if allow_multi and len(toks) == 3 and toks[2] == "virtual":
            virtual = True
            toks = toks[:2]
        if len(toks) != 2:
            raise ParseError(f"expected 'u v', got {' '.join(toks)!r}", lineno)
        try:
            u, v = int(toks[0]), int(toks[1])
        except ValueError:
            raise ParseError(f"non-integer vertex in {' '.join(toks)!r}", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"edge {u}-{v} outside 0..{n - 1}", lineno)
        if u == v and not allow_loops:
            raise ParseError(f"self-loop on {u}", lineno)
        edges.append((lineno, u, v, virtual))
    if n is None:
        raise ParseError("empty graph text: missing vertex count")
    if labels is not None and len(labels) != n:
        raise ParseError(f"labels directive names {len(labels)} vertices, graph has {n}")
    label_map = dict(enumerate(labels)) if labels else None
    return n, edges, label_map


def parse_edgelist(text: str) -> Graph:
    n, edges, labels = _parse_edge_lines(text, allow_multi=False)
    seen = set()
    for lineno, u, v, _ in edges:
        e = (min(u, v), max(u, v))
        if e in seen:
            raise ParseError(f"duplicate edge {u}-{v}", lineno)
        seen.add(e)
    return Graph(n, frozenset(seen), labels)


def parse_digraph(text: str) -> Digraph:
    """Edge-list text read as arcs ``u -> v``; self-loops allowed."""
    n, arcs, labels = _parse_edge_lines(text, allow_multi=False, allow_loops=True)
    seen = set()
    for lineno, u, v, _ in arcs:
        if (u, v) in seen:
            raise ParseError(f"duplicate arc {u}->{v}", lineno)
        seen.add((u, v))
    return Digraph(n, frozenset(seen), labels)


def parse_multigraph(text: str) -> MultiGraph:
    n, edges, labels = _parse_edge_lines(text, allow_multi=True)
    return MultiGraph(n, tuple(MultiEdge(u, v, virt) for _, u, v, virt in edges), labels)


def emit_edgelist(g: Graph | MultiGraph) -> str:
    out = []
    if g.labels:
        out.append("# labels: " + " ".join(g.labels.get(i, str(i)) for i in range(g.n)))
    out.append(str(g.n))
    if isinstance(g, MultiGraph):
        for e in g.edges:
            out.append(f"{e.u} {e.v}" + (" virtual" if e.virtual else ""))
    else:
        out.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(out) + "\n"


def to_struct(g: Graph) -> dict:
    obj = {"n": g.n, "edges": [list(e) for e in g.sorted_edges()]}
    if g.labels:
        obj["labels"] = {str(i): lab for i, lab in sorted(g.labels.items())}
    return obj


def from_struct(obj: dict) -> Graph:
    try:
        n = int(obj["n"])
        pairs = [tuple(int(x) for x in e) for e in obj["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"structured graph needs integer fields n and edges: {exc}") from None
    if any(len(p) != 2 for p in pairs):
        raise ParseError("every edge must be a pair")
    labels = obj.get("labels")
    if labels is not None:
        labels = {int(i): str(lab) for i, lab in labels.items()}
    return Graph.from_edges(n, pairs, labels)


def parse(text: str) -> Graph:
    """Parse edge-list or structured text, whichever ``text`` holds."""
    if text.lstrip().startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid structured graph: {exc.msg}", exc.lineno) from None
        return from_struct(obj)
    return parse_edgelist(text)


def emit_json(g: Graph) -> str:
    return json.dumps(to_struct(g), indent=2) + "\n"


def _dot_id(name: str) -> str:
    return '"' + name.replace('"', r"\"") + '"'


def emit_dot(g: Graph | MultiGraph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in range(g.n):
        lab = g.labels.get(v, str(v)) if g.labels else str(v)
        lines.append(f"  {v} [label={_dot_id(lab)}];")
    if isinstance(g, MultiGraph):
        for e in g.edges:
            style = " [style=dashed]" if e.virtual else ""
            lines.append(f"  {e.u} -- {e.v}{style};")
    else:
        for u, v in g.sorted_edges():
            lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def read_text(source: str) -> str:
    """Read a path, or standard input for ``-``."""
    if source == "-":
        return sys.stdin.read()
    try:
        return Path(source).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc.strerror}") from None


def read_graph(source: str) -> Graph:
    return parse(read_text(source))


def read_digraph(source: str) -> Digraph:
    text = read_text(source)
    if text.lstrip().startswith("{"):
        raise ParseError("digraphs are read from edge-list text only")
    return parse_digraph(text)
