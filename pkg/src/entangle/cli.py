"""``entangle`` command line.

Graphs are read from a path or ``-`` (stdin) in edge-list or JSON form.
Exit status: 0 ok, 1 verdict violated under ``--strict``, 2 bad input,
3 budget exceeded, 4 internal invariant failure.  Errors go to stderr as
one JSON object.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import analysis, connectivity, cyclicity, game, generators, io, molecules, tutte
from .errors import BudgetError, InputError, InvariantError, ParseError

EXIT_OK, EXIT_VIOLATED, EXIT_INPUT, EXIT_BUDGET, EXIT_INTERNAL = 0, 1, 2, 3, 4


def _write(dest: str, text: str) -> None:
    if dest == "-":
        sys.stdout.write(text)
    else:
        Path(dest).write_text(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _kv_args(items: list[str]) -> dict[str, str]:
    out = {}
    for item in items:
        key, sep, val = item.partition("=")
        if not sep:
            raise InputError(f"expected key=value, got {item!r}")
        out[key] = val
    return out


def _int(s: str, name: str) -> int:
    try:
        return int(s)
    except ValueError:
        raise InputError(f"{name} must be an integer, got {s!r}") from None


def _molecule_spec(items: list[str]) -> molecules.MoleculeSpec:
    """``k=3 b=2 h=1`` or ``k=4 edges=0-1,2-3 h=2``."""
    kv = _kv_args(items)
    unknown = set(kv) - {"k", "b", "h", "edges"}
    if unknown:
        raise InputError(f"unknown molecule parameter(s): {', '.join(sorted(unknown))}")
    k = _int(kv.get("k", "3"), "k")
    h = _int(kv.get("h", "1"), "h")
    if "edges" in kv:
        edges = []
        for part in filter(None, kv["edges"].split(",")):
            u, _, v = part.partition("-")
            edges.append((_int(u, "edge end"), _int(v, "edge end")))
        return molecules.MoleculeSpec(k, frozenset(edges), h)
    b = _int(kv.get("b", "0"), "b")
    if k != 3 and b:
        raise InputError("b= names a base only for k=3; use edges= otherwise")
    return molecules.spec3(b, h) if k == 3 else molecules.MoleculeSpec(k, frozenset(), h)


def _name(g, v: int) -> str:
    return g.labels.get(v, str(v)) if g.labels else str(v)


# -- commands ---------------------------------------------------------------

def cmd_entanglement(args) -> int:
    g = io.read_digraph(args.graph) if args.digraph else io.read_graph(args.graph)
    res = game.entanglement(g, rules=args.rules, max_k=args.max_k)
    if args.cert:
        certs = {str(k): s.to_certificate() for k, s in sorted(res.certificates.items())}
        _write(args.cert, _dump({"schema": "entangle.certificates/1", "value": res.value,
                                 "certificates": certs}))
    if args.json:
        _write(args.json, _dump({"schema": "entangle.entanglement/1", "value": res.value,
                                 "rules": res.rules,
                                 "winners": {str(k): w for k, w in res.per_budget_winners.items()}}))
    if args.json != "-" and args.cert != "-":
        print(f"entanglement: {res.value}")
    return EXIT_OK


def cmd_cyclicity(args) -> int:
    if args.digraph:
        g = io.read_digraph(args.graph)
        sol = cyclicity.cyclicity_digraph(g, cap=max(args.witnesses, 1))
    else:
        g = io.read_graph(args.graph)
        sol = cyclicity.cyclicity_undirected(g, cap=max(args.witnesses, 1))
    print(f"cyclicity: {sol.size}")
    for w in sol.witnesses[: args.witnesses]:
        print("witness:", " ".join(_name(g, v) for v in sorted(w)))
    if sol.capped or len(sol.witnesses) > args.witnesses:
        print("witnesses: truncated")
    return EXIT_OK


def cmd_connectivity(args) -> int:
    g = io.read_graph(args.graph)
    val = connectivity.connectivity(g, apply_convention=not args.raw)
    print(f"connectivity: {val}")
    if val.convention_applied:
        print("note: clique convention applied")
    return EXIT_OK


def cmd_blocks(args) -> int:
    g = io.read_graph(args.graph)
    t = connectivity.block_cut_tree(g)
    if args.dot:
        _write(args.dot, connectivity.emit_block_cut_dot(g, t))
        if args.dot == "-":
            return EXIT_OK
    print("articulation points:", " ".join(g.label(v) for v in sorted(t.articulation_points)) or "-")
    for i, b in enumerate(t.blocks):
        print(f"block {i}:", " ".join(g.label(v) for v in sorted(b)))
    return EXIT_OK


def cmd_decompose(args) -> int:
    g = io.read_graph(args.graph)
    hl = tutte.hinges(g)
    t = tutte.build_tutte_tree(g, hl)
    if args.dot:
        _write(args.dot, t.to_dot())
    if args.json:
        obj = {"schema": "entangle.tutte/1",
               "hinges": [[g.label(v) for v in h.pair] for h in hl]}
        obj.update(t.to_dict())
        _write(args.json, _dump(obj))
    if "-" in (args.dot, args.json):
        return EXIT_OK
    print("hinges:", ", ".join("{" + ",".join(g.label(v) for v in h.pair) + "}" for h in hl) or "-")
    for i in range(t.size):
        names = " ".join(g.label(v) for v in t.order(i))
        print(f"torso {i} [{t.kind(i)}]: {names}")
    for a, b in t.tree_edges:
        lab = ",".join(g.label(v) for v in sorted(t.bags[a] & t.bags[b]))
        print(f"edge {a}-{b}: {{{lab}}}")
    return EXIT_OK


def cmd_molecule(args) -> int:
    if args.action == "make":
        sys.stdout.write(io.emit_edgelist(molecules.make_molecule(_molecule_spec(args.params))))
        return EXIT_OK
    if len(args.params) != 1:
        raise InputError(f"molecule {args.action} takes one graph argument")
    g = io.read_graph(args.params[0])
    if args.action == "recognize":
        found = molecules.bases(g)
        if not found:
            print("molecule: no")
            return EXIT_OK
        w = molecules.witness_for(g, found[0])
        spec = w.spec
        print(f"molecule: k={spec.k} b={spec.b} h={spec.h}")
        for b in found:
            print("base:", " ".join(g.label(v) for v in sorted(b)))
        return EXIT_OK
    print(molecules.classify_ambiguity_3(g))
    return EXIT_OK


def cmd_spread(args) -> int:
    g = io.read_graph(args.graph)
    rep = analysis.spread(g)
    print(f"spread: {rep.spread}")
    for v, c in sorted(rep.per_vertex.items()):
        if c:
            print(f"{g.label(v)}: {c}")
    return EXIT_OK


def cmd_check_ent3(args) -> int:
    g = io.read_graph(args.graph)
    rep = analysis.check_ent3(g)
    if args.json:
        _write(args.json, _dump(rep.to_dict(g)))
    if args.json != "-":
        print(f"verdict: {rep.verdict}")
        for r in rep.reasons:
            print("reason:", r)
        print(f"diameter: {rep.diameter} (bound {rep.diameter_bound}, spread {rep.spread})")
    return EXIT_VIOLATED if args.strict and not rep.consistent else EXIT_OK


def cmd_generate(args) -> int:
    fam, rest = args.family, args.params
    kv = _kv_args([p for p in rest if "=" in p])
    pos = [p for p in rest if "=" not in p and p != "centered"]
    centered = "centered" in rest

    def num(i: int, name: str, default: int | None = None) -> int:
        if name in kv:
            return _int(kv[name], name)
        if i < len(pos):
            return _int(pos[i], name)
        if default is None:
            raise InputError(f"generate {fam} needs {name}")
        return default

    if fam == "molecule":
        g = molecules.make_molecule(_molecule_spec(rest))
    elif fam == "domino":
        g = generators.domino(num(0, "n"), centered=centered)
    elif fam == "cycle":
        g = generators.cycle(num(0, "n"))
    elif fam == "clique":
        g = generators.clique(num(0, "n"))
    elif fam == "bond":
        g = generators.bond(num(0, "k"))
    elif fam == "twosum-chain":
        g = generators.random_chain(num(0, "seed", 0), links=num(1, "links", 3),
                                    max_h=num(2, "h", 3))
    elif fam == "random-2conn":
        g = generators.random_2conn(num(0, "n"), seed=num(1, "seed", 0),
                                    chords=num(2, "chords", 0))
    else:  # argparse restricts choices
        raise InputError(f"unknown family {fam}")
    sys.stdout.write(io.emit_edgelist(g))
    return EXIT_OK


def cmd_convert(args) -> int:
    g = io.read_graph(args.graph)
    text = {"edges": io.emit_edgelist, "json": io.emit_json, "dot": io.emit_dot}[args.to](g)
    _write(args.output, text)
    return EXIT_OK


FAMILIES = ("domino", "cycle", "clique", "bond", "molecule", "twosum-chain", "random-2conn")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="entangle", description="Exact entanglement toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("entanglement", help="solve the cops and thief game")
    s.add_argument("graph")
    s.add_argument("--rules", default="std", choices=["std", "gen", "standard", "generalized"])
    s.add_argument("--max-k", type=int)
    s.add_argument("--cert", metavar="OUT", help="write strategy certificates")
    s.add_argument("--json", metavar="OUT")
    s.add_argument("--digraph", action="store_true", help="read edges as arcs u->v")
    s.set_defaults(func=cmd_entanglement)

    s = sub.add_parser("cyclicity", help="minimum feedback vertex set")
    s.add_argument("graph")
    s.add_argument("--digraph", action="store_true")
    s.add_argument("--witnesses", type=int, default=5, metavar="N")
    s.set_defaults(func=cmd_cyclicity)

    s = sub.add_parser("connectivity", help="vertex connectivity")
    s.add_argument("graph")
    s.add_argument("--raw", action="store_true", help="cliques stay infinitely connected")
    s.set_defaults(func=cmd_connectivity)

    s = sub.add_parser("blocks", help="biconnected components")
    s.add_argument("graph")
    s.add_argument("--dot", metavar="OUT")
    s.set_defaults(func=cmd_blocks)

    s = sub.add_parser("decompose", help="hinges and the Tutte tree")
    s.add_argument("graph")
    s.add_argument("--dot", metavar="OUT")
    s.add_argument("--json", metavar="OUT")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("molecule", help="make, recognize or classify molecules")
    s.add_argument("action", choices=["make", "recognize", "classify"])
    s.add_argument("params", nargs="*")
    s.set_defaults(func=cmd_molecule)

    s = sub.add_parser("spread", help="hinges per vertex")
    s.add_argument("graph")
    s.set_defaults(func=cmd_spread)

    s = sub.add_parser("check-ent3", help="necessary structure for entanglement 3")
    s.add_argument("graph")
    s.add_argument("--json", metavar="OUT")
    s.add_argument("--strict", action="store_true", help="exit 1 on a violated verdict")
    s.set_defaults(func=cmd_check_ent3)

    s = sub.add_parser("generate", help="emit a graph family as an edge list")
    s.add_argument("family", choices=FAMILIES)
    s.add_argument("params", nargs="*")
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("convert", help="re-emit a graph in another format")
    s.add_argument("graph")
    s.add_argument("--to", choices=["edges", "json", "dot"], default="json")
    s.add_argument("-o", "--output", default="-")
    s.set_defaults(func=cmd_convert)
    return p


def _error(kind: str, exc: Exception, **extra) -> None:
    obj = {"error": kind, "message": str(exc)}
    obj.update({k: v for k, v in extra.items() if v is not None})
    sys.stderr.write(json.dumps(obj) + "\n")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        _error("parse", exc, line=exc.line)
        return EXIT_INPUT
    except InputError as exc:
        _error("input", exc)
        return EXIT_INPUT
    except BudgetError as exc:
        _error("budget", exc, estimate=exc.estimate, lowerBound=exc.lower_bound)
        return EXIT_BUDGET
    except InvariantError as exc:
        _error("invariant", exc)
        return EXIT_INTERNAL


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
