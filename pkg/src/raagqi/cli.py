"""Command line front end.

Every JSON document written to stdout carries a ``schema`` tag and is
serialized with sorted keys, so identical inputs give identical bytes.

Exit codes: 0 success (``qi``: yes), 1 ``qi`` no, 2 ``qi`` unknown,
64 usage error, 65 unreadable or invalid input, 70 internal invariant failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from . import fixtures
from .classify import ClassificationError, classify
from .cubulation import CubulationError, NotTypeII, prime_graph
from .decide import NO, UNKNOWN, YES, qi_equivalent
from .geometry import ConvexDomain, GeometryError, ball, format_word, parse_word, special_subgroup
from .graph import GraphError, SimplicialGraph, graph_to_dict, parse_graph
from .outer import out_report
from .prime import prime_partitions

EX_USAGE, EX_DATAERR, EX_SOFTWARE = 64, 65, 70
SCHEMA_VERSION = 1

log = logging.getLogger("raagqi")


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def load_graph(spec: str) -> SimplicialGraph:
    """Read a graph from ``fixture:<name>``, a ``.json`` file or an edge list file."""
    if spec.startswith("fixture:"):
        name = spec.split(":", 1)[1]
        if name not in fixtures.FIXTURES:
            raise InputError(f"unknown fixture {name!r}")
        return fixtures.get(name)
    p = Path(spec)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {spec}: {exc.strerror}") from None
    fmt = "json" if p.suffix.lower() == ".json" else "edge-list"
    try:
        return parse_graph(text, fmt)
    except GraphError as exc:
        raise InputError(f"{spec}: {exc}") from None


def to_dot(G: SimplicialGraph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    lines += [f'  "{v}";' for v in G.vertices]
    lines += [f'  "{u}" -- "{v}";' for u, v in G.sorted_edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"


def dumps(kind: str, payload: dict) -> str:
    doc = {"schema": f"raagqi.{kind}/{SCHEMA_VERSION}"}
    doc.update(payload)
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


# ------------------------------------------------------------ subcommands


def cmd_classify(args, out) -> int:
    G = load_graph(args.graph)
    out.write(dumps("type-report", classify(G).to_dict(explain=args.explain)))
    return 0


def cmd_out(args, out) -> int:
    G = load_graph(args.graph)
    out.write(dumps("out-report", out_report(G).to_dict()))
    return 0


def cmd_prime(args, out) -> int:
    G = load_graph(args.graph)
    recs = prime_partitions(G)
    out.write(dumps("prime-partitions", {"vertices": {v: r.to_dict() for v, r in recs.items()}}))
    return 0


def cmd_prime_graph(args, out) -> int:
    G = load_graph(args.graph)
    try:
        res = prime_graph(G)
    except NotTypeII as exc:
        raise InputError(str(exc)) from None
    if args.emit_dot:
        Path(args.emit_dot).write_text(to_dot(res.prime_graph, "prime"), encoding="utf-8")
    if args.emit_complex:
        Path(args.emit_complex).write_text(dumps("cube-complex", res.complex.to_dict()), encoding="utf-8")
    if args.figure:
        from .plot import prime_graph_figure
        prime_graph_figure(G, res, args.figure)
    out.write(dumps("prime-graph", res.to_dict()))
    return 0


def cmd_qi(args, out) -> int:
    G1 = load_graph(args.graph1)
    G2 = load_graph(args.graph2)
    if args.budget < 0:
        raise UsageError("--budget must be non-negative")
    dec = qi_equivalent(G1, G2, budget=args.budget)
    if args.figure:
        from .plot import pair_figure
        pair_figure(G1, G2, args.figure, (args.graph1, args.graph2))
    out.write(dumps("qi-decision", dec.to_dict()))
    return {YES: 0, NO: 1, UNKNOWN: 2}[dec.verdict]


def _read_domain(G: SimplicialGraph, text: str) -> ConvexDomain:
    p = Path(text)
    if not text.lstrip().startswith("[") and p.exists():
        text = p.read_text(encoding="utf-8")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"domain is not valid JSON: {exc.msg}") from None
    if not isinstance(raw, list) or not all(isinstance(w, (list, str)) for w in raw):
        raise InputError("domain must be a JSON list of words (letter lists or strings)")
    try:
        return ConvexDomain.of(G, [parse_word(w) for w in raw])
    except GeometryError as exc:
        raise InputError(str(exc)) from None


def cmd_special(args, out) -> int:
    G = load_graph(args.graph)
    K = _read_domain(G, args.domain)
    res = special_subgroup(G, K)
    if args.figure:
        from .plot import pair_figure
        pair_figure(G, res.defining_graph, args.figure, ("ambient graph", "defining graph"))
    payload = res.to_dict()
    payload["domain"] = [format_word(w) for w in K.sorted()]
    out.write(dumps("special-subgroup", payload))
    return 0


def cmd_ball(args, out) -> int:
    G = load_graph(args.graph)
    if args.radius < 0:
        raise UsageError("radius must be non-negative")
    try:
        B = ball(G, args.radius, cap=args.cap)
    except GeometryError as exc:
        raise InputError(str(exc)) from None
    out.write(dumps("ball", {
        "radius": B.radius,
        "size": len(B),
        "elements": [format_word(w) for w in B.elements],
        "edges": [list(e) for e in B.edges],
    }))
    return 0


def cmd_fixtures(args, out) -> int:
    if args.dump:
        paths = fixtures.dump_fixtures(args.dump)
        out.write(dumps("fixture-dump", {"written": [p.name for p in paths]}))
        return 0
    if args.name:
        if args.name not in fixtures.FIXTURES:
            raise InputError(f"unknown fixture {args.name!r}")
        fx = fixtures.FIXTURES[args.name]
        out.write(dumps("fixture", {
            "name": fx.name,
            "description": fx.description,
            "graph": graph_to_dict(fx.graph),
            "expected": {k: {"value": list(v) if isinstance(v, tuple) else v, "provenance": src}
                         for k, (v, src) in fx.expected.items()},
        }))
        return 0
    out.write(dumps("fixture-list", {"fixtures": {n: f.description for n, f in fixtures.FIXTURES.items()}}))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="raagqi", description="Quasi-isometry and commensurability of right-angled Artin groups.")
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)
    graph_help = "graph file (.json or edge list) or fixture:<name>"

    p = sub.add_parser("classify", help="type II / weak type II / weak type I")
    p.add_argument("graph", help=graph_help)
    p.add_argument("--explain", action="store_true", help="add a witness for each false predicate")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("out", help="generators of the outer automorphism group")
    p.add_argument("graph", help=graph_help)
    p.set_defaults(func=cmd_out)

    p = sub.add_parser("prime", help="prime partition at every vertex")
    p.add_argument("graph", help=graph_help)
    p.set_defaults(func=cmd_prime)

    p = sub.add_parser("prime-graph", help="prime graph and index of a type II graph")
    p.add_argument("graph", help=graph_help)
    p.add_argument("--emit-dot", metavar="PATH")
    p.add_argument("--emit-complex", metavar="PATH")
    p.add_argument("--figure", metavar="PATH", help="render the input, the dual complex and the prime graph")
    p.set_defaults(func=cmd_prime_graph)

    p = sub.add_parser("qi", help="decide quasi-isometry of two RAAGs")
    p.add_argument("graph1", help=graph_help)
    p.add_argument("graph2", help=graph_help)
    p.add_argument("--budget", type=int, default=0, help="max domain size for the special subgroup search")
    p.add_argument("--figure", metavar="PATH")
    p.set_defaults(func=cmd_qi)

    p = sub.add_parser("special", help="special subgroup of a convex domain")
    p.add_argument("graph", help=graph_help)
    p.add_argument("--domain", required=True, help="JSON list of words, inline or as a file path")
    p.add_argument("--figure", metavar="PATH")
    p.set_defaults(func=cmd_special)

    p = sub.add_parser("ball", help="Cayley ball of the RAAG")
    p.add_argument("graph", help=graph_help)
    p.add_argument("-r", "--radius", type=int, required=True)
    p.add_argument("--cap", type=int, default=200_000)
    p.set_defaults(func=cmd_ball)

    p = sub.add_parser("fixtures", help="list, show or dump the built-in graphs")
    p.add_argument("name", nargs="?")
    p.add_argument("--dump", metavar="DIR")
    p.set_defaults(func=cmd_fixtures)
    return ap


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        if args.command is None:
            raise UsageError("raagqi: a subcommand is required")
        logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        return args.func(args, out)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        ap.print_usage(sys.stderr)
        return EX_USAGE
    except InputError as exc:
        print(f"raagqi: {exc}", file=sys.stderr)
        return EX_DATAERR
    except (CubulationError, ClassificationError) as exc:
        print(f"raagqi: internal invariant failed: {exc}", file=sys.stderr)
        return EX_SOFTWARE


if __name__ == "__main__":
    raise SystemExit(main())
