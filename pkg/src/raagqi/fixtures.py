"""Named test graphs, assembled from small gluing primitives.

Expected values carry a provenance tag: ``PAPER`` (stated in the source
literature), ``DERIVED`` (computed by hand or by an independent brute force)
or ``TRIVIAL`` (immediate from the definitions).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Mapping, Tuple

from .graph import GraphError, SimplicialGraph, graph_to_dict, join, star


def cycle(n: int, prefix: str = "c") -> SimplicialGraph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    labels = [f"{prefix}{i}" for i in range(1, n + 1)]
    return SimplicialGraph.from_edges([(labels[i], labels[(i + 1) % n]) for i in range(n)], vertices=labels)


def path(n: int, prefix: str = "p") -> SimplicialGraph:
    labels = [f"{prefix}{i}" for i in range(1, n + 1)]
    return SimplicialGraph.from_edges(zip(labels, labels[1:]), vertices=labels)


def complete(n: int, prefix: str = "k") -> SimplicialGraph:
    labels = [f"{prefix}{i}" for i in range(1, n + 1)]
    return SimplicialGraph.from_edges(
        [(u, v) for i, u in enumerate(labels) for v in labels[i + 1:]], vertices=labels)


def discrete(labels) -> SimplicialGraph:
    return SimplicialGraph(tuple(sorted(labels)), frozenset())


def glue(G1: SimplicialGraph, G2: SimplicialGraph, identify: Mapping[str, str]) -> SimplicialGraph:
    """Union of G1 and G2 with each ``identify`` key of G2 merged into its value in G1.

    Unidentified labels of G2 must not occur in G1.  The identified pieces
    must span the same edges on both sides so the result stays a full gluing.
    """
    rename = {v: identify.get(v, v) for v in G2.vertices}
    clash = {v for v in G2.vertices if v not in identify} & G1.vertex_set
    if clash:
        raise GraphError(f"labels shared without identification: {sorted(clash)}")
    src = frozenset(identify)
    dst = frozenset(identify.values())
    e2 = {frozenset(rename[x] for x in e) for e in G2.edges if e <= src}
    e1 = {e for e in G1.edges if e <= dst}
    if e1 != e2:
        raise GraphError("identified subgraphs are not isomorphic under the given map")
    edges = set(G1.edges) | {frozenset(rename[x] for x in e) for e in G2.edges}
    return SimplicialGraph(tuple(sorted(G1.vertex_set | set(rename.values()))), frozenset(edges))


def glue_along_closed_star(G1, v1, G2, v2, identify: Mapping[str, str]) -> SimplicialGraph:
    if set(identify) != star(G2, v2) or set(identify.values()) != star(G1, v1) or identify[v2] != v1:
        raise GraphError("identification must carry St(v2) onto St(v1)")
    return glue(G1, G2, identify)


def glue_along_edge(G1, e1: Tuple[str, str], G2, e2: Tuple[str, str]) -> SimplicialGraph:
    if not (G1.adjacent(*e1) and G2.adjacent(*e2)):
        raise GraphError("gluing needs an edge on both sides")
    return glue(G1, G2, {e2[0]: e1[0], e2[1]: e1[1]})


def _hexagons_on_star(count: int) -> SimplicialGraph:
    G = cycle(6, "a")
    for prefix in "bcdefg"[: count - 1]:
        H = cycle(6, prefix)
        G = glue_along_closed_star(G, "a1", H, f"{prefix}1",
                                   {f"{prefix}1": "a1", f"{prefix}2": "a2", f"{prefix}6": "a6"})
    return G


def pentagon_with_hexagons(count: int) -> SimplicialGraph:
    """A pentagon with ``count`` hexagons glued along the closed star of p1."""
    G = cycle(5, "p")
    for prefix in "hk"[:count]:
        H = cycle(6, prefix)
        G = glue_along_closed_star(G, "p1", H, f"{prefix}1",
                                   {f"{prefix}1": "p1", f"{prefix}2": "p2", f"{prefix}6": "p5"})
    return G


def hex2() -> SimplicialGraph:
    return _hexagons_on_star(2)


def hex3() -> SimplicialGraph:
    return _hexagons_on_star(3)


def ph() -> SimplicialGraph:
    return pentagon_with_hexagons(1)


def ex819b() -> SimplicialGraph:
    return pentagon_with_hexagons(2)


def pentagon_triangle() -> SimplicialGraph:
    return glue_along_edge(cycle(5, "p"), ("p1", "p2"), cycle(3, "t"), ("t1", "t2"))


def hex2_with_branch_hexagon() -> SimplicialGraph:
    """hex2 plus one more hexagon on the closed star of a4 (inside a branch at a1)."""
    G = hex2()
    H = cycle(6, "x")
    return glue_along_closed_star(G, "a4", H, "x1", {"x1": "a4", "x2": "a5", "x6": "a3"})


def pentagon_tower() -> SimplicialGraph:
    """Pentagons glued along stars of a3, then a1, then b3.

    Here a1 has branches {c3, c4} and a doubled copy of {a3, a4}; they only
    become isomorphic after the cut at a3.
    """
    G = cycle(5, "a")
    G = glue_along_closed_star(G, "a3", cycle(5, "b"), "b1", {"b1": "a3", "b2": "a2", "b5": "a4"})
    G = glue_along_closed_star(G, "a1", cycle(5, "c"), "c1", {"c1": "a1", "c2": "a2", "c5": "a5"})
    return glue_along_closed_star(G, "b3", cycle(5, "d"), "d1", {"d1": "b3", "d2": "a2", "d5": "b4"})


def hex2_join_hex2() -> SimplicialGraph:
    """Join of hex2 with a copy whose labels carry a ``z`` prefix."""
    H = hex2()
    return join(H, H.relabel({v: "z" + v for v in H.vertices}))


@dataclass(frozen=True)
class Fixture:
    name: str
    graph: SimplicialGraph
    description: str
    expected: Dict[str, Tuple[object, str]] = field(default_factory=dict)

    def provenance(self, key: str) -> str:
        return self.expected[key][1]


def _registry() -> Dict[str, Fixture]:
    F = {}

    def add(name, graph, description, **expected):
        F[name] = Fixture(name, graph, description, expected)

    add("k2", complete(2, "v"), "single edge; G = Z^2",
        type_II=(True, "TRIVIAL"))
    add("k3", SimplicialGraph.from_edges([("a", "b"), ("b", "c"), ("a", "c")]), "triangle; G = Z^3",
        type_II=(True, "TRIVIAL"), weak_type_II=(True, "TRIVIAL"))
    add("p3", SimplicialGraph.from_edges([("a", "b"), ("b", "c")]), "path a-b-c",
        out_finite=(False, "DERIVED"))
    add("c4", cycle(4), "square; F2 x F2",
        weak_type_II=(False, "DERIVED"), type_II=(False, "DERIVED"))
    add("c5", cycle(5), "pentagon",
        weak_type_I=(True, "DERIVED"), out_finite=(True, "DERIVED"), type_II=(True, "DERIVED"))
    add("c6", cycle(6), "hexagon",
        type_II=(True, "DERIVED"), prime=(True, "DERIVED"))
    add("f2", discrete(["a", "b"]), "two isolated vertices; free group of rank 2")
    add("star3", SimplicialGraph.from_edges([("o", "x"), ("o", "y"), ("o", "z")]), "star K_{1,3}",
        partial_conjugation_count=(6, "DERIVED"))
    add("pentagon_triangle", pentagon_triangle(), "5-cycle and 3-cycle glued along an edge",
        weak_type_I=(True, "PAPER"))
    add("hex2", hex2(), "two hexagons glued along the closed star of a1",
        type_II=(True, "DERIVED"), weak_type_I=(False, "DERIVED"), tuple_at_glue=((2,), "DERIVED"),
        index=(2, "DERIVED"))
    add("hex3", hex3(), "three hexagons glued along the closed star of a1",
        type_II=(True, "DERIVED"), tuple_at_glue=((3,), "DERIVED"), index=(3, "DERIVED"))
    add("ph", ph(), "pentagon and hexagon glued along the closed star of p1",
        type_II=(True, "PAPER"), prime=(True, "PAPER"), tuple_at_glue=((1, 1), "PAPER"),
        index=(1, "PAPER"))
    add("ex819a", ph(), "first graph of the non-QI pair: pentagon plus one hexagon",
        tuple_at_glue=((1, 1), "PAPER"), prime=(True, "PAPER"))
    add("ex819b", ex819b(), "pentagon plus two hexagons glued along the same closed star",
        tuple_at_glue=((1, 2), "PAPER"), prime=(True, "PAPER"))
    add("hex2_branch", hex2_with_branch_hexagon(),
        "hex2 with a further hexagon on a star inside one branch")
    add("pentagon_tower", pentagon_tower(), "four pentagons glued along three closed stars",
        type_II=(True, "DERIVED"), index=(4, "DERIVED"))
    add("hex2_join_hex2", hex2_join_hex2(), "join of two copies of hex2; two crossing walls",
        type_II=(True, "DERIVED"), index=(4, "DERIVED"))
    return F


FIXTURES: Dict[str, Fixture] = _registry()
GLUE_VERTEX = {"hex2": "a1", "hex3": "a1", "ph": "p1", "ex819a": "p1", "ex819b": "p1", "hex2_branch": "a1",
               "hex2_join_hex2": "a1", "pentagon_tower": "a3"}


def get(name: str) -> SimplicialGraph:
    return FIXTURES[name].graph


def dump_fixtures(directory) -> list:
    """Write every fixture as ``<name>.json``; returns the written paths."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name, fx in FIXTURES.items():
        p = directory / f"{name}.json"
        p.write_text(json.dumps(graph_to_dict(fx.graph), sort_keys=True) + "\n")
        written.append(p)
    return written
