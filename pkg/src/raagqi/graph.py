"""Finite simplicial graphs and the separation primitives built on them.

A :class:`SimplicialGraph` is immutable.  Vertices are string labels kept in
lexicographic order; that order is the tie-break for every "first" or
"least" choice made anywhere in the package.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

VertexSet = FrozenSet[str]


class GraphError(ValueError):
    """Malformed graph input or an operation applied to a foreign vertex."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def _edge(u: str, v: str) -> FrozenSet[str]:
    return frozenset((u, v))


@dataclass(frozen=True)
class SimplicialGraph:
    vertices: Tuple[str, ...]
    edges: FrozenSet[FrozenSet[str]] = field(default_factory=frozenset)

    def __post_init__(self):
        verts = tuple(sorted(set(self.vertices)))
        if len(verts) != len(self.vertices) or verts != tuple(self.vertices):
            if len(verts) != len(self.vertices):
                raise GraphError("repeated vertex label")
            object.__setattr__(self, "vertices", verts)
        vset = set(verts)
        edges = frozenset(frozenset(e) for e in self.edges)
        for e in edges:
            if len(e) != 2:
                raise GraphError(f"self-loop at {sorted(e)[0]!r}")
            if not e <= vset:
                missing = sorted(e - vset)
                raise GraphError(f"undeclared endpoint {missing[0]!r}")
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence[str]], vertices: Iterable[str] = ()) -> "SimplicialGraph":
        verts = set(vertices)
        es = set()
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at {u!r}")
            verts.update((u, v))
            es.add(_edge(u, v))
        return cls(tuple(sorted(verts)), frozenset(es))

    # cached_property needs a __dict__; frozen dataclasses without slots have one
    @cached_property
    def adjacency(self) -> Mapping[str, VertexSet]:
        adj: Dict[str, set] = {v: set() for v in self.vertices}
        for e in self.edges:
            u, v = tuple(e)
            adj[u].add(v)
            adj[v].add(u)
        return {v: frozenset(n) for v, n in adj.items()}

    @cached_property
    def vertex_set(self) -> VertexSet:
        return frozenset(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v) -> bool:
        return v in self.vertex_set

    def adjacent(self, u: str, v: str) -> bool:
        return v in self.adjacency[u]

    def degree(self, v: str) -> int:
        return len(self.adjacency[v])

    def sorted_edges(self) -> List[Tuple[str, str]]:
        return sorted(tuple(sorted(e)) for e in self.edges)

    def relabel(self, mapping: Mapping[str, str]) -> "SimplicialGraph":
        """Image of the graph under an injective relabelling of its vertices."""
        if len(set(mapping[v] for v in self.vertices)) != len(self.vertices):
            raise GraphError("relabelling is not injective")
        return SimplicialGraph(
            tuple(mapping[v] for v in self.vertices),
            frozenset(frozenset(mapping[x] for x in e) for e in self.edges),
        )

    def __repr__(self) -> str:
        return f"SimplicialGraph({len(self.vertices)} vertices, {len(self.edges)} edges)"


def _check_vertex(G: SimplicialGraph, v: str) -> None:
    if v not in G.vertex_set:
        raise GraphError(f"unknown vertex {v!r}")


def _check_subset(G: SimplicialGraph, S: Iterable[str]) -> VertexSet:
    S = frozenset(S)
    if not S <= G.vertex_set:
        raise GraphError(f"not a vertex subset: {sorted(S - G.vertex_set)}")
    return S


# ---------------------------------------------------------------- parsing


def parse_graph(text: str, format: str = "edge-list") -> SimplicialGraph:
    """Parse an edge list or JSON document into a canonical graph.

    Edge lists hold one edge per line as two whitespace separated labels.
    ``#`` starts a comment line and ``v <label>`` declares a vertex, which is
    how isolated vertices are written.  The JSON form is
    ``{"vertices": [...], "edges": [[u, v], ...]}``; edge endpoints must be
    declared.  Errors carry the offending line (edge list) or edge index
    (JSON).
    """
    if format == "json":
        return _parse_json(text)
    if format != "edge-list":
        raise GraphError(f"unknown format {format!r}")
    verts: set = set()
    edges: set = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "v":
            if len(parts) != 2:
                raise GraphError("vertex declaration takes one label", lineno)
            verts.add(parts[1])
            continue
        if len(parts) != 2:
            raise GraphError(f"expected two labels, got {len(parts)}", lineno)
        u, v = parts
        if u == v:
            raise GraphError(f"self-loop at {u!r}", lineno)
        e = _edge(u, v)
        if e in edges:
            raise GraphError(f"duplicate edge {u} {v}", lineno)
        edges.add(e)
        verts.update(parts)
    return SimplicialGraph(tuple(sorted(verts)), frozenset(edges))


def _parse_json(text: str) -> SimplicialGraph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"malformed JSON: {exc.msg}", exc.lineno) from None
    if not isinstance(data, dict) or "vertices" not in data:
        raise GraphError("JSON graph needs a 'vertices' list")
    raw_vertices = data["vertices"]
    raw_edges = data.get("edges", [])
    if not isinstance(raw_vertices, list) or not isinstance(raw_edges, list):
        raise GraphError("'vertices' and 'edges' must be lists")
    verts = [str(v) for v in raw_vertices]
    if len(set(verts)) != len(verts):
        raise GraphError("repeated vertex label")
    vset = set(verts)
    edges: set = set()
    for i, pair in enumerate(raw_edges):
        if not isinstance(pair, list) or len(pair) != 2:
            raise GraphError(f"edge #{i} is not a pair")
        u, v = str(pair[0]), str(pair[1])
        if u == v:
            raise GraphError(f"edge #{i}: self-loop at {u!r}")
        for x in (u, v):
            if x not in vset:
                raise GraphError(f"edge #{i}: undeclared endpoint {x!r}")
        e = _edge(u, v)
        if e in edges:
            raise GraphError(f"edge #{i}: duplicate edge {u} {v}")
        edges.add(e)
    return SimplicialGraph(tuple(sorted(vset)), frozenset(edges))


def graph_to_dict(G: SimplicialGraph) -> dict:
    return {"vertices": list(G.vertices), "edges": [list(e) for e in G.sorted_edges()]}


def serialize_graph(G: SimplicialGraph, format: str = "json") -> str:
    if format == "json":
        return json.dumps(graph_to_dict(G), sort_keys=True)
    if format != "edge-list":
        raise GraphError(f"unknown format {format!r}")
    lines = []
    touched = set()
    for u, v in G.sorted_edges():
        lines.append(f"{u} {v}")
        touched.update((u, v))
    lines += [f"v {v}" for v in G.vertices if v not in touched]
    return "\n".join(lines) + "\n"


# ------------------------------------------------------ local structure


def link(G: SimplicialGraph, v: str) -> VertexSet:
    _check_vertex(G, v)
    return G.adjacency[v]


def star(G: SimplicialGraph, v: str) -> VertexSet:
    _check_vertex(G, v)
    return G.adjacency[v] | {v}


def induced_subgraph(G: SimplicialGraph, S: Iterable[str]) -> SimplicialGraph:
    S = _check_subset(G, S)
    return SimplicialGraph(tuple(sorted(S)), frozenset(e for e in G.edges if e <= S))


def _components_within(G: SimplicialGraph, allowed: VertexSet) -> List[VertexSet]:
    seen: set = set()
    comps = []
    for start in G.vertices:
        if start not in allowed or start in seen:
            continue
        comp = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in G.adjacency[u]:
                if w in allowed and w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        comps.append(frozenset(comp))
    # vertices are scanned in canonical order, so comps are ordered by least label
    return comps


def components_minus(G: SimplicialGraph, S: Iterable[str] = ()) -> List[VertexSet]:
    """Connected components of ``G - S``, ordered by least vertex label."""
    S = _check_subset(G, S)
    return _components_within(G, G.vertex_set - S)


def is_connected(G: SimplicialGraph) -> bool:
    """Empty graph counts as disconnected (it has no component)."""
    return len(components_minus(G)) == 1


def distances_from(G: SimplicialGraph, v: str) -> Dict[str, int]:
    _check_vertex(G, v)
    dist = {v: 0}
    queue = deque([v])
    while queue:
        u = queue.popleft()
        for w in G.adjacency[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def distance(G: SimplicialGraph, u: str, v: str) -> float:
    """Graph distance; ``inf`` across components."""
    return distances_from(G, u).get(v, float("inf"))


def distance_table(G: SimplicialGraph) -> Dict[str, Dict[str, int]]:
    return {v: distances_from(G, v) for v in G.vertices}


def is_clique(G: SimplicialGraph, S: Iterable[str]) -> bool:
    S = list(S)
    return all(G.adjacent(u, v) for i, u in enumerate(S) for v in S[i + 1:])


def maximal_cliques(G: SimplicialGraph) -> List[VertexSet]:
    # Bron-Kerbosch with pivoting
    adj = G.adjacency
    out: List[VertexSet] = []

    def expand(R: frozenset, P: set, X: set):
        if not P and not X:
            out.append(R)
            return
        pivot = max(sorted(P | X), key=lambda u: len(adj[u] & P))
        for u in sorted(P - adj[pivot]):
            expand(R | {u}, P & adj[u], X & adj[u])
            P.discard(u)
            X.add(u)

    if G.vertices:
        expand(frozenset(), set(G.vertices), set())
    return sorted(out, key=lambda c: sorted(c))


def clique_number(G: SimplicialGraph) -> int:
    return max((len(c) for c in maximal_cliques(G)), default=0)


def complement(G: SimplicialGraph) -> SimplicialGraph:
    vs = G.vertices
    edges = frozenset(
        _edge(u, v) for i, u in enumerate(vs) for v in vs[i + 1:] if not G.adjacent(u, v)
    )
    return SimplicialGraph(vs, edges)


@dataclass(frozen=True)
class JoinDecomposition:
    clique_factor: VertexSet
    irreducible_factors: Tuple[VertexSet, ...]


def join_decomposition(G: SimplicialGraph) -> JoinDecomposition:
    n = len(G)
    clique = frozenset(v for v in G.vertices if G.degree(v) == n - 1)
    rest = G.vertex_set - clique
    factors = _components_within(complement(G), rest)
    return JoinDecomposition(clique, tuple(factors))


def join(G1: SimplicialGraph, G2: SimplicialGraph) -> SimplicialGraph:
    """Join of two graphs on disjoint label sets."""
    if G1.vertex_set & G2.vertex_set:
        raise GraphError("join needs disjoint vertex labels")
    edges = set(G1.edges) | set(G2.edges)
    edges |= {_edge(u, v) for u in G1.vertices for v in G2.vertices}
    return SimplicialGraph(G1.vertices + G2.vertices, frozenset(edges))


# ------------------------------------------------------------ isomorphism


def _neighbor_degrees(G: SimplicialGraph) -> Dict[str, Tuple[int, ...]]:
    return {v: tuple(sorted(G.degree(w) for w in G.adjacency[v])) for v in G.vertices}


def iter_isomorphisms(
    G1: SimplicialGraph,
    G2: SimplicialGraph,
    fixed: Optional[Mapping[str, str]] = None,
) -> Iterator[Dict[str, str]]:
    """Yield every adjacency-preserving bijection ``G1 -> G2`` extending ``fixed``.

    Backtracking search.  The next vertex to place is the unmapped one with
    the most mapped neighbours (ties by label); candidates are tried in label
    order and must agree in degree and neighbour-degree multiset.
    """
    if len(G1) != len(G2) or len(G1.edges) != len(G2.edges):
        return
    nd1, nd2 = _neighbor_degrees(G1), _neighbor_degrees(G2)
    if sorted(nd1.values()) != sorted(nd2.values()):
        return
    fixed = dict(fixed or {})
    for a, b in fixed.items():
        if a not in G1 or b not in G2 or nd1[a] != nd2[b]:
            return
    if len(set(fixed.values())) != len(fixed):
        return
    for a in fixed:
        for a2 in fixed:
            if a < a2 and G1.adjacent(a, a2) != G2.adjacent(fixed[a], fixed[a2]):
                return

    adj1, adj2 = G1.adjacency, G2.adjacency
    mapping = dict(fixed)
    used = set(mapping.values())
    free1 = [v for v in G1.vertices if v not in mapping]

    def pick_next(remaining):
        return max(remaining, key=lambda u: (sum(1 for w in adj1[u] if w in mapping), -G1.vertices.index(u)))

    def extend(remaining):
        if not remaining:
            yield dict(mapping)
            return
        u = pick_next(remaining)
        rest = [x for x in remaining if x != u]
        for c in G2.vertices:
            if c in used or nd2[c] != nd1[u]:
                continue
            ok = True
            for w, img in mapping.items():
                if (w in adj1[u]) != (img in adj2[c]):
                    ok = False
                    break
            if not ok:
                continue
            mapping[u] = c
            used.add(c)
            yield from extend(rest)
            del mapping[u]
            used.discard(c)

    yield from extend(free1)


def graph_isomorphic(
    G1: SimplicialGraph, G2: SimplicialGraph, fixed: Optional[Mapping[str, str]] = None
) -> Optional[Dict[str, str]]:
    """First isomorphism found by :func:`iter_isomorphisms`, or ``None``."""
    return next(iter_isomorphisms(G1, G2, fixed), None)


def automorphism_count(G: SimplicialGraph) -> int:
    return sum(1 for _ in iter_isomorphisms(G, G))


def certificate(G: SimplicialGraph) -> Tuple:
    """Cheap relabel-invariant fingerprint (not a complete invariant)."""
    colors = {v: (G.degree(v),) for v in G.vertices}
    for _ in range(len(G)):
        new = {v: (colors[v], tuple(sorted(colors[w] for w in G.adjacency[v]))) for v in G.vertices}
        palette = {c: i for i, c in enumerate(sorted(set(new.values())))}
        new = {v: (palette[new[v]],) for v in G.vertices}
        if len(set(new.values())) == len(set(colors.values())):
            colors = new
            break
        colors = new
    return (len(G), len(G.edges), tuple(sorted(G.degree(v) for v in G.vertices)),
            tuple(sorted(colors.values())))
