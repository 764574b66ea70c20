"""Separation classes of defining graphs: separating closed stars, weak type
II, type II and weak type I, plus the clique description of minimal stable
subgraphs for weak type I graphs.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from .graph import (
    SimplicialGraph,
    VertexSet,
    components_minus,
    distance_table,
    is_connected,
    maximal_cliques,
    star,
)


class ClassificationError(RuntimeError):
    """The two weak type I formulations disagreed (an implementation bug)."""


class NotWeakTypeI(ValueError):
    pass


def separating_stars(G: SimplicialGraph) -> VertexSet:
    return frozenset(v for v in G.vertices if len(components_minus(G, star(G, v))) >= 2)


def _link_cut_separates(G: SimplicialGraph, v: str, w: str) -> bool:
    cut = G.adjacency[v] & G.adjacency[w]
    return len(components_minus(G, cut)) != 1


def _distance_two_pairs(G: SimplicialGraph) -> List[Tuple[str, str]]:
    dist = distance_table(G)
    return [(v, w) for v, w in combinations(G.vertices, 2) if dist[v].get(w) == 2]


def weak_type_II_witness(G: SimplicialGraph) -> Optional[Tuple[str, str]]:
    """First pair at distance 2 whose common link separates, if any."""
    for v, w in _distance_two_pairs(G):
        if _link_cut_separates(G, v, w):
            return (v, w)
    return None


def type_II_witness(G: SimplicialGraph) -> Optional[Tuple[str, str]]:
    for v, w in combinations(G.vertices, 2):
        if _link_cut_separates(G, v, w):
            return (v, w)
    return None


def is_weak_type_II(G: SimplicialGraph) -> bool:
    return is_connected(G) and weak_type_II_witness(G) is None


def is_type_II(G: SimplicialGraph) -> bool:
    return is_connected(G) and type_II_witness(G) is None


def star_cover_pairs(G: SimplicialGraph) -> List[Tuple[str, str]]:
    """Pairs at distance 2 whose two closed stars, as full subgraphs, make up G.

    Both the vertices and the edges have to be covered: an edge counts only
    if both of its ends lie in one of the two stars.
    """
    out = []
    for v, w in _distance_two_pairs(G):
        sv, sw = star(G, v), star(G, w)
        if sv | sw != G.vertex_set:
            continue
        if all(e <= sv or e <= sw for e in G.edges):
            out.append((v, w))
    return out


def _weak_type_I_by_cover(G: SimplicialGraph) -> bool:
    return is_connected(G) and not separating_stars(G) and not star_cover_pairs(G)


def _weak_type_I_by_weak_II(G: SimplicialGraph) -> bool:
    return is_weak_type_II(G) and not separating_stars(G)


def is_weak_type_I(G: SimplicialGraph) -> bool:
    a = _weak_type_I_by_cover(G)
    b = _weak_type_I_by_weak_II(G)
    if a != b:
        raise ClassificationError(
            f"weak type I formulations disagree (cover form {a}, weak-type-II form {b})"
        )
    return a


def minimal_stable_subgraph(G: SimplicialGraph, w: str) -> VertexSet:
    """Intersection of the maximal cliques containing ``w``."""
    star(G, w)  # vertex check
    if not is_weak_type_I(G):
        raise NotWeakTypeI("minimal stable subgraph is only characterised for weak type I graphs")
    out = None
    for c in maximal_cliques(G):
        if w in c:
            out = c if out is None else out & c
    return out


@dataclass(frozen=True)
class TypeReport:
    connected: bool
    separating_star_vertices: VertexSet
    weak_type_II: bool
    type_II: bool
    weak_type_I: bool
    star_cover_pairs: Tuple[Tuple[str, str], ...]
    explanation: Dict[str, object] = field(default_factory=dict, compare=False)

    def to_dict(self, explain: bool = False) -> dict:
        d = {
            "connected": self.connected,
            "separating_star_vertices": sorted(self.separating_star_vertices),
            "weak_type_II": self.weak_type_II,
            "type_II": self.type_II,
            "weak_type_I": self.weak_type_I,
            "star_cover_pairs": [list(p) for p in self.star_cover_pairs],
        }
        if explain:
            d["explanation"] = self.explanation
        return d


def classify(G: SimplicialGraph) -> TypeReport:
    connected = is_connected(G)
    seps = separating_stars(G)
    weak2 = is_weak_type_II(G)
    t2 = is_type_II(G)
    weak1 = is_weak_type_I(G)
    covers = tuple(star_cover_pairs(G))

    why: Dict[str, object] = {}
    if not connected:
        why["connected"] = "disconnected"
    if not weak2:
        why["weak_type_II"] = "disconnected" if not connected else list(weak_type_II_witness(G))
    if not t2:
        why["type_II"] = "disconnected" if not connected else list(type_II_witness(G))
    if not weak1:
        if not connected:
            why["weak_type_I"] = "disconnected"
        elif seps:
            why["weak_type_I"] = {"separating_star": sorted(seps)[0]}
        else:
            why["weak_type_I"] = {"star_cover_pair": list(covers[0])}
    return TypeReport(connected, seps, weak2, t2, weak1, covers, why)
