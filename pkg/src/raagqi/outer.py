"""Generators of Out(G(Γ)): inversions, graph automorphisms, transvections
and partial conjugations.

Only the last two families gate anything downstream, so they are listed
explicitly; the first two are counted.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

from .graph import SimplicialGraph, VertexSet, automorphism_count, components_minus, star


@dataclass(frozen=True)
class TransvectionRecord:
    dominated: str
    dominating: str
    adjacent: bool

    def to_dict(self) -> dict:
        return {"dominated": self.dominated, "dominating": self.dominating, "adjacent": self.adjacent}


@dataclass(frozen=True)
class PartialConjugationRecord:
    pivot: str
    component: VertexSet

    def to_dict(self) -> dict:
        return {"pivot": self.pivot, "component": sorted(self.component)}


@dataclass(frozen=True)
class OutReport:
    inversion_count: int
    graph_automorphism_count: int
    transvections: Tuple[TransvectionRecord, ...]
    partial_conjugations: Tuple[PartialConjugationRecord, ...]
    out_finite: bool

    def to_dict(self) -> dict:
        return {
            "inversion_count": self.inversion_count,
            "graph_automorphism_count": self.graph_automorphism_count,
            "transvections": [t.to_dict() for t in self.transvections],
            "partial_conjugations": [p.to_dict() for p in self.partial_conjugations],
            "out_finite": self.out_finite,
            # the k records at one pivot multiply to an inner automorphism
            "note": "partial conjugations at a common pivot multiply to an inner automorphism",
        }


def transvections(G: SimplicialGraph) -> List[TransvectionRecord]:
    """Ordered pairs (w, v) with lk(w) ⊆ St(v), w ≠ v."""
    out = []
    for w in G.vertices:
        lw = G.adjacency[w]
        for v in G.vertices:
            if v != w and lw <= star(G, v):
                out.append(TransvectionRecord(w, v, G.adjacent(v, w)))
    return out


def partial_conjugations(G: SimplicialGraph) -> List[PartialConjugationRecord]:
    out = []
    for v in G.vertices:
        comps = components_minus(G, star(G, v))
        if len(comps) >= 2:
            out.extend(PartialConjugationRecord(v, c) for c in comps)
    return out


def has_nonadjacent_transvection(G: SimplicialGraph) -> bool:
    return any(not t.adjacent for t in transvections(G))


def out_is_finite(G: SimplicialGraph) -> bool:
    return not transvections(G) and not partial_conjugations(G)


def out_report(G: SimplicialGraph) -> OutReport:
    ts = tuple(transvections(G))
    pcs = tuple(partial_conjugations(G))
    return OutReport(
        inversion_count=len(G),
        graph_automorphism_count=automorphism_count(G),
        transvections=ts,
        partial_conjugations=pcs,
        out_finite=not ts and not pcs,
    )
