"""Quasi-isometry and commensurability decisions between two RAAGs."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional

from .classify import classify
from .cubulation import prime_graph
from .geometry import GeometryError, convex_domains, format_word, special_subgroup
from .graph import (
    SimplicialGraph,
    clique_number,
    graph_isomorphic,
    graph_to_dict,
    join_decomposition,
)
from .prime import prime_partition

YES, NO, UNKNOWN = "yes", "no", "unknown"
ROUTE_PRIME = "typeII-prime-graph"
ROUTE_WEAK_I = "weakI-isomorphism"
ROUTE_SPECIAL = "special-subgroup-search"
ROUTE_ISOMORPHISM = "graph-isomorphism"
ROUTE_INVARIANT = "invariant-mismatch"
ROUTE_UNDECIDED = "undecided"


@dataclass
class QIDecision:
    verdict: str
    route: str
    certificate: Optional[dict] = None
    invariants_report: Dict[str, dict] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "route": self.route, "certificate": self.certificate,
                "invariants": self.invariants_report}


def invariants(G: SimplicialGraph) -> dict:
    """Quasi-isometry invariants that are cheap to compute."""
    rep = classify(G)
    jd = join_decomposition(G)
    out = {
        "vertices": len(G),
        "dimension": clique_number(G),
        "clique_factor_size": len(jd.clique_factor),
        "irreducible_factor_count": len(jd.irreducible_factors),
        "weak_type_II": rep.weak_type_II,
        "type_II": rep.type_II,
        "weak_type_I": rep.weak_type_I,
    }
    if rep.type_II:
        out["tuples"] = {v: list(prime_partition(G, v).tuple) for v in G.vertices}
    return out


# compared in this order; each is a QI invariant
_CHEAP = ("type_II", "weak_type_II", "dimension", "clique_factor_size", "irreducible_factor_count")


def commensuration_certificate(G1: SimplicialGraph, G2: SimplicialGraph) -> Optional[dict]:
    """Common prime graph and both indices, or ``None`` when the prime graphs differ."""
    r1 = prime_graph(G1)
    r2 = prime_graph(G2)
    iso = graph_isomorphic(r1.prime_graph, r2.prime_graph)
    if iso is None:
        return None
    return {
        "common_prime_graph": graph_to_dict(r1.prime_graph),
        "index1": r1.index,
        "index2": r2.index,
        "isomorphism": dict(sorted(iso.items())),
    }


def qi_search_special(G1: SimplicialGraph, G2: SimplicialGraph, budget: int, cap: int = 100_000):
    """Look for a convex domain of at most ``budget`` vertices in X(G1) whose
    special subgroup has a defining graph isomorphic to G2.

    Returns ``("found", domain, isomorphism)`` or ``("not-found-within-budget", None, None)``.
    A hit always certifies a quasi-isometry (the subgroup has finite index);
    only for G1 of weak type I does some finite budget have to succeed.
    """
    for K in convex_domains(G1, budget, cap):
        res = special_subgroup(G1, K)
        if len(res.defining_graph) != len(G2) or len(res.defining_graph.edges) != len(G2.edges):
            continue
        iso = graph_isomorphic(res.defining_graph, G2)
        if iso is not None:
            return ("found", K, iso)
    return ("not-found-within-budget", None, None)


def qi_equivalent(G1: SimplicialGraph, G2: SimplicialGraph, budget: int = 0) -> QIDecision:
    inv1, inv2 = invariants(G1), invariants(G2)
    report = {"graph1": inv1, "graph2": inv2}

    if inv1["weak_type_I"] and inv2["weak_type_I"]:
        iso = graph_isomorphic(G1, G2)
        if iso is None:
            return QIDecision(NO, ROUTE_WEAK_I, {"reason": "weak type I graphs are not isomorphic"}, report)
        return QIDecision(YES, ROUTE_WEAK_I, {"isomorphism": dict(sorted(iso.items()))}, report)

    if inv1["type_II"] and inv2["type_II"]:
        cert = commensuration_certificate(G1, G2)
        if cert is None:
            return QIDecision(NO, ROUTE_PRIME, {"reason": "prime graphs are not isomorphic"}, report)
        return QIDecision(YES, ROUTE_PRIME, cert, report)

    for name in _CHEAP:
        if inv1[name] != inv2[name]:
            return QIDecision(NO, ROUTE_INVARIANT,
                              {"invariant": name, "values": [inv1[name], inv2[name]]}, report)

    # isomorphic graphs give isomorphic groups, whatever their class
    iso = graph_isomorphic(G1, G2)
    if iso is not None:
        return QIDecision(YES, ROUTE_ISOMORPHISM, {"isomorphism": dict(sorted(iso.items()))}, report)

    if budget > 0:
        for A, B, flipped in ((G1, G2, False), (G2, G1, True)):
            try:
                status, K, iso = qi_search_special(A, B, budget)
            except GeometryError as exc:
                report["search"] = {"status": "infeasible", "detail": str(exc)}
                break
            if status == "found":
                dom = sorted((format_word(w) for w in K.elements), key=lambda w: (len(w), w))
                return QIDecision(YES, ROUTE_SPECIAL,
                                  {"ambient": "graph2" if flipped else "graph1", "domain": dom,
                                   "index": len(K.elements)}, report)
            report["search"] = {"status": status, "budget": budget}
    return QIDecision(UNKNOWN, ROUTE_UNDECIDED, None, report)
