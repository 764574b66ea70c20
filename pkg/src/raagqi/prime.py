"""Branch data, QII classes and prime partitions at each vertex.

Two components of ``Γ - St(v)`` are treated as QII when they have the same
boundary and their closed pieces (component plus boundary, as full
subgraphs) are isomorphic by a map fixing the boundary pointwise.  That is
enough to build the elementary permutation swapping the two branches; it is
not known to be necessary, so the criterion name travels with every record.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .classify import is_type_II
from .graph import (
    GraphError,
    SimplicialGraph,
    VertexSet,
    certificate,
    components_minus,
    graph_isomorphic,
    induced_subgraph,
    star,
)

QII_CRITERION = "boundary-fixing-isomorphism"


@dataclass(frozen=True)
class BranchDatum:
    component: VertexSet
    boundary: VertexSet

    @property
    def closed(self) -> VertexSet:
        return self.component | self.boundary

    def sort_key(self):
        return sorted(self.component)

    def to_dict(self) -> dict:
        return {"component": sorted(self.component), "boundary": sorted(self.boundary)}


@dataclass(frozen=True)
class QIIClass:
    members: Tuple[BranchDatum, ...]
    shared_boundary: VertexSet

    def to_dict(self) -> dict:
        return {
            "members": [m.to_dict() for m in self.members],
            "shared_boundary": sorted(self.shared_boundary),
        }


@dataclass(frozen=True)
class PrimePartitionRecord:
    vertex: str
    classes: Tuple[QIIClass, ...]
    tuple: Tuple[int, ...]
    d: int
    factors: Tuple[Tuple[BranchDatum, ...], ...]
    criterion: str = QII_CRITERION

    @property
    def is_prime(self) -> bool:
        return self.d == 1

    def factor_vertices(self, m: int) -> VertexSet:
        """Vertices of the m-th prime factor (1-based)."""
        return frozenset().union(*(b.component for b in self.factors[m - 1]))

    def to_dict(self) -> dict:
        return {
            "vertex": self.vertex,
            "criterion": self.criterion,
            "tuple": list(self.tuple),
            "d": self.d,
            "prime": self.is_prime,
            "classes": [c.to_dict() for c in self.classes],
            "factors": [[sorted(b.component) for b in f] for f in self.factors],
        }


def branch_data(G: SimplicialGraph, v: str) -> List[BranchDatum]:
    st = star(G, v)
    out = []
    for comp in components_minus(G, st):
        boundary = frozenset(u for c in comp for u in G.adjacency[c]) - comp
        out.append(BranchDatum(comp, boundary))
    return out


def qii_equivalent(G: SimplicialGraph, v: str, d1: BranchDatum, d2: BranchDatum) -> bool:
    data = branch_data(G, v)
    if d1 not in data or d2 not in data:
        raise GraphError(f"branch datum does not belong to vertex {v!r}")
    return _qii(G, d1, d2)


def _qii(G: SimplicialGraph, d1: BranchDatum, d2: BranchDatum) -> bool:
    if d1 == d2:
        return True
    if d1.boundary != d2.boundary or len(d1.component) != len(d2.component):
        return False
    P1 = induced_subgraph(G, d1.closed)
    P2 = induced_subgraph(G, d2.closed)
    return graph_isomorphic(P1, P2, fixed={b: b for b in d1.boundary}) is not None


def _class_key(G: SimplicialGraph, members: Sequence[BranchDatum]):
    rep = members[0]
    piece = induced_subgraph(G, rep.closed)
    return (len(members), certificate(piece), len(rep.boundary), rep.sort_key())


def qii_classes(G: SimplicialGraph, v: str) -> List[QIIClass]:
    groups: List[List[BranchDatum]] = []
    for datum in branch_data(G, v):
        for grp in groups:
            if _qii(G, grp[0], datum):
                grp.append(datum)
                break
        else:
            groups.append([datum])
    groups = [sorted(g, key=BranchDatum.sort_key) for g in groups]
    groups.sort(key=lambda g: _class_key(G, g))
    return [QIIClass(tuple(g), g[0].boundary) for g in groups]


def assign_factors(classes: Sequence[QIIClass], d: int,
                   order: Optional[Callable[[int, List[BranchDatum]], List[BranchDatum]]] = None):
    """Split every class evenly over ``d`` factors.

    Member ``j`` of a class of size ``n`` goes to factor ``j // (n // d)``.
    ``order`` may reorder each class first (used to test that the prime graph
    does not depend on the chosen partition).
    """
    factors: List[List[BranchDatum]] = [[] for _ in range(d)]
    for i, cls in enumerate(classes):
        members = list(cls.members)
        if order is not None:
            members = order(i, members)
        per = len(members) // d
        for j, m in enumerate(members):
            factors[j // per].append(m)
    return tuple(tuple(sorted(f, key=BranchDatum.sort_key)) for f in factors)


def prime_partition(G: SimplicialGraph, v: str, order=None) -> PrimePartitionRecord:
    classes = qii_classes(G, v)
    tup = tuple(len(c.members) for c in classes)
    d = 0
    for n in tup:
        d = gcd(d, n)
    d = d or 1
    if classes:
        factors = assign_factors(classes, d, order)
    else:
        factors = ((),)
    return PrimePartitionRecord(v, tuple(classes), tup, d, factors)


def prime_partitions(G: SimplicialGraph, order=None) -> Dict[str, PrimePartitionRecord]:
    return {v: prime_partition(G, v, order) for v in G.vertices}


def is_prime_raag(G: SimplicialGraph) -> bool:
    if not is_type_II(G):
        return False
    return all(prime_partition(G, v).d == 1 for v in G.vertices)
