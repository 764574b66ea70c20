"""Walls from prime partitions, their pocset, the dual CAT(0) cube complex, and
the prime graph read off from it.

A non-prime vertex ``v`` with prime factors ``c_1 .. c_d`` carries ``d - 1``
walls.  Wall ``m`` splits the graph into ``St(v) ∪ c_1 ∪ .. ∪ c_m`` (the
``low`` side) and ``St(v) ∪ c_{m+1} ∪ .. ∪ c_d`` (the ``high`` side).
Halfspaces are identified by ``(base, cut, side)``; two halfspaces at
different bases are distinct even when their vertex sets agree.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from .classify import is_type_II
from .graph import (
    SimplicialGraph,
    VertexSet,
    components_minus,
    distance_table,
    graph_isomorphic,
    induced_subgraph,
    star,
)
from .prime import is_prime_raag, prime_partitions

log = logging.getLogger(__name__)

LOW, HIGH = "low", "high"

# an ultrafilter is the set of chosen halfspace indices, one per wall
Ultrafilter = FrozenSet[int]


class CubulationError(RuntimeError):
    """An invariant of the construction failed; points at an upstream bug."""


class NotTypeII(ValueError):
    pass


@dataclass(frozen=True)
class Halfspace:
    base: str
    cut: int
    side: str
    extent: VertexSet

    @property
    def id(self) -> str:
        return f"{self.base}:{self.cut}:{self.side}"

    @property
    def wall(self) -> Tuple[str, int]:
        return (self.base, self.cut)

    def to_dict(self) -> dict:
        return {"id": self.id, "base": self.base, "cut": self.cut, "side": self.side,
                "extent": sorted(self.extent)}


@dataclass
class Pocset:
    graph: SimplicialGraph
    halfspaces: Tuple[Halfspace, ...]
    order: List[List[bool]]
    compatibility: List[List[bool]]
    distances: Dict[str, Dict[str, int]] = field(repr=False)
    factors: Dict[str, Tuple[VertexSet, ...]] = field(default_factory=dict, repr=False)

    def __len__(self) -> int:
        return len(self.halfspaces)

    def complement(self, i: int) -> int:
        # halfspaces are stored in (low, high) pairs
        return i ^ 1

    @property
    def walls(self) -> List[Tuple[int, int]]:
        return [(i, i + 1) for i in range(0, len(self.halfspaces), 2)]

    def leq(self, i: int, j: int) -> bool:
        return self.order[i][j]

    def lt(self, i: int, j: int) -> bool:
        return i != j and self.order[i][j]

    def compatible(self, i: int, j: int) -> bool:
        return self.compatibility[i][j]

    def base_distance(self, i: int, j: int) -> float:
        return self.distances[self.halfspaces[i].base].get(self.halfspaces[j].base, float("inf"))

    def index_of(self, hid: str) -> int:
        for i, h in enumerate(self.halfspaces):
            if h.id == hid:
                return i
        raise KeyError(hid)

    def to_dict(self) -> dict:
        return {"halfspaces": [h.to_dict() for h in self.halfspaces],
                "walls": [[self.halfspaces[a].id, self.halfspaces[b].id] for a, b in self.walls]}


def _wall_halfspaces(G: SimplicialGraph, v: str, factors: Sequence[VertexSet]) -> List[Halfspace]:
    st = star(G, v)
    d = len(factors)
    out = []
    for m in range(1, d):
        low = st.union(*factors[:m])
        high = st.union(*factors[m:])
        out += [Halfspace(v, m, LOW, low), Halfspace(v, m, HIGH, high)]
    return out


def pocset_from_factors(G: SimplicialGraph, factors: Mapping[str, Sequence[VertexSet]]) -> Pocset:
    """Pocset of the walls given by an explicit ordered factor list per vertex.

    Every factor must be a union of components of ``G - St(v)`` and together
    they must cover all of them.
    """
    for v, fs in factors.items():
        comps = components_minus(G, star(G, v))
        covered = frozenset().union(*fs) if fs else frozenset()
        if covered != frozenset().union(*comps) if comps else covered:
            raise CubulationError(f"factors at {v!r} do not cover the components of G - St({v})")
        for f in fs:
            if not f or any(c & f and not c <= f for c in comps):
                raise CubulationError(f"factor at {v!r} is not a nonempty union of components")
    dist = distance_table(G)
    hs: List[Halfspace] = []
    for v in sorted(factors):
        hs += _wall_halfspaces(G, v, [frozenset(f) for f in factors[v]])
    n = len(hs)

    def d(a, b):
        return dist[a.base].get(b.base, float("inf"))

    order = [[d(a, b) != 1 and a.extent <= b.extent for b in hs] for a in hs]
    compat = [[d(a, b) == 1 or not (a.extent & b.extent) <= star(G, a.base) for b in hs] for a in hs]
    P = Pocset(G, tuple(hs), order, compat, dist, {v: tuple(map(frozenset, fs)) for v, fs in factors.items()})
    bad = pocset_violations(P)
    if bad:
        raise CubulationError("pocset axioms fail: " + "; ".join(bad[:5]))
    return P


def build_pocset(G: SimplicialGraph, order=None) -> Pocset:
    """Pocset of all walls at the non-prime vertices of a type II graph."""
    if not is_type_II(G):
        raise NotTypeII("the wall construction is only valid for type II graphs")
    factors = {}
    for v, rec in prime_partitions(G, order).items():
        if rec.d > 1:
            factors[v] = [rec.factor_vertices(m) for m in range(1, rec.d + 1)]
    return pocset_from_factors(G, factors)


def pocset_violations(P: Pocset) -> List[str]:
    """Every failure of the pocset axioms and of the compatibility identity."""
    bad = []
    n = len(P)
    for i in range(n):
        if not P.leq(i, i):
            bad.append(f"{P.halfspaces[i].id} not reflexive")
        c = P.complement(i)
        if P.leq(i, c) or P.leq(c, i):
            bad.append(f"{P.halfspaces[i].id} comparable with its complement")
        for j in range(n):
            if i != j and P.leq(i, j) and P.leq(j, i):
                bad.append(f"antisymmetry {P.halfspaces[i].id} {P.halfspaces[j].id}")
            if P.leq(i, j) and not P.leq(P.complement(j), c):
                bad.append(f"complement does not reverse {P.halfspaces[i].id} <= {P.halfspaces[j].id}")
            far = P.base_distance(i, j) != 1
            incompatible = not P.compatible(i, j)
            if incompatible != (far and P.leq(i, P.complement(j))):
                bad.append(f"compatibility identity {P.halfspaces[i].id} {P.halfspaces[j].id}")
            if incompatible != (far and P.leq(j, c)):
                bad.append(f"compatibility identity (swapped) {P.halfspaces[i].id} {P.halfspaces[j].id}")
            if P.leq(i, j):
                for k in range(n):
                    if P.leq(j, k) and not P.leq(i, k):
                        bad.append(f"transitivity {i} {j} {k}")
    # two walls cross (no side of one is comparable with a side of the other)
    # exactly when their bases are adjacent
    walls = P.walls
    for (a1, b1), (a2, b2) in combinations(walls, 2):
        crossing = not any(P.leq(h, k) or P.leq(k, h) for h in (a1, b1) for k in (a2, b2))
        if crossing != (P.base_distance(a1, a2) == 1):
            bad.append(f"walls {P.halfspaces[a1].id} and {P.halfspaces[a2].id}: crossing={crossing} "
                       f"but base distance {P.base_distance(a1, a2)}")
    return bad


# ----------------------------------------------------------- ultrafilters


def is_ultrafilter(P: Pocset, U: Iterable[int]) -> bool:
    U = frozenset(U)
    for a, b in P.walls:
        if (a in U) == (b in U):
            return False
    if len(U) != len(P.walls):
        return False
    return all(P.compatible(i, j) for i, j in combinations(sorted(U), 2))


def is_upward_closed(P: Pocset, U: Iterable[int]) -> bool:
    U = frozenset(U)
    return all(j in U for i in U for j in range(len(P)) if P.leq(i, j))


def minimal_elements(P: Pocset, U: Ultrafilter) -> List[int]:
    return [h for h in sorted(U) if not any(P.lt(k, h) for k in U)]


def flip(P: Pocset, U: Ultrafilter, h: int) -> Ultrafilter:
    return (U - {h}) | {P.complement(h)}


def _tight(G: SimplicialGraph, E: set, outside: Iterable[str]) -> bool:
    for u in outside:
        rest = E - star(G, u)
        if not rest:
            continue
        hits = [c for c in components_minus(G, star(G, u)) if c & rest]
        if len(hits) > 1:
            return False
    return True


def seed_ultrafilter(P: Pocset, simplex: Sequence[str] = ()) -> Ultrafilter:
    """An ultrafilter whose halfspaces all contain the given simplex.

    Wall bases are added to the simplex one at a time so that each
    intermediate set stays tight: for every base not yet added, what has been
    added so far (minus its star) sits in one component of ``G - St(base)``.
    Each base then picks, in every one of its walls, the side containing that
    component.
    """
    G = P.graph
    bases = sorted({h.base for h in P.halfspaces})
    E = set(simplex)
    order: List[str] = [b for b in sorted(simplex) if b in bases]
    todo = [b for b in bases if b not in E]
    while todo:
        for cand in todo:
            rest = [b for b in todo if b != cand]
            if _tight(G, E | {cand}, rest):
                break
        else:
            raise CubulationError("no tight extension exists")
        order.append(cand)
        E.add(cand)
        todo.remove(cand)

    chosen = set()
    placed: set = set(simplex)
    for u in order:
        rest = placed - star(G, u)
        comps = components_minus(G, star(G, u))
        if rest:
            hits = [c for c in comps if c & rest]
            if len(hits) != 1:
                raise CubulationError(f"filtration not tight at {u!r}")
            target = hits[0]
        else:
            target = comps[0]
        for i, h in enumerate(P.halfspaces):
            if h.base == u and target <= h.extent:
                chosen.add(i)
        placed.add(u)
    U = frozenset(chosen)
    if not is_ultrafilter(P, U):
        raise CubulationError("seed is not an ultrafilter")
    return U


def _uf_key(P: Pocset, U: Ultrafilter):
    return tuple(0 if a in U else 1 for a, _ in P.walls)


def ultrafilters(P: Pocset) -> List[Ultrafilter]:
    """All ultrafilters, by breadth-first flipping of minimal elements from a seed."""
    first = P.graph.vertices[0] if P.graph.vertices else None
    seed = seed_ultrafilter(P, [first] if first is not None else [])
    seen = {seed}
    queue = deque([seed])
    while queue:
        U = queue.popleft()
        for h in minimal_elements(P, U):
            V = flip(P, U, h)
            if V not in seen:
                if not is_ultrafilter(P, V):
                    raise CubulationError("flip of a minimal element left the ultrafilter set")
                seen.add(V)
                queue.append(V)
    return sorted(seen, key=lambda U: _uf_key(P, U))


# ------------------------------------------------------------ dual complex


@dataclass
class CubeComplex:
    pocset: Pocset
    vertices: List[Ultrafilter]
    edges: List[Tuple[int, int, int]]  # (x, y, wall index)
    squares: List[Tuple[FrozenSet[int], Tuple[int, int]]]
    phi: List[VertexSet]

    def neighbours(self) -> Dict[int, List[int]]:
        nb: Dict[int, List[int]] = {i: [] for i in range(len(self.vertices))}
        for x, y, _ in self.edges:
            nb[x].append(y)
            nb[y].append(x)
        return nb

    def wall_base(self, w: int) -> str:
        return self.pocset.halfspaces[2 * w].base

    def to_dict(self) -> dict:
        hs = self.pocset.halfspaces
        walls = self.pocset.walls
        return {
            "halfspaces": [h.to_dict() for h in hs],
            "walls": [{"id": w, "halfspaces": [hs[a].id, hs[b].id]} for w, (a, b) in enumerate(walls)],
            "ultrafilters": [sorted(hs[i].id for i in U) for U in self.vertices],
            "edges": [{"vertices": [x, y], "wall": w} for x, y, w in self.edges],
            "squares": [{"vertices": sorted(s), "walls": list(ws)} for s, ws in self.squares],
            "phi": [sorted(p) for p in self.phi],
        }


def phi(P: Pocset, U: Ultrafilter) -> VertexSet:
    out = P.graph.vertex_set
    for i in U:
        out = out & P.halfspaces[i].extent
    return out


def _bfs(nb: Mapping[int, List[int]], s: int) -> Dict[int, int]:
    dist = {s: 0}
    q = deque([s])
    while q:
        u = q.popleft()
        for w in nb[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                q.append(w)
    return dist


def median_violations(nb: Mapping[int, List[int]]) -> List[Tuple[int, int, int]]:
    """Vertex triples without exactly one median."""
    n = len(nb)
    D = [_bfs(nb, i) for i in range(n)]
    bad = []
    for a, b, c in combinations(range(n), 3):
        count = 0
        for m in range(n):
            if (D[a][m] + D[m][b] == D[a][b] and D[b][m] + D[m][c] == D[b][c]
                    and D[a][m] + D[m][c] == D[a][c]):
                count += 1
        if count != 1:
            bad.append((a, b, c))
    return bad


def dual_complex(P: Pocset, check: bool = True) -> CubeComplex:
    verts = ultrafilters(P)
    index = {U: i for i, U in enumerate(verts)}
    edges = []
    squares = {}
    for x, U in enumerate(verts):
        mins = minimal_elements(P, U)
        for h in mins:
            y = index[flip(P, U, h)]
            if x < y:
                edges.append((x, y, h // 2))
        for h1, h2 in combinations(mins, 2):
            V = flip(P, U, h1)
            if h2 in minimal_elements(P, V):
                W = flip(P, V, h2)
                quad = frozenset((x, index[V], index[flip(P, U, h2)], index[W]))
                squares[quad] = tuple(sorted((h1 // 2, h2 // 2)))
    edges.sort()
    sq = sorted(squares.items(), key=lambda kv: sorted(kv[0]))
    X = CubeComplex(P, verts, edges, sq, [phi(P, U) for U in verts])
    if check:
        problems = complex_violations(X)
        if problems:
            raise CubulationError("dual complex invariants fail: " + "; ".join(problems[:5]))
    return X


def complex_violations(X: CubeComplex, median: bool = True) -> List[str]:
    P = X.pocset
    bad = []
    nb = X.neighbours()
    if X.vertices and len(_bfs(nb, 0)) != len(X.vertices):
        bad.append("1-skeleton disconnected")
    for i, p in enumerate(X.phi):
        if not p:
            bad.append(f"empty phi at vertex {i}")
    if X.vertices and frozenset().union(*X.phi) != P.graph.vertex_set:
        bad.append("phi sets do not cover the graph")
    for _, (w1, w2) in X.squares:
        if P.distances[X.wall_base(w1)].get(X.wall_base(w2)) != 1:
            bad.append(f"walls {w1},{w2} cross but their bases are not adjacent")
    if median:
        m = median_violations(nb)
        if m:
            bad.append(f"{len(m)} vertex triples without a unique median")
    return bad


# ------------------------------------------------------------ prime graph


@dataclass
class Stage:
    """One round of the wall construction: its input graph, complex and output."""
    graph: SimplicialGraph
    complex: CubeComplex
    output: SimplicialGraph

    @property
    def index(self) -> int:
        return len(self.complex.vertices)


@dataclass
class PrimeGraphResult:
    prime_graph: SimplicialGraph
    index: int
    stages: List[Stage]

    @property
    def complex(self) -> CubeComplex:
        """Dual complex of the first round (the one built on the input graph)."""
        return self.stages[0].complex

    @property
    def phi_table(self) -> Dict[int, VertexSet]:
        return dict(enumerate(self.complex.phi))

    def to_dict(self) -> dict:
        from .graph import graph_to_dict
        return {
            "prime_graph": graph_to_dict(self.prime_graph),
            "index": self.index,
            "phi": {str(k): sorted(v) for k, v in self.phi_table.items()},
            "rounds": [{"vertices": len(st.graph), "walls": len(st.complex.pocset.walls), "index": st.index}
                       for st in self.stages],
        }


def _one_round(G: SimplicialGraph, order, check: bool) -> Stage:
    P = build_pocset(G, order)
    X = dual_complex(P, check=check)
    base = induced_subgraph(G, X.phi[0])
    if check:
        seen = {X.phi[0]}
        for p in X.phi[1:]:
            if p in seen:
                continue
            seen.add(p)
            if graph_isomorphic(base, induced_subgraph(G, p)) is None:
                raise CubulationError("phi sets span non-isomorphic graphs")
    return Stage(G, X, base)


def prime_graph(G: SimplicialGraph, order=None, check: bool = True) -> PrimeGraphResult:
    """The prime graph of a type II graph together with the commensurability index.

    One round takes the full subgraph on ``Φ(x)`` for the first vertex ``x``
    of the dual complex (every other vertex must give an isomorphic graph).
    Each round embeds the group as a special subgroup of finite index in the
    next.  A round can leave a vertex non-prime when two of its branches are
    QII only after the cut (the branch test is a boundary-fixing isomorphism),
    so rounds repeat until the graph is prime; the index is the product.
    Every round with a wall removes vertices, so this stops.
    """
    stages = [_one_round(G, order, check)]
    while not is_prime_raag(stages[-1].output):
        nxt = _one_round(stages[-1].output, order, check)
        if len(nxt.output) >= len(nxt.graph):
            raise CubulationError("a round without walls left a non-prime graph")
        stages.append(nxt)
    index = 1
    for st in stages:
        index *= st.index
    log.debug("prime graph with %d vertices, index %d after %d rounds",
              len(stages[-1].output), index, len(stages))
    return PrimeGraphResult(stages[-1].output, index, stages)
