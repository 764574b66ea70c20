"""Words, normal forms and small convex pieces of the universal cover X(Γ).

Elements of G(Γ) are tuples of letters ``(label, ±1)``.  The normal form of
an element is its shortlex-least geodesic spelling, with letters ordered by
vertex label and a generator before its inverse.  Vertices of X(Γ) are group
elements, so a convex domain is just a finite set of normal forms.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from .graph import GraphError, SimplicialGraph, graph_isomorphic, star

Letter = Tuple[str, int]
Word = Tuple[Letter, ...]
EMPTY: Word = ()


class GeometryError(ValueError):
    pass


class BallTooLarge(GeometryError):
    pass


# ------------------------------------------------------------------ words

_TOKEN = re.compile(r"^(?P<label>[^\s^]+?)(?P<inv>\^-1|-)?$")


def parse_letter(token: str) -> Letter:
    """``"a"`` is the generator, ``"a^-1"`` or ``"a-"`` its inverse."""
    m = _TOKEN.match(token.strip())
    if not m:
        raise GeometryError(f"bad letter {token!r}")
    return (m.group("label"), -1 if m.group("inv") else 1)


def parse_word(tokens) -> Word:
    if isinstance(tokens, str):
        tokens = tokens.split()
    return tuple(parse_letter(t) for t in tokens)


def format_word(w: Word) -> List[str]:
    return [a if e == 1 else f"{a}^-1" for a, e in w]


def word_str(w: Word) -> str:
    return " ".join(format_word(w)) or "e"


def inverse(w: Word) -> Word:
    return tuple((a, -e) for a, e in reversed(w))


def support(w: Word) -> FrozenSet[str]:
    return frozenset(a for a, _ in w)


@lru_cache(maxsize=64)
def _tables(G: SimplicialGraph):
    """Per-graph lookup tables: letter sort keys and neighbour sets."""
    key = {}
    for i, v in enumerate(G.vertices):
        key[(v, 1)] = 2 * i
        key[(v, -1)] = 2 * i + 1
    return key, G.adjacency


def _check_letters(G: SimplicialGraph, w: Word) -> None:
    key = _tables(G)[0]
    for x in w:
        if x not in key:
            raise GeometryError(f"unknown letter {x!r}")


def _letter_key(G: SimplicialGraph):
    return _tables(G)[0].__getitem__


def free_reduce(G: SimplicialGraph, w: Word) -> Word:
    """Cancel ``x^e .. x^-e`` pairs whose in-between letters all commute with x.

    The output is geodesic: a RAAG word admits no further such cancellation
    exactly when it has minimal length.
    """
    adj = _tables(G)[1]
    out: List[Letter] = []
    for a, e in w:
        na = adj[a]
        j = len(out) - 1
        while j >= 0:
            b = out[j][0]
            if b == a or b not in na:
                break
            j -= 1
        if j >= 0 and out[j] == (a, -e):
            del out[j]
        else:
            out.append((a, e))
    return tuple(out)


def _front_candidates(G: SimplicialGraph, w: Sequence[Letter]) -> List[int]:
    """Positions whose letter can be commuted to the front of ``w``."""
    adj = _tables(G)[1]
    out = []
    for i, (a, _) in enumerate(w):
        na = adj[a]
        if all(w[k][0] in na for k in range(i)):
            out.append(i)
    return out


def _lex_least(G: SimplicialGraph, w: Word) -> Word:
    key, adj = _tables(G)
    rest = list(w)
    out = []
    while rest:
        best = 0
        best_key = key[rest[0]]
        for i in range(1, len(rest)):
            k = key[rest[i]]
            if k < best_key:
                na = adj[rest[i][0]]
                if all(rest[m][0] in na for m in range(i)):
                    best, best_key = i, k
        out.append(rest.pop(best))
    return tuple(out)


def normal_form(G: SimplicialGraph, w: Iterable[Letter]) -> Word:
    w = tuple(w)
    _check_letters(G, w)
    return _lex_least(G, free_reduce(G, w))


def multiply(G: SimplicialGraph, *words: Word) -> Word:
    return normal_form(G, tuple(x for w in words for x in w))


def word_length(G: SimplicialGraph, w: Word) -> int:
    return len(free_reduce(G, w))


def element_distance(G: SimplicialGraph, u: Word, w: Word) -> int:
    return word_length(G, inverse(u) + w)


def left_divisors(G: SimplicialGraph, w: Word) -> Set[Word]:
    """Normal forms of all ``p`` with ``|p| + |p^-1 w| = |w|``.

    These are the vertices on geodesics from the identity to ``w``.
    """
    w = normal_form(G, w)
    seen: Set[Word] = set()
    out: Set[Word] = set()

    def walk(prefix: Word, rest: Tuple[Letter, ...]):
        key = (prefix, rest)
        if key in seen:
            return
        seen.add(key)
        out.add(prefix)
        for i in _front_candidates(G, rest):
            walk(normal_form(G, prefix + (rest[i],)), rest[:i] + rest[i + 1:])

    walk(EMPTY, w)
    return out


def generators(G: SimplicialGraph) -> List[Letter]:
    return [(v, e) for v in G.vertices for e in (1, -1)]


def element_key(G: SimplicialGraph):
    key = _letter_key(G)
    return lambda w: (len(w), [key(x) for x in w])


# ------------------------------------------------------------------- balls


@dataclass
class Ball:
    radius: int
    elements: List[Word]
    edges: List[Tuple[int, int]]

    def __len__(self) -> int:
        return len(self.elements)


def ball(G: SimplicialGraph, r: int, cap: int = 200_000) -> Ball:
    """Elements of word length at most ``r`` and the Cayley edges between them."""
    if r < 0:
        raise GeometryError("radius must be non-negative")
    gens = generators(G)
    dist = {EMPTY: 0}
    queue = deque([EMPTY])
    while queue:
        g = queue.popleft()
        if dist[g] == r:
            continue
        for s in gens:
            h = multiply(G, g, (s,))
            if h not in dist:
                dist[h] = dist[g] + 1
                if len(dist) > cap:
                    raise BallTooLarge(f"ball of radius {r} exceeds {cap} elements")
                queue.append(h)
    elements = sorted(dist, key=element_key(G))
    index = {g: i for i, g in enumerate(elements)}
    edges = set()
    for g in elements:
        for v in G.vertices:
            h = multiply(G, g, ((v, 1),))
            if h in index:
                edges.add((index[g], index[h]))
    return Ball(r, elements, sorted(edges))


# ------------------------------------------------------------- convexity


def is_convex(G: SimplicialGraph, S: Iterable[Word]) -> bool:
    """Interval closure: every vertex on a geodesic between two members is a member."""
    S = {normal_form(G, x) for x in S}
    for u, w in combinations(sorted(S, key=element_key(G)), 2):
        g = multiply(G, inverse(u), w)
        for p in left_divisors(G, g):
            if multiply(G, u, p) not in S:
                return False
    return True


@dataclass(frozen=True)
class ConvexDomain:
    elements: FrozenSet[Word]
    ambient: SimplicialGraph

    @classmethod
    def of(cls, G: SimplicialGraph, words: Iterable[Iterable[Letter]]) -> "ConvexDomain":
        elems = frozenset(normal_form(G, w) for w in words)
        if not elems:
            raise GeometryError("empty domain")
        if not is_convex(G, elems):
            raise GeometryError("domain is not convex")
        return cls(elems, G)

    def sorted(self) -> List[Word]:
        return sorted(self.elements, key=element_key(self.ambient))


def segment(G: SimplicialGraph, v: str, n: int) -> ConvexDomain:
    """``{e, v, v^2, .., v^(n-1)}``."""
    return ConvexDomain.of(G, [((v, 1),) * k for k in range(n)])


# ---------------------------------------------------------- special subgroups


def in_standard_subgroup(G: SimplicialGraph, g: Word, labels: Iterable[str]) -> bool:
    return support(normal_form(G, g)) <= frozenset(labels)


def parallel(G: SimplicialGraph, x1: Word, x2: Word, v: str) -> bool:
    """Whether the standard geodesics ``x1<v>`` and ``x2<v>`` are parallel."""
    return in_standard_subgroup(G, multiply(G, inverse(x1), x2), star(G, v))


def in_double_coset(G: SimplicialGraph, g: Word, A: Iterable[str], B: Iterable[str]) -> bool:
    """Whether ``g ∈ <A><B>``.

    A witness ``g = h k`` can always be shortened until ``h`` is a left
    divisor of ``g``, so only those are tried.
    """
    A, B = frozenset(A), frozenset(B)
    for h in left_divisors(G, g):
        if support(h) <= A and support(multiply(G, inverse(h), g)) <= B:
            return True
    return False


@dataclass(frozen=True)
class GeodesicClass:
    label: str
    basepoint: Word
    members: Tuple[Word, ...]
    count: int

    @property
    def name(self) -> str:
        if not self.basepoint:
            return self.label
        return f"{self.label}@{'.'.join(format_word(self.basepoint))}"

    @property
    def generator(self) -> Word:
        return self.basepoint + ((self.label, 1),) + inverse(self.basepoint)


def geodesic_classes(G: SimplicialGraph, K: ConvexDomain) -> List[GeodesicClass]:
    """Parallelism classes of standard geodesics meeting ``K``.

    ``count`` is the number of vertices of K on the class's representative
    geodesic.
    """
    elems = K.sorted()
    out = []
    for v in G.vertices:
        st = star(G, v)
        groups: List[List[Word]] = []
        for x in elems:
            for grp in groups:
                if in_standard_subgroup(G, multiply(G, inverse(grp[0]), x), st):
                    grp.append(x)
                    break
            else:
                groups.append([x])
        for grp in groups:
            rep = grp[0]
            counts = {sum(1 for y in elems if in_standard_subgroup(G, multiply(G, inverse(x), y), [v]))
                      for x in grp}
            if len(counts) != 1:
                raise GeometryError(f"parallel {v}-geodesics meet the domain in different lengths")
            out.append(GeodesicClass(v, rep, tuple(grp), counts.pop()))
    return out


@dataclass
class SpecialSubgroupResult:
    generators: List[Tuple[Word, int]]
    defining_graph: SimplicialGraph
    index: int
    classes: List[GeodesicClass]

    def to_dict(self) -> dict:
        from .graph import graph_to_dict
        return {
            "generators": [{"conjugator": format_word(c.basepoint), "label": c.label,
                            "word": format_word(w), "power": n}
                           for (w, n), c in zip(self.generators, self.classes)],
            "defining_graph": graph_to_dict(self.defining_graph),
            "index": self.index,
        }


def special_subgroup(G: SimplicialGraph, K: ConvexDomain) -> SpecialSubgroupResult:
    if not K.elements:
        raise GeometryError("empty domain")
    if not is_convex(G, K.elements):
        raise GeometryError("domain is not convex")
    classes = geodesic_classes(G, K)
    names = [c.name for c in classes]
    edges = []
    for i, j in combinations(range(len(classes)), 2):
        c1, c2 = classes[i], classes[j]
        if not G.adjacent(c1.label, c2.label):
            continue
        g = multiply(G, inverse(c1.basepoint), c2.basepoint)
        if in_double_coset(G, g, star(G, c1.label), star(G, c2.label)):
            edges.append((names[i], names[j]))
    gamma = SimplicialGraph.from_edges(edges, vertices=names)
    gens = [(normal_form(G, c.generator), c.count) for c in classes]
    return SpecialSubgroupResult(gens, gamma, len(K.elements), classes)


def power_generator(G: SimplicialGraph, gen: Word, n: int) -> Word:
    return normal_form(G, gen * n)


def tiling_violations(G: SimplicialGraph, K: ConvexDomain, result: SpecialSubgroupResult,
                      length: int = 2, cover_radius: int = 1) -> List[str]:
    """Check that K is a fundamental domain on a small scale.

    Translates of K by distinct products of at most ``length`` generators
    (and inverses) must be disjoint, and every element of the ball of radius
    ``cover_radius`` must lie in one of them.
    """
    gens = []
    for w, n in result.generators:
        p = power_generator(G, w, n)
        gens += [p, inverse(p)]
    products = {EMPTY}
    frontier = {EMPTY}
    for _ in range(length):
        frontier = {multiply(G, g, s) for g in frontier for s in gens}
        products |= frontier
    problems = []
    owner: Dict[Word, Word] = {}
    for g in sorted(products, key=element_key(G)):
        for x in K.elements:
            y = multiply(G, g, x)
            if y in owner and owner[y] != g:
                problems.append(f"translates by {word_str(owner[y])} and {word_str(g)} overlap at {word_str(y)}")
            owner[y] = g
    for y in ball(G, cover_radius).elements:
        if y not in owner:
            problems.append(f"{word_str(y)} not covered")
    return problems


# ----------------------------------------------------------- domain search


def connected_domains(G: SimplicialGraph, size: int, cap: int = 100_000) -> Iterator[FrozenSet[Word]]:
    """Connected vertex sets of X(Γ) containing the identity, up to ``size`` vertices."""
    gens = generators(G)
    start = frozenset([EMPTY])
    seen = {start}
    layer = [start]
    yield start
    for _ in range(size - 1):
        nxt = []
        for S in layer:
            border = {multiply(G, x, (s,)) for x in S for s in gens} - S
            for y in sorted(border, key=element_key(G)):
                T = S | {y}
                if T not in seen:
                    seen.add(T)
                    if len(seen) > cap:
                        raise BallTooLarge(f"more than {cap} candidate domains")
                    nxt.append(T)
                    yield T
        layer = nxt


def convex_domains(G: SimplicialGraph, size: int, cap: int = 100_000) -> Iterator[ConvexDomain]:
    for S in connected_domains(G, size, cap):
        if is_convex(G, S):
            yield ConvexDomain(S, G)
