"""Independent brute-force oracles used to cross-check the library.

Nothing here calls the algorithm it is checking; the only shared pieces are
the graph container and the pocset's raw halfspace extents.
"""
from __future__ import annotations

from collections import deque
from itertools import product
from typing import Dict, FrozenSet, Iterable, List, Set, Tuple

Letter = Tuple[str, int]
Word = Tuple[Letter, ...]


# ---------------------------------------------------------------- words


def closure(G, w: Word) -> Set[Word]:
    """Every word reachable from ``w`` by swapping adjacent commuting letters
    and deleting adjacent inverse pairs."""
    seen = {w}
    q = deque([w])
    while q:
        u = q.popleft()
        for i in range(len(u) - 1):
            a, b = u[i], u[i + 1]
            if a[0] == b[0] and a[1] == -b[1]:
                nxt = u[:i] + u[i + 2:]
            elif a != b and G.adjacent(a[0], b[0]):
                nxt = u[:i] + (b, a) + u[i + 2:]
            else:
                continue
            if nxt not in seen:
                seen.add(nxt)
                q.append(nxt)
    return seen


def geodesics(G, w: Word) -> FrozenSet[Word]:
    words = closure(G, w)
    n = min(len(u) for u in words)
    return frozenset(u for u in words if len(u) == n)


class GeodesicOracle:
    """Geodesic representatives of elements, built letter by letter.

    For an element g with geodesic set S and a letter x: if some word of S
    ends in x^-1 then gx is shorter and its geodesics are those words with
    the last letter removed; otherwise gx is longer and its geodesics are
    the words of S with x inserted at any position from which it commutes
    with everything to its right.
    """

    def __init__(self, G):
        self.G = G

    def extend(self, S: FrozenSet[Word], x: Letter) -> FrozenSet[Word]:
        inv = (x[0], -x[1])
        shorter = frozenset(w[:-1] for w in S if w and w[-1] == inv)
        if shorter:
            return shorter
        adj = self.G.adjacency[x[0]]
        out = set()
        for w in S:
            i = len(w)
            while True:
                out.add(w[:i] + (x,) + w[i:])
                if i == 0 or (w[i - 1][0] not in adj and w[i - 1] != x):
                    break
                i -= 1
        return frozenset(out)


def all_words(letters: List[Letter], max_len: int) -> Iterable[Word]:
    for n in range(max_len + 1):
        yield from product(letters, repeat=n)


def ball_bfs(G, r: int, mul) -> Set[Word]:
    """Cayley ball by BFS over an arbitrary multiplication ``mul(g, x)``."""
    letters = [(v, e) for v in G.vertices for e in (1, -1)]
    seen = {(): 0}
    q = deque([()])
    while q:
        g = q.popleft()
        if seen[g] == r:
            continue
        for x in letters:
            h = mul(g, x)
            if h not in seen:
                seen[h] = seen[g] + 1
                q.append(h)
    return set(seen)


# -------------------------------------------------------------- pocsets


def oracle_leq(P, i: int, j: int) -> bool:
    """h_i <= h_j straight from the definition: same side of the same wall, or
    nested cuts at one base, or far apart bases with nested extents."""
    hi, hj = P.halfspaces[i], P.halfspaces[j]
    if hi.base == hj.base:
        if hi.side != hj.side:
            return False
        return hi.cut <= hj.cut if hi.side == "low" else hi.cut >= hj.cut
    near = hj.base in P.graph.adjacency[hi.base]
    return not near and hi.extent <= hj.extent


def ultrafilters_backtrack(P) -> List[FrozenSet[int]]:
    """Every choice of one halfspace per wall that is upward closed."""
    n = len(P.halfspaces)
    up = {i: [j for j in range(n) if oracle_leq(P, i, j)] for i in range(n)}
    found: List[FrozenSet[int]] = []

    def go(k: int, chosen: FrozenSet[int]):
        if k == len(P.walls):
            if all(j in chosen for i in chosen for j in up[i]):
                found.append(chosen)
            return
        for h in P.walls[k]:
            # prune: a halfspace already chosen cannot force the other side of this wall
            if any(h ^ 1 in up[c] for c in chosen) or any(c ^ 1 in up[h] for c in chosen):
                continue
            go(k + 1, chosen | {h})

    go(0, frozenset())
    return found


def medians(nb: Dict[int, List[int]]) -> List[Tuple[int, int, int]]:
    """Triples of vertices whose median set is not a single vertex (graph BFS from scratch)."""
    n = len(nb)
    D = []
    for s in range(n):
        d = {s: 0}
        q = deque([s])
        while q:
            u = q.popleft()
            for w in nb[u]:
                if w not in d:
                    d[w] = d[u] + 1
                    q.append(w)
        D.append(d)
    bad = []
    for a in range(n):
        for b in range(a + 1, n):
            for c in range(b + 1, n):
                m = [x for x in range(n)
                     if D[a][x] + D[x][b] == D[a][b] and D[b][x] + D[x][c] == D[b][c]
                     and D[a][x] + D[x][c] == D[a][c]]
                if len(m) != 1:
                    bad.append((a, b, c))
    return bad


# --------------------------------------------------------------- domains


def convex_by_ball(G, S: Set[Word], mul, length) -> bool:
    """Convexity by scanning the ball: x lies between u and w iff d(u,x)+d(x,w) = d(u,w)."""
    r = max(length(w) for w in S) + 1
    B = ball_bfs(G, r, mul)
    inv = lambda w: tuple((a, -e) for a, e in reversed(w))
    for u in S:
        for w in S:
            duw = length(inv(u) + w)
            for x in B:
                if x not in S and length(inv(u) + x) + length(inv(x) + w) == duw:
                    return False
    return True


def double_coset_search(G, g: Word, A, B, mul, max_len: int) -> bool:
    """Is g = a b with a in <A>, b in <B>?  Searches a over words in A of length <= max_len."""
    target = mul((), g)
    lettersA = [(v, e) for v in sorted(A) for e in (1, -1)]
    setB = set(B)
    seen = set()
    for a in all_words(lettersA, max_len):
        a_el = mul((), a)
        if a_el in seen:
            continue
        seen.add(a_el)
        inv_a = tuple((x, -e) for x, e in reversed(a_el))
        rest = mul(inv_a, target)
        if all(x in setB for x, _ in rest):
            return True
    return False


def normal_form_sweep(G, max_len: int, normal_form, key) -> Tuple[int, List[Word]]:
    """Check ``normal_form`` on every word of length <= ``max_len``.

    Words are walked as a trie; each node carries the oracle's geodesic set
    of its element, so a word costs one oracle extension plus the call under
    test.  The normal form must be a geodesic of the same element and the
    least one under ``key`` (a letter -> rank map).  Geodesic sets are cached
    per element up to depth ``max_len - 1``; leaves are not stored.
    Returns the number of words checked and the ones that failed.
    """
    letters = [(v, e) for v in G.vertices for e in (1, -1)]
    orc = GeodesicOracle(G)
    cache: Dict[Tuple[FrozenSet[Word], Letter], FrozenSet[Word]] = {}
    least: Dict[FrozenSet[Word], Word] = {}
    bad: List[Word] = []
    count = 0

    def lex_min(S):
        m = least.get(S)
        if m is None:
            m = min(S, key=lambda w: [key[x] for x in w])
        return m

    stack = [((), frozenset([()]))]
    while stack:
        word, S = stack.pop()
        count += 1
        nf = normal_form(G, word)
        if nf not in S or nf != lex_min(S):
            bad.append(word)
        if len(word) == max_len:
            continue
        deep = len(word) + 1 < max_len
        for x in letters:
            T = cache.get((S, x))
            if T is None:
                T = orc.extend(S, x)
                if deep:
                    cache[(S, x)] = T
                    least[T] = min(T, key=lambda w: [key[y] for y in w])
            stack.append((word + (x,), T))
    return count, bad
