"""Property tests on random small graphs."""
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from oracles import geodesics, ultrafilters_backtrack
from raagqi.classify import classify, is_type_II, is_weak_type_I, is_weak_type_II
from raagqi.cubulation import build_pocset, complex_violations, dual_complex, pocset_violations, prime_graph, ultrafilters
from raagqi.geometry import normal_form, word_length
from raagqi.graph import SimplicialGraph, graph_isomorphic
from raagqi.fixtures import cycle, glue_along_closed_star
from raagqi.prime import is_prime_raag

SETTINGS = settings(max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def graphs(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    labels = [f"v{i}" for i in range(n)]
    pairs = [(labels[i], labels[j]) for i in range(n) for j in range(i + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return SimplicialGraph.from_edges([p for p, keep in zip(pairs, mask) if keep], vertices=labels)


@st.composite
def graph_and_word(draw):
    G = draw(graphs(1, 5))
    letters = [(v, e) for v in G.vertices for e in (1, -1)]
    w = tuple(draw(st.lists(st.sampled_from(letters), max_size=7)))
    return G, w


@st.composite
def graph_and_permutation(draw):
    G = draw(graphs())
    perm = draw(st.permutations(list(G.vertices)))
    return G, dict(zip(G.vertices, ["p" + v for v in perm]))


@SETTINGS
@given(graphs())
def test_class_hierarchy(G):
    # is_weak_type_I raises if its two formulations ever disagree
    w1 = is_weak_type_I(G)
    assert not w1 or is_weak_type_II(G)
    assert not is_type_II(G) or is_weak_type_II(G)


@SETTINGS
@given(graph_and_permutation())
def test_classification_relabel_invariant(data):
    G, m = data
    a, b = classify(G), classify(G.relabel(m))
    assert (a.weak_type_II, a.type_II, a.weak_type_I) == (b.weak_type_II, b.type_II, b.weak_type_I)


@SETTINGS
@given(graph_and_word())
def test_normal_form_matches_closure(data):
    G, w = data
    geo = geodesics(G, w)
    nf = normal_form(G, w)
    assert nf in geo and word_length(G, w) == len(nf)
    assert normal_form(G, nf) == nf


@settings(max_examples=300, deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])
@given(graphs(4, 9))
def test_type_II_cubulation(G):
    assume(is_type_II(G))
    P = build_pocset(G)
    assert pocset_violations(P) == []
    assert set(ultrafilters(P)) == set(ultrafilters_backtrack(P))
    X = dual_complex(P, check=False)
    assert complex_violations(X) == []
    res = prime_graph(G)
    assert is_prime_raag(res.prime_graph)
    again = prime_graph(res.prime_graph)
    assert again.index == 1 and graph_isomorphic(again.prime_graph, res.prime_graph) is not None


@st.composite
def glued_cycles(draw):
    """Cycles glued one after another along closed stars of degree-two vertices.

    Re-gluing at the previous hub with the same length is favoured, which is
    what makes vertices non-prime.
    """
    G = cycle(draw(st.integers(5, 7)), "a")
    last = None
    for step in range(draw(st.integers(1, 4))):
        hubs = [v for v in G.vertices if G.degree(v) == 2
                and not G.adjacent(*sorted(G.adjacency[v]))]
        if not hubs:
            break
        if last is not None and last[0] in hubs and draw(st.booleans()):
            v, m = last
        else:
            v, m = draw(st.sampled_from(hubs)), draw(st.integers(5, 7))
        u, w = sorted(G.adjacency[v])
        prefix = "bcdefgh"[step]
        G = glue_along_closed_star(G, v, cycle(m, prefix), f"{prefix}1",
                                   {f"{prefix}1": v, f"{prefix}2": u, f"{prefix}{m}": w})
        last = (v, m)
    return G


@settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])
@given(glued_cycles(), st.randoms(use_true_random=False))
def test_glued_cycles_cubulation(G, rnd):
    assume(is_type_II(G))
    P = build_pocset(G)
    assert pocset_violations(P) == []
    assert set(ultrafilters(P)) == set(ultrafilters_backtrack(P))
    X = dual_complex(P, check=False)
    assert complex_violations(X) == []
    res = prime_graph(G)
    assert res.stages[0].index == len(X.vertices)
    product = 1
    for stage in res.stages:
        product *= stage.index
        assert len(stage.output) <= len(stage.graph)
    assert res.index == product
    assert is_prime_raag(res.prime_graph)

    def shuffle(i, members):
        members = list(members)
        rnd.shuffle(members)
        return members

    other = prime_graph(G, order=shuffle)
    assert other.index == res.index
    assert graph_isomorphic(other.prime_graph, res.prime_graph) is not None
