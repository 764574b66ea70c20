import itertools
import random

import networkx as nx
import pytest
from networkx.algorithms.isomorphism import GraphMatcher

from raagqi import fixtures as F
from raagqi.graph import GraphError, induced_subgraph
from raagqi.prime import (
    QII_CRITERION,
    BranchDatum,
    branch_data,
    is_prime_raag,
    prime_partition,
    prime_partitions,
    qii_classes,
    qii_equivalent,
)

ALL = sorted(F.FIXTURES)


def nx_qii(G, d1, d2):
    """Boundary-fixing isomorphism via networkx: boundary vertices carry their own label as colour."""
    if d1.boundary != d2.boundary:
        return False

    def piece(d):
        H = nx.Graph()
        sub = induced_subgraph(G, d.closed)
        for v in sub.vertices:
            H.add_node(v, colour=v if v in d.boundary else "*")
        H.add_edges_from(sub.sorted_edges())
        return H

    gm = GraphMatcher(piece(d1), piece(d2), node_match=lambda a, b: a["colour"] == b["colour"])
    return gm.is_isomorphic()


@pytest.mark.parametrize("name", ALL)
def test_qii_matches_networkx_and_is_an_equivalence(name):
    G = F.get(name)
    for v in G.vertices:
        data = branch_data(G, v)
        rel = {(a, b): qii_equivalent(G, v, a, b) for a in data for b in data}
        for (a, b), val in rel.items():
            assert val == nx_qii(G, a, b)
            assert val == rel[(b, a)]
        for a, b, c in itertools.product(data, repeat=3):
            if rel[(a, b)] and rel[(b, c)]:
                assert rel[(a, c)]


def test_branch_data_examples():
    hx = branch_data(F.get("hex2"), "a1")
    assert [(sorted(d.component), sorted(d.boundary)) for d in hx] == [
        (["a3", "a4", "a5"], ["a2", "a6"]), (["b3", "b4", "b5"], ["a2", "a6"])]
    ph = branch_data(F.get("ph"), "p1")
    assert {(frozenset(d.component), frozenset(d.boundary)) for d in ph} == {
        (frozenset({"p3", "p4"}), frozenset({"p2", "p5"})),
        (frozenset({"h3", "h4", "h5"}), frozenset({"p2", "p5"}))}
    assert len(branch_data(F.get("c5"), "c1")) == 1


def test_qii_examples():
    G = F.get("hex2")
    a, b = branch_data(G, "a1")
    assert qii_equivalent(G, "a1", a, b)
    P = F.get("ph")
    x, y = branch_data(P, "p1")
    assert not qii_equivalent(P, "p1", x, y)
    assert qii_equivalent(P, "p1", x, x)
    with pytest.raises(GraphError):
        qii_equivalent(G, "a1", BranchDatum(frozenset({"a3"}), frozenset()), a)


GLUE_TUPLES = [(n, fx.expected["tuple_at_glue"]) for n, fx in sorted(F.FIXTURES.items())
               if "tuple_at_glue" in fx.expected]


@pytest.mark.parametrize("name,expected", GLUE_TUPLES, ids=[f"{n}-{e[1]}" for n, e in GLUE_TUPLES])
def test_tuple_at_glue_vertex(name, expected):
    value, _src = expected
    rec = prime_partition(F.get(name), F.GLUE_VERTEX[name])
    assert rec.tuple == value
    assert rec.criterion == QII_CRITERION


def test_hex2_partition():
    rec = prime_partition(F.get("hex2"), "a1")
    assert rec.d == 2 and not rec.is_prime
    assert rec.factor_vertices(1) == {"a3", "a4", "a5"}
    assert rec.factor_vertices(2) == {"b3", "b4", "b5"}


def test_complete_graph_vertex_is_prime():
    rec = prime_partition(F.get("k3"), "a")
    assert rec.tuple == () and rec.d == 1 and rec.is_prime


@pytest.mark.parametrize("name,prime", [("ph", True), ("ex819a", True), ("ex819b", True), ("hex2", False),
                                        ("hex3", False), ("c6", True), ("c4", False), ("c5", True)])
def test_is_prime_raag(name, prime):
    assert is_prime_raag(F.get(name)) is prime


@pytest.mark.parametrize("name", ALL)
def test_factor_balance(name):
    G = F.get(name)
    for v, rec in prime_partitions(G).items():
        assert len(rec.factors) == rec.d
        for cls in rec.classes:
            for f in rec.factors:
                assert sum(1 for m in cls.members if m in f) == len(cls.members) // rec.d
        comps = [m for f in rec.factors for m in f]
        assert sorted(map(sorted, (m.component for m in comps))) == sorted(
            map(sorted, (m.component for m in branch_data(G, v))))


@pytest.mark.parametrize("name", ALL)
def test_tuples_relabel_invariant(name):
    G = F.get(name)
    rng = random.Random(f"prime-{name}")
    for _ in range(5):
        perm = list(G.vertices)
        rng.shuffle(perm)
        m = dict(zip(G.vertices, [f"r{p}" for p in perm]))
        H = G.relabel(m)
        for v in G.vertices:
            a, b = prime_partition(G, v), prime_partition(H, m[v])
            assert a.tuple == b.tuple and a.d == b.d


def test_class_members_share_boundary():
    for name in ALL:
        G = F.get(name)
        for v in G.vertices:
            for cls in qii_classes(G, v):
                assert all(m.boundary == cls.shared_boundary for m in cls.members)
