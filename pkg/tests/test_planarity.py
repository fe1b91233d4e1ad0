import random

import networkx as nx
import pytest

from conftest import random_graph
from oracles import brute_has_minor
from randknot.enumeration import enumerate_unlabelled
from randknot.graph import Graph
from randknot.planarity import apex_number, apex_search, is_n_apex, is_planar

K33 = Graph.complete_bipartite(3, 3)


def test_planarity_examples():
    assert is_planar(Graph.complete(4))
    assert not is_planar(Graph.complete(5))
    assert not is_planar(K33)
    assert not is_planar(Graph.petersen())
    assert is_planar(Graph.cycle(30))


def test_agrees_with_kuratowski_minor_oracle_on_order_6():
    k5 = Graph.complete(5)
    for g in enumerate_unlabelled(6):
        assert is_planar(g) == (not brute_has_minor(g, k5) and not brute_has_minor(g, K33))


def test_agrees_with_networkx(rng):
    for _ in range(200):
        n = rng.randint(5, 25)
        g = random_graph(rng, n, rng.uniform(0.05, 0.4))
        h = nx.Graph(g.edges())
        h.add_nodes_from(range(n))
        assert is_planar(g) == nx.check_planarity(h)[0]


def test_apex_examples():
    r = is_n_apex(Graph.complete(5), 1)
    assert r and len(r.witness) == 1
    assert not is_n_apex(Graph.complete(7), 2)
    for k in range(4):
        assert not is_n_apex(Graph.complete(k + 5), k)
    r = is_n_apex(Graph.cycle(6), 0)
    assert r and r.witness == ()
    with pytest.raises(ValueError):
        apex_search(Graph.complete(3).rows, -1)


def test_witness_is_least_then_lexicographic():
    # K6 minus nothing: any two vertices work, the least pair is (0, 1)
    assert apex_search(Graph.complete(6).rows, 2) == (0, 1)
    # K5 plus a pendant vertex 0: deleting 0 does not help, deleting 1 does
    g = Graph.from_edges(6, [(0, 1)] + [(i, j) for j in range(1, 6) for i in range(1, j)])
    assert apex_search(g.rows, 1) == (1,)


def test_witness_validity_and_monotonicity(rng):
    for _ in range(120):
        n = rng.randint(5, 13)
        g = random_graph(rng, n, rng.uniform(0.3, 0.9))
        prev = False
        for k in range(4):
            r = is_n_apex(g, k)
            if r:
                assert len(r.witness) <= k and is_planar(g.delete_vertices(r.witness))
            assert not prev or r  # once apex, stays apex
            prev = bool(r)


def test_euler_consistency(rng):
    for _ in range(150):
        n = rng.randint(6, 14)
        g = random_graph(rng, n, rng.uniform(0.5, 1.0))
        for k in range(3):
            if g.size() > 3 * (n - k) - 6 + k * (n - 1):
                assert not is_n_apex(g, k)


def test_supergraph_inherits_non_apexness(rng):
    for _ in range(150):
        g = random_graph(rng, rng.randint(6, 11), rng.uniform(0.4, 0.8))
        missing = [(i, j) for j in range(g.n) for i in range(j) if not g.has_edge(i, j)]
        if not missing:
            continue
        h = g.add_edge(*rng.choice(missing))
        for k in range(3):
            if not is_n_apex(g, k):
                assert not is_n_apex(h, k)


def test_apex_number():
    assert apex_number(Graph.complete(8)) == 4
    assert apex_number(Graph.petersen()) == 2  # linked graphs are never apex
    assert apex_number(Graph.complete(9), limit=3) is None
