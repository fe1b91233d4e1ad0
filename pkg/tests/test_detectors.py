import json
import random

import pytest

from conftest import random_graph
from oracles import brute_has_minor
from randknot.detectors import (
    Status,
    Verdict,
    classify,
    classify_IK,
    classify_IL,
    classify_nonplanar,
    classify_not_n_apex,
    classify_property,
    verify,
)
from randknot.enumeration import enumerate_unlabelled
from randknot.graph import Graph
from randknot.minors import petersen_family


def test_nonplanar_examples():
    assert classify_nonplanar(Graph.complete(5)).yes
    assert classify_nonplanar(Graph.path(9)).no
    assert classify_nonplanar(Graph.star(6)).no
    v = classify_nonplanar(Graph.petersen())
    assert v.yes and verify(Graph.petersen(), v)
    v = classify_nonplanar(Graph.complete_bipartite(3, 3))
    assert v.yes and v.certificate_data["minor"] == "K3,3"


def test_il_examples():
    for g in (Graph.complete(6), Graph.petersen()):
        v = classify_IL(g)
        assert v.yes and v.certificate_kind == "PetersenMinor" and verify(g, v)
    v = classify_IL(Graph.cycle(8))
    assert v.no and verify(Graph.cycle(8), v)
    v = classify_IL(Graph.complete(5))
    assert v.no and v.certificate_kind == "ApexWitness"


def test_ik_examples():
    assert classify_IK(Graph.complete(7)).yes
    v = classify_IK(Graph.complete(6))
    assert v.no and v.certificate_kind == "ApexWitness" and len(v.certificate_data["apex_set"]) == 2
    g77 = Graph.from_edges(18, Graph.complete(18).edges()[:77])
    v = classify_IK(g77)
    assert v.yes and v.certificate_kind == "MaderBound"
    assert classify_IK(Graph.cycle(20)).no


def test_ik_clique_rule_and_unknown():
    # K7 with each edge subdivided once is not 2-apex, is IL, and has a K7 minor
    # but too few edges for Mader's bound
    k7 = Graph.complete(7)
    edges = []
    n = 7
    for u, v in k7.edges():
        edges += [(u, n), (n, v)]
        n += 1
    g = Graph.from_edges(n, edges)
    v = classify_IK(g)
    assert v.yes and v.certificate_kind == "CliqueMinor" and verify(g, v)


def test_ik_unknown_when_no_rule_applies():
    # linked, needs four apex vertices, sparse, and without a K7 minor
    g = Graph.petersen().disjoint_union(Graph.complete(6))
    v = classify_IK(g)
    assert v.status is Status.UNKNOWN and v.certificate_kind is None and verify(g, v)


def test_not_apex_examples():
    assert classify_not_n_apex(Graph.complete(7), 1).yes
    assert classify_not_n_apex(Graph.complete(7), 2).yes
    v = classify_not_n_apex(Graph.complete(6), 2)
    assert v.no and len(v.certificate_data["apex_set"]) == 2
    with pytest.raises(ValueError):
        classify_not_n_apex(Graph.complete(3), -1)


def test_order_below_seven_is_never_ik():
    for n in range(1, 7):
        for g in enumerate_unlabelled(n):
            assert classify_IK(g).no


def test_lattice_and_certificates(rng):
    for _ in range(300):
        g = random_graph(rng, rng.randint(5, 12), rng.uniform(0.2, 0.9))
        np_, il, ik, na1, na2 = classify(g)
        if ik.yes:
            assert il.yes and na2.yes
        if il.yes:
            assert np_.yes and na1.yes
        assert not (ik.yes and il.no)
        for v in (np_, il, ik, na1, na2):
            assert verify(g, v)
            if v.status is Status.UNKNOWN:
                assert v.certificate_kind is None


def test_il_exact_on_order_7():
    small = [m for m in petersen_family() if m.n <= 7]
    assert len(small) == 3
    for g in enumerate_unlabelled(7):
        expected = g.size() >= 15 and any(brute_has_minor(g, m) for m in small)
        assert classify_IL(g).yes == expected


def test_verify_rejects_tampered_certificates():
    g = Graph.complete(6)
    v = classify_not_n_apex(g, 2)
    bad = Verdict(v.property, v.status, v.certificate_kind, {"k": 2, "apex_set": [0]})
    assert not verify(g, bad)
    il = classify_IL(Graph.complete(6))
    forged = Verdict("IL", Status.YES, "PetersenMinor", {"member": il.certificate_data["member"],
                                                         "branch_sets": [[0], [1], [2], [3], [4], [4]]})
    assert not verify(g, forged)
    assert not verify(Graph.complete(8), Verdict("IK", Status.NO, "MaderBound", {}))
    assert not verify(Graph.cycle(8), Verdict("IK", Status.YES, "MaderBound", {}))


def test_verdicts_serialise():
    rec = classify_property(Graph.petersen(), "IL").to_json()
    assert json.loads(json.dumps(rec))["status"] == "CertifiedYes"
    with pytest.raises(ValueError):
        classify_property(Graph.petersen(), "knotted")
