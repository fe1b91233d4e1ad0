"""Certified verdicts and their independent re-checks."""

from randknot import Graph, classify, verify

graphs = {
    "K5": Graph.complete(5),
    "K6": Graph.complete(6),
    "K7": Graph.complete(7),
    "Petersen": Graph.petersen(),
    "K3,3,1": Graph.complete_multipartite(3, 3, 1),
    "Petersen + K6": Graph.petersen().disjoint_union(Graph.complete(6)),
}
for name, g in graphs.items():
    row = []
    for v in classify(g):
        assert verify(g, v)
        row.append(f"{v.property}={v.status.value}({v.certificate_kind})")
    print(f"{name:14s}", "  ".join(row))
