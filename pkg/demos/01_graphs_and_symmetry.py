"""Bitmap graphs, graph6, canonical codes and automorphism groups."""

from randknot import Graph, automorphism_count, canonical_code, is_isomorphic

p = Graph.petersen()
print("Petersen:", p, "order", p.order(), "size", p.size())
print("graph6:", p.to_graph6())

# contracting the five spokes leaves K5
g = p
for i in range(4, -1, -1):
    g = g.contract_edge(i, i + 5)
print("spokes contracted -> K5?", g == Graph.complete(5))

# codes ignore labels
shuffled = p.relabel([3, 7, 1, 9, 0, 5, 2, 8, 6, 4])
print("same code after relabelling:", canonical_code(p) == canonical_code(shuffled))
print("C6 vs 2 C3 isomorphic:", is_isomorphic(Graph.cycle(6), Graph.cycle(3).disjoint_union(Graph.cycle(3))))

for name, h in [("K4", Graph.complete(4)), ("C5", Graph.cycle(5)), ("Petersen", p), ("K3,3", Graph.complete_bipartite(3, 3))]:
    print(f"|Aut({name})| = {automorphism_count(h)}")
