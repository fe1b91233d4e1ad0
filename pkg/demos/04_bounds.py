"""Tail bounds for Gilbert graphs and the unlabelled counting chain."""

import math

from randknot import complement_edge_bound, exact_tail, hoeffding_bound, known_bounds, model3_chain

print("least n with ceil(N/2) >= 5n-14:", complement_edge_bound())
print("known complement bounds:", {k: v for k, v in known_bounds().items() if not callable(v)})

print("\n n    p   exact Pr[size<=5n-15]   Hoeffding")
for n in (20, 30, 40, 60):
    print(f"{n:3d}  0.5  {exact_tail(n, 0.5):.3e}             {hoeffding_bound(n, 0.5):.3e}")

r = model3_chain(106)
print(f"\nn=106: q-r={r.q - r.r} > n^2/5={106 ** 2 / 5}, q/(N-r)={r.q}/{r.N - r.r}")
for link in r.links:
    print(f"  {'ok ' if link.holds else 'BAD'} {link.name}")
final = model3_chain(200).model3_terms["log_final_term"]
print(f"n=200: log10 of the final term = {final / math.log(10):.1f}")
