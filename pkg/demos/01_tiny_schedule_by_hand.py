"""
A two-user, two-site network, scheduled by hand
===============================================

Small enough to enumerate everything: U = 2 users, B = 2 base stations,
Z = 1 power zone per station.  Four associations exist, and the benefit
matrix is rigged so that a greedy pass grabs the single best association
(10) and then has to settle for the leftovers, while the exact solver
sees that two medium associations (9 + 9) beat 10 + 1.
"""

import numpy as np

from cransched import (
    BenefitTensor,
    Dimensions,
    build_graph,
    decode,
    enumerate_full_cliques,
    heu_shd,
    solve_exact,
)

dims = Dimensions(num_users=2, num_bs=2, num_pz=1)

# a[u][b][z]: user 0 at BS 0 is worth 10, the cross pairings 9 each,
# user 1 at BS 1 only 1.
a = np.array([[[10.0], [9.0]], [[9.0], [1.0]]])
graph = build_graph(dims, BenefitTensor(dims=dims, a=a))

print(f"graph: {graph.num_vertices} vertices, {graph.num_edges()} edges")
print()

print("every feasible full-size schedule (one user per zone, users stay")
print("at a single site):")
for clique in enumerate_full_cliques(graph):
    members = sorted(decode(dims, v) for v in clique)
    total = sum(a[m.user, m.bs, m.pz] for m in members)
    pretty = ", ".join(f"u{m.user}@b{m.bs}" for m in members)
    print(f"  {{{pretty}}}  ->  {total:g}")
print()

greedy = heu_shd(graph)
exact = solve_exact(graph)

print(f"greedy picks the 10 first and finishes at {greedy.weight:g}")
for entry in greedy.schedule.sorted_entries():
    print(f"  user {entry.user} -> BS {entry.bs}, zone {entry.pz}")

print(f"exact search finds {exact.weight:g} ({exact.stats.nodes_explored} nodes)")
for entry in exact.schedule.sorted_entries():
    print(f"  user {entry.user} -> BS {entry.bs}, zone {entry.pz}")

assert greedy.weight == 11.0 and exact.weight == 18.0
