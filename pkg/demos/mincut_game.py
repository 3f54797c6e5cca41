"""The kill/rebuild min-cut game certifying the locality-rate theorems.

KILLER removes a live node, BUILDER rebuilds it from r helpers, and the
value is the smallest collector min-cut KILLER can force.  The optimal
value bounds the storable information m from above; the search stops at
the first horizon whose value meets the closed-form bound.
"""

from storagecodes.flowgame import (
    collector_value,
    dimakis_cutset_value,
    initial_graph,
    kill,
    rebuild,
    verify_theorem,
)
from storagecodes.bounds import cutset_bound

print("a single kill/rebuild round, n=3, r=2, alpha=beta=1:")
g = initial_graph(3, 1)
print(f"  start: collector value {collector_value(g)}")
g = kill(g, 2)
print(f"  after killing node 2: {collector_value(kill(initial_graph(3, 1), 2))}")
g = rebuild(g, [0, 1], 1, 1)
print(f"  after rebuilding from nodes 0 and 1: {collector_value(g)}")
print("  the newcomer shares its helpers' saturated internal edges")

print("\nthe classic worst-case repair sequence reproduces the cutset bound:")
for n, k, r, alpha, beta in [(5, 3, 3, 2, 1), (5, 2, 4, 3, 1), (4, 2, 2, 1, 1)]:
    replay = dimakis_cutset_value(n, k, r, alpha, beta)
    formula = cutset_bound(k, r, alpha, beta)
    print(f"  n={n} k={k} r={r} alpha={alpha} beta={beta}: replay={replay}, formula={formula}")

print("\ngame verification of the locality-rate theorems:")
cases = [
    ("alpha_eq_beta", 3, 2, 1, 1),
    ("alpha_eq_beta", 4, 3, 1, 1),
    ("alpha_eq_r_beta", 4, 3, 3, 1),
    ("r2", 5, 2, 2, 1),
    ("r2", 6, 2, 1, 1),
]
for case, n, r, alpha, beta in cases:
    rep = verify_theorem(case, n, r, alpha, beta, horizon=2 * n)
    print(f"  {rep.to_record()}")
