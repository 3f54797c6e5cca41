"""Functional repair: storage spaces drift while the rules hold.

Runs failure/repair rounds on the (5; 4,3,3,2,1) functional code.  The
replacement node need not reproduce the lost subspace — any choice is
fine as long as every pair of spaces intersects trivially and every
triple spans GF(2)^5.  Decodability from any three nodes survives.
"""

import random

from storagecodes import BitVector, collect, encode_functional, fail, functional_repair
from storagecodes.constructions import example3_initial_bases, example3_spec

spec = example3_spec()
x = BitVector.from_string("10110")
state = encode_functional(spec, example3_initial_bases(), x)

print("initial storage spaces:")
for i, mat in enumerate(state.bases):
    print(f"  node {i}: <{', '.join(mat.to_strings())}>")

rng = random.Random(4)
for round_no in range(1, 9):
    victim = rng.randrange(4)
    before = state.bases[victim].to_strings()
    fail(state, victim)
    functional_repair(state, victim)
    after = state.bases[victim].to_strings()
    note = "unchanged" if before == after else f"was <{', '.join(before)}>"
    print(f"round {round_no}: node {victim} -> <{', '.join(after)}>  ({note})")
    assert spec.satisfied(state.subspaces())

decoded = collect(state, [0, 2, 3])
print(f"\ndecoded from nodes (0, 2, 3): {decoded.to_string()}  (matches: {decoded == x})")
print("each repair downloaded one symbol per survivor: 3 symbols for a 2-symbol node")
