"""Outcome-preserving reductions: anchor, invariance, zero, merge.

A wide-window necklace collapses its shared middle into one stack; the
invariant vectors then walk any balanced position down to one with a
zero stack, and zero plus merge reductions shrink the game itself.
"""

import setnim as sn

# NN(7,5): the three middle stacks appear in every window, so they merge.
spec = sn.necklace(7, 5)
anchor_spec, anchor_pos, step = sn.anchor_reduce(spec, (1, 2, 3, 4, 5, 6, 7))
print("merged stacks", step.merged, "->", anchor_pos, "in", sn.identify_family(anchor_spec))

# Invariant vectors of the half-window games: adding or subtracting any
# multiple never changes membership in the balanced set.
for vec in sn.invariant_vectors(sn.necklace(6, 3)):
    print("invariant 1-indices:", vec.one_indices)

reduced, applied = sn.invariance_reduce(sn.necklace(4, 2), (2, 3, 1, 2))
print("(2,3,1,2) -", " - ".join(f"{c}*{v.bits}" for v, c in applied), "=", reduced)

# Zero stacks drop out; move sets contained in others get subsumed; and
# stacks that always travel together merge into one.
spec63 = sn.necklace(6, 3)
pos = (3, 0, 0, 1, 2, 4)
reduced_spec, reduced_pos, zstep = sn.zero_reduce(spec63, pos)
print("after zero reduction:", reduced_pos, reduced_spec.move_sets)
for group in sn.mergeable_classes(reduced_spec):
    merged_spec, mapper, _ = sn.merge_reduce(reduced_spec, group)
    print("merging", group, "->", mapper(reduced_pos), merged_spec.move_sets)
    print("which is", sn.identify_family(merged_spec))

# The whole story in one call (the CLI `reduce` command prints this):
final_spec, final_pos, steps = sn.reduction_pipeline(sn.necklace(7, 5), (1, 2, 3, 4, 5, 6, 7))
for entry in steps:
    print(entry["kind"], "->", entry["pos"], entry.get("recognized", ""))
