"""Build game specs and classify positions with the exhaustive oracle.

Run from the repository root:  python3 demos/01_games_and_the_oracle.py
"""

import setnim as sn

# A necklace game is a path of stacks plus a "clasp" joining the two ends.
spec = sn.necklace(5, 3)
print(spec.describe(), "move sets:", spec.move_sets)

# The same constructor family covers paths, cycles, Moore's k-Nim, plain
# Nim, wider clasps, and arbitrary move-set collections:
print(sn.path(5, 3).move_sets)
print(sn.circular(4, 2).move_sets)
print(sn.clasp(10, 5, 3).move_sets[-2:], "<- the width-3 clasp wraps both ends")

# Moves pick one set and remove tokens from its stacks.
pos = (3, 1, 2, 1, 3)
for move in list(sn.legal_moves(spec, pos))[:3]:
    print("move", move, "->", sn.apply_move(spec, pos, move))

# The oracle is the ground truth: memoized exhaustive search.
oracle = sn.Oracle()
print("(3,1,2,1,3) is", oracle.classify(spec, pos))  # a balanced position
print("(1,1,2,1,3) is", oracle.classify(spec, (1, 1, 2, 1, 3)))

# Every P-position with heights up to 2:
for p in sorted(oracle.enumerate_p_positions(sn.necklace(3, 2), 2)):
    print("P:", p)

print("cache:", oracle.stats)
