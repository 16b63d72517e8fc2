"""The closed-form characterizations and their verification sweeps.

Half-window necklaces NN(2l, l) and NN(2l+1, l+1) are balanced exactly
when the two half sums agree (SE) and the smaller end stack equals the
minimum window sum (ME).
"""

from itertools import product

import setnim as sn

nn10 = sn.necklace(10, 5)

# The quantities behind the predicate, on a ten-stack position:
dq = sn.derived_quantities(nn10, (4, 21, 3, 2, 3, 4, 2, 7, 6, 5))
print("A =", dq.A, " B =", dq.B, " m =", dq.m)
print("window sums s_2..s_6 =", dq.s, " minimum", dq.s_star, "at t =", dq.t)
print("gaps: Delta =", dq.Delta, " delta =", dq.delta_me)

print(sn.p_half_window(nn10, (4, 21, 3, 2, 3, 4, 2, 7, 6, 5)))
print(sn.p_half_window(nn10, (4, 20, 0, 0, 0, 4, 2, 7, 6, 5)))

# Wider windows merge onto the half-window games; the widest two also
# have direct end-stack formulas:
print("NN(4,3):", sn.p_window_n_minus_1((3, 1, 2, 3)))
print("NN(5,3):", sn.p_window_n_minus_2((3, 1, 2, 1, 3)))

# closed_form dispatches to whatever covers the game (None = unsolved):
print(sn.closed_form(sn.necklace(7, 5), (1, 1, 1, 1, 1, 1, 2)))
print(sn.closed_form(sn.necklace(7, 3), (1,) * 7))

# An exhaustive spot check against the oracle (the CLI `verify` command
# runs the same comparison):
oracle = sn.Oracle()
spec = sn.necklace(4, 2)
bad = sum(
    1
    for pos in product(range(4), repeat=4)
    if sn.p_half_window(spec, pos).holds != (oracle.classify(spec, pos) == "P")
)
print("NN(4,2) cap 3 disagreements:", bad)
