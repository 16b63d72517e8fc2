"""Constructive winning moves and their algorithm traces.

The even half-window games are solved by three token-shuffling routines
whose traces print as the familiar worked tables; the pieces compose
into a single legal move.
"""

import setnim as sn

nn10 = sn.necklace(10, 5)

# Both balance conditions broken: the suffix walk fixes one of them.
pos = (4, 21, 3, 2, 3, 4, 2, 7, 6, 5)
result, trace = sn.two_delta(nn10, pos)
print(trace.render())
print("suffix walk lands on", result)

# The leftover sum gap of 1 is closed on the A side:
fixed, _ = sn.delta_alg(nn10, result)
print("sum fix lands on", fixed, "->", sn.p_half_window(nn10, fixed))

# And the whole composition is one window move:
sm = sn.winning_move(nn10, pos)
print("one certified move:", sm.move, "->", sm.result)

# The second worked position goes through the paired walk plus a unit fix:
pos2 = (2, 15, 8, 4, 5, 4, 5, 5, 5, 8)
sm2 = sn.winning_move(nn10, pos2)
print("algorithms used:", [t.algorithm for t in sm2.traces])
print("one certified move:", sm2.move, "->", sm2.result)

# Balanced positions have no winning move:
print(sn.winning_move(sn.necklace(3, 2), (1, 1, 1)))

# Families without the constructive recipe search against their closed
# form (odd half-window games, wide windows, paths, small circles), and
# anything unsolved falls back to the oracle:
print(sn.winning_move(sn.necklace(5, 3), (1, 2, 1, 3, 2)).move)
print(sn.winning_move(sn.path(5, 3), (2, 1, 1, 0, 3)).move)
print(sn.winning_move(sn.moore(3, 2), (1, 2, 3)).move)
