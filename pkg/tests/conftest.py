"""Shared fixtures, including an independent brute-force classifier.

``naive_outcome`` is deliberately written unlike the package's oracle
(plain recursion over raw removal vectors, no option dedup, no work
list) so oracle tests check two independent implementations against
each other.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

import pytest

from setnim import GameSpec, Oracle


def naive_outcome(spec: GameSpec, pos) -> str:
    @lru_cache(maxsize=None)
    def solve(p: tuple) -> str:
        for ms in spec.move_sets:
            ranges = [range(p[v - 1] + 1) for v in ms]
            for combo in product(*ranges):
                if all(combo[i] == p[v - 1] for i, v in enumerate(ms)):
                    continue
                q = list(p)
                for i, v in enumerate(ms):
                    q[v - 1] = combo[i]
                if solve(tuple(q)) == "P":
                    return "N"
        return "P"

    return solve(tuple(pos))


@pytest.fixture(scope="session")
def oracle() -> Oracle:
    return Oracle()
