"""Game specifications, positions, move legality, and option generation.

A game is played on ``n`` stacks of tokens sitting on vertices ``1..n``.
Each move selects one allowed move set and removes at least one token in
total (and as many as all) from the stacks of that set; the player who
removes the last token wins.  Only maximal move sets are kept in a spec.

Families provided:

- ``NIM``    plain Nim: singleton move sets,
- ``MOORE``  Moore's k-Nim: every k-element subset,
- ``CN``     CircularNim CN(n, k): k consecutive stacks on a cycle,
- ``PN``     PathNim PN(n, k): k consecutive stacks on a path,
- ``NN``     NecklaceNim NN(n, k): PathNim plus the two-end-stack "clasp",
- ``NNg``    clasp games NNg(n, k, c): PathNim plus a width-c clasp that
             wraps the ends like PN(2(c-1), c),
- ``SET``    arbitrary move-set collections.

Vertices are numbered 1-based in every interface, matching the usual
game-theory convention.  Positions are plain tuples of non-negative ints
and every operation here is a pure function, so values can be shared
freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator

from .errors import GameParameterError, IllegalMoveError

Position = tuple[int, ...]

# Heights above this cap are rejected so hashing and JSON round-trips stay
# exact everywhere.
MAX_HEIGHT = 2**32 - 1

FAMILIES = ("SET", "NIM", "MOORE", "CN", "PN", "NN", "NNg")


@dataclass(frozen=True)
class GameSpec:
    """An n-vertex game together with its maximal move sets.

    ``move_sets`` holds sorted tuples of 1-based vertex indices.  The
    collection is maximal (no set contains another), covers ``1..n``,
    and its order is stable: window sets left to right, clasp sets last.
    """

    n: int
    move_sets: tuple[tuple[int, ...], ...]
    family: str = "SET"
    k: int | None = None
    c: int | None = None

    def move_set(self, set_index: int) -> tuple[int, ...]:
        """Return the move set with the given 1-based index."""
        if not 1 <= set_index <= len(self.move_sets):
            raise IllegalMoveError(
                f"set index {set_index} out of range 1..{len(self.move_sets)}"
            )
        return self.move_sets[set_index - 1]

    @property
    def structure(self) -> tuple[int, frozenset[tuple[int, ...]]]:
        """Identity of the game as played, ignoring the family tag."""
        return (self.n, frozenset(self.move_sets))

    def describe(self) -> str:
        if self.family == "NN":
            return f"NN({self.n},{self.k})"
        if self.family == "PN":
            return f"PN({self.n},{self.k})"
        if self.family == "CN":
            return f"CN({self.n},{self.k})"
        if self.family == "NNg":
            return f"NNg({self.n},{self.k},{self.c})"
        if self.family == "MOORE":
            return f"Moore({self.n},{self.k})"
        if self.family == "NIM":
            return f"Nim({self.n})"
        return f"SET(n={self.n}, {len(self.move_sets)} move sets)"


@dataclass(frozen=True)
class Move:
    """One move: a chosen move set plus a full-length removal vector.

    ``set_index`` is 1-based, matching the JSON wire format.  Removals are
    zero outside the chosen set, bounded by the current heights, and sum
    to at least one token.
    """

    set_index: int
    removals: tuple[int, ...]


def _maximal(sets: list[tuple[int, ...]]) -> tuple[tuple[int, ...], ...]:
    """Drop duplicates and sets contained in another, keeping input order."""
    kept: list[tuple[int, ...]] = []
    as_sets = [frozenset(s) for s in sets]
    for i, s in enumerate(as_sets):
        dominated = False
        for j, other in enumerate(as_sets):
            if i == j:
                continue
            if s < other or (s == other and j < i):
                dominated = True
                break
        if not dominated:
            kept.append(tuple(sorted(s)))
    return tuple(kept)


def _check_n(n: int, low: int, family: str) -> None:
    if not isinstance(n, int) or n < low:
        raise GameParameterError(f"{family} requires n >= {low}, got n={n}")


def nim(n: int) -> GameSpec:
    """Plain Nim on ``n`` stacks: singleton move sets."""
    _check_n(n, 1, "Nim")
    return GameSpec(n, tuple((i,) for i in range(1, n + 1)), "NIM")


def moore(n: int, k: int) -> GameSpec:
    """Moore's k-Nim on ``n`` stacks: every k-element subset is playable."""
    _check_n(n, 1, "Moore")
    if not 1 <= k <= n:
        raise GameParameterError(f"Moore requires 1 <= k <= n, got k={k}, n={n}")
    sets = [tuple(c) for c in combinations(range(1, n + 1), k)]
    return GameSpec(n, tuple(sets), "MOORE", k=k)


def circular(n: int, k: int) -> GameSpec:
    """CircularNim CN(n, k): the n cyclic windows of k consecutive stacks."""
    _check_n(n, 1, "CircularNim")
    if not 1 <= k <= n:
        raise GameParameterError(
            f"CircularNim requires 1 <= k <= n, got k={k}, n={n}"
        )
    sets = []
    for i in range(n):
        sets.append(tuple(sorted((i + j) % n + 1 for j in range(k))))
    return GameSpec(n, _maximal(sets), "CN", k=k)


def path(n: int, k: int) -> GameSpec:
    """PathNim PN(n, k): the n-k+1 windows of k consecutive stacks."""
    _check_n(n, 1, "PathNim")
    if not 1 <= k <= n:
        raise GameParameterError(f"PathNim requires 1 <= k <= n, got k={k}, n={n}")
    sets = [tuple(range(i, i + k)) for i in range(1, n - k + 2)]
    return GameSpec(n, tuple(sets), "PN", k=k)


def necklace(n: int, k: int) -> GameSpec:
    """NecklaceNim NN(n, k): PathNim windows plus the clasp {1, n}.

    The clasp is dropped automatically when it is contained in a window
    (k = n), and collapses into the single window when n = 2.
    """
    _check_n(n, 2, "NecklaceNim")
    if not 2 <= k <= n:
        raise GameParameterError(
            f"NecklaceNim requires 2 <= k <= n, got k={k}, n={n}"
        )
    sets = [tuple(range(i, i + k)) for i in range(1, n - k + 2)]
    sets.append((1, n))
    return GameSpec(n, _maximal(sets), "NN", k=k)


def clasp(n: int, k: int, c: int) -> GameSpec:
    """Clasp game NNg(n, k, c): PathNim windows plus a wrap-around clasp.

    The clasp contributes the move sets of PN(2(c-1), c) along the path
    n-c+2, ..., n, 1, ..., c-1 that wraps the two ends.  NNg(n, k, 2) has
    exactly the move sets of NN(n, k).
    """
    _check_n(n, 2, "NNg")
    if not 1 <= k <= n:
        raise GameParameterError(f"NNg requires 1 <= k <= n, got k={k}, n={n}")
    if not 2 <= c <= n // 2 + 1:
        raise GameParameterError(
            f"NNg requires 2 <= c <= floor(n/2)+1, got c={c}, n={n}"
        )
    sets = [tuple(range(i, i + k)) for i in range(1, n - k + 2)]
    wrap = list(range(n - c + 2, n + 1)) + list(range(1, c))
    for i in range(len(wrap) - c + 1):
        sets.append(tuple(sorted(wrap[i : i + c])))
    return GameSpec(n, _maximal(sets), "NNg", k=k, c=c)


def generic(n: int, move_sets) -> GameSpec:
    """Arbitrary SetNim game from explicit move sets.

    Validates vertex ranges and coverage, then prunes non-maximal sets.
    """
    _check_n(n, 1, "SetNim")
    cleaned: list[tuple[int, ...]] = []
    covered: set[int] = set()
    for s in move_sets:
        vs = sorted(set(int(v) for v in s))
        if not vs:
            raise GameParameterError("move sets must be non-empty")
        if vs[0] < 1 or vs[-1] > n:
            raise GameParameterError(
                f"move set {vs} has vertices outside 1..{n}"
            )
        covered.update(vs)
        cleaned.append(tuple(vs))
    if covered != set(range(1, n + 1)):
        missing = sorted(set(range(1, n + 1)) - covered)
        raise GameParameterError(
            f"move sets must cover every vertex; missing {missing}"
        )
    return GameSpec(n, _maximal(cleaned), "SET")


def build_spec(
    family: str,
    n: int | None = None,
    k: int | None = None,
    c: int | None = None,
    move_sets=None,
) -> GameSpec:
    """Construct a spec from a family tag plus its parameters."""
    family = family.upper().replace("NNG", "NNg")
    if family not in FAMILIES:
        raise GameParameterError(f"unknown family {family!r}; expected one of {FAMILIES}")
    if n is None:
        raise GameParameterError("n is required")
    if family == "SET":
        if move_sets is None:
            raise GameParameterError("family SET requires explicit move_sets")
        return generic(n, move_sets)
    if family == "NIM":
        return nim(n)
    if k is None:
        raise GameParameterError(f"family {family} requires k")
    if family == "MOORE":
        return moore(n, k)
    if family == "CN":
        return circular(n, k)
    if family == "PN":
        return path(n, k)
    if family == "NN":
        return necklace(n, k)
    if c is None:
        raise GameParameterError("family NNg requires c")
    return clasp(n, k, c)


def as_position(heights, spec: GameSpec | None = None) -> Position:
    """Validate a height sequence and return it as a position tuple."""
    pos = tuple(int(h) for h in heights)
    if spec is not None and len(pos) != spec.n:
        raise IllegalMoveError(
            f"position has {len(pos)} stacks, spec has n={spec.n}"
        )
    for i, h in enumerate(pos, 1):
        if h < 0:
            raise IllegalMoveError(f"stack {i} has negative height {h}")
        if h > MAX_HEIGHT:
            raise IllegalMoveError(f"stack {i} exceeds the height cap {MAX_HEIGHT}")
    return pos


def is_terminal(pos: Position) -> bool:
    """True iff every stack is zero (the unique terminal position)."""
    return not any(pos)


def validate_move(spec: GameSpec, pos: Position, move: Move) -> None:
    """Raise :class:`IllegalMoveError` naming the violated move invariant."""
    ms = spec.move_set(move.set_index)
    if len(move.removals) != spec.n:
        raise IllegalMoveError(
            f"removal vector has length {len(move.removals)}, expected {spec.n}"
        )
    allowed = set(ms)
    total = 0
    for v, r in enumerate(move.removals, 1):
        if r < 0:
            raise IllegalMoveError(f"negative removal {r} at stack {v}")
        if r > 0 and v not in allowed:
            raise IllegalMoveError(
                f"removal at stack {v} is outside the chosen move set {ms}"
            )
        if r > pos[v - 1]:
            raise IllegalMoveError(
                f"removal {r} exceeds height {pos[v - 1]} at stack {v}"
            )
        total += r
    if total == 0:
        raise IllegalMoveError("a move must remove at least one token")


def apply_move(spec: GameSpec, pos: Position, move: Move) -> Position:
    """Apply a legal move and return the resulting position."""
    validate_move(spec, pos, move)
    return tuple(h - r for h, r in zip(pos, move.removals))


def legal_moves(spec: GameSpec, pos: Position) -> Iterator[Move]:
    """Yield every legal move, in deterministic order.

    Moves are ordered by move set (spec order) and then lexicographically
    by removal vector.  Two moves through different sets may lead to the
    same option; deduplication by resulting position is the caller's
    concern (the oracle does it).
    """
    for set_index, ms in enumerate(spec.move_sets, 1):
        ranges = [range(pos[v - 1] + 1) for v in ms]
        for combo in product(*ranges):
            if not any(combo):
                continue
            removals = [0] * spec.n
            for v, r in zip(ms, combo):
                removals[v - 1] = r
            yield Move(set_index, tuple(removals))


def mirror(pos: Position) -> Position:
    """Reverse a position, realizing the left-right symmetry of path games."""
    return pos[::-1]


def reversal_symmetric(spec: GameSpec) -> bool:
    """True iff reversing vertex order maps the move-set collection to itself."""
    sets = set(spec.move_sets)
    for ms in spec.move_sets:
        if tuple(sorted(spec.n + 1 - v for v in ms)) not in sets:
            return False
    return True


def mirrored_set_index(spec: GameSpec, set_index: int) -> int:
    """Return the 1-based index of the reversed image of a move set."""
    ms = spec.move_set(set_index)
    target = tuple(sorted(spec.n + 1 - v for v in ms))
    for i, other in enumerate(spec.move_sets, 1):
        if other == target:
            return i
    raise IllegalMoveError(
        f"move set {ms} has no mirror image; spec is not reversal-symmetric"
    )


def mirror_move(spec: GameSpec, move: Move) -> Move:
    """Map a move to the corresponding move on the mirrored position."""
    return Move(mirrored_set_index(spec, move.set_index), move.removals[::-1])
