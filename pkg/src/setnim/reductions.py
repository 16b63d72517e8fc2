"""Outcome-preserving reductions between set-based Nim games.

Four mechanisms shrink a game to a smaller congruent one:

- *zero reduction*: stacks holding zero tokens never matter again, so
  they are deleted and every move set is intersected with the survivors;
- *subsume*: move sets contained in another are dropped, keeping the
  collection maximal;
- *merge reduction*: a vertex set C that every move set either contains
  or avoids behaves like a single stack holding the summed tokens;
- *invariance reduction*: subtracting multiples of the invariant 0/1
  vectors of the balanced-set predicate walks a position to one with a
  zero stack without changing membership.

Wide-window necklaces NN(n, n-l) with l < floor(n/2) merge their common
middle stacks into one, landing on the half-window game NN(2l+1, l+1);
``anchor_reduce`` performs exactly that merge on positions.

All functions are pure; reduced specs are returned as generic ("SET")
specs and compared structurally.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .characterize import half_window_ell, is_half_window
from .errors import DomainError
from .games import (
    GameSpec,
    Position,
    _maximal,
    as_position,
    circular,
    necklace,
    nim,
    path,
)


@dataclass(frozen=True)
class InvariantVector:
    """A 0/1 vector whose multiples preserve balanced-set membership."""

    bits: tuple[int, ...]

    @property
    def one_indices(self) -> tuple[int, ...]:
        return tuple(i for i, b in enumerate(self.bits, 1) if b)


@dataclass(frozen=True)
class ReductionStep:
    """Record of one reduction, with the old-to-new vertex map.

    For zero steps the map composed with :func:`restore_zeros` recovers
    the original position exactly; merged stacks cannot be split back
    (the reverse map is deliberately not provided).
    """

    kind: str
    removed: tuple[int, ...] = ()
    merged: tuple[int, ...] = ()
    index_map: tuple[tuple[int, int], ...] = ()
    vectors: tuple[tuple[InvariantVector, int], ...] = ()
    sigma_min: int | None = None

    def to_json(self) -> dict:
        obj: dict = {"kind": self.kind}
        if self.removed:
            obj["removed"] = list(self.removed)
        if self.merged:
            obj["merged"] = list(self.merged)
        if self.index_map:
            obj["index_map"] = [list(pair) for pair in self.index_map]
        if self.vectors:
            obj["vectors"] = [
                {"z": list(vec.bits), "c": c} for vec, c in self.vectors
            ]
        if self.sigma_min is not None:
            obj["sigma_min"] = self.sigma_min
        return obj


def subsume(spec: GameSpec) -> GameSpec:
    """Drop move sets contained in another; idempotent."""
    pruned = _maximal(list(spec.move_sets))
    if pruned == spec.move_sets:
        return spec
    return GameSpec(spec.n, pruned, spec.family, k=spec.k, c=spec.c)


def zero_reduce(
    spec: GameSpec, pos, only=None
) -> tuple[GameSpec, Position, ReductionStep]:
    """Delete zero stacks (optionally restricted to ``only``).

    Move sets are intersected with the survivors, emptied sets dropped,
    and the collection re-maximalized so reduced specs stay canonical.
    """
    pos = as_position(pos, spec)
    zeros = {v for v in range(1, spec.n + 1) if pos[v - 1] == 0}
    if only is not None:
        zeros &= {int(v) for v in only}
    survivors = [v for v in range(1, spec.n + 1) if v not in zeros]
    renumber = {old: new for new, old in enumerate(survivors, 1)}
    new_sets = []
    for ms in spec.move_sets:
        t = tuple(renumber[v] for v in ms if v in renumber)
        if t:
            new_sets.append(t)
    reduced = GameSpec(len(survivors), _maximal(new_sets), "SET")
    reduced_pos = tuple(pos[v - 1] for v in survivors)
    step = ReductionStep(
        kind="zero",
        removed=tuple(sorted(zeros)),
        index_map=tuple((old, renumber[old]) for old in survivors),
    )
    return reduced, reduced_pos, step


def restore_zeros(step: ReductionStep, reduced_pos: Position) -> Position:
    """Reinsert the deleted zero stacks, inverting a zero step."""
    if step.kind != "zero":
        raise DomainError("restore_zeros only inverts zero-reduction steps")
    n = len(reduced_pos) + len(step.removed)
    out = [0] * n
    for old, new in step.index_map:
        out[old - 1] = reduced_pos[new - 1]
    return tuple(out)


def mergeable_classes(spec: GameSpec) -> list[tuple[int, ...]]:
    """Vertex classes that every move set treats all-or-nothing.

    Two vertices are interchangeable when they belong to exactly the same
    move sets; every class of size >= 2 is a valid merge target.
    """
    signature: dict[int, frozenset[int]] = {}
    for v in range(1, spec.n + 1):
        signature[v] = frozenset(
            i for i, ms in enumerate(spec.move_sets) if v in ms
        )
    groups: dict[frozenset[int], list[int]] = {}
    for v, sig in signature.items():
        groups.setdefault(sig, []).append(v)
    return [tuple(g) for g in groups.values() if len(g) >= 2]


def merge_reduce(spec: GameSpec, group) -> tuple[GameSpec, object, ReductionStep]:
    """Collapse an all-or-nothing vertex set into one vertex.

    Returns the reduced spec, a position mapper (the merged stack holds
    the summed tokens), and the step record.  The merged vertex takes the
    slot of the smallest member, so contiguous merges preserve the
    left-to-right vertex order.
    """
    group_set = {int(v) for v in group}
    if not group_set or not group_set <= set(range(1, spec.n + 1)):
        raise DomainError(f"merge group {sorted(group_set)} outside 1..{spec.n}")
    for ms in spec.move_sets:
        inter = group_set & set(ms)
        if inter and inter != group_set:
            raise DomainError(
                f"move set {ms} splits the merge group {sorted(group_set)}; "
                "every set must contain all of it or none of it"
            )
    keep = min(group_set)
    survivors = [
        v for v in range(1, spec.n + 1) if v not in group_set or v == keep
    ]
    renumber = {old: new for new, old in enumerate(survivors, 1)}
    new_sets = []
    for ms in spec.move_sets:
        t = tuple(
            sorted({renumber[v if v not in group_set else keep] for v in ms})
        )
        new_sets.append(t)
    reduced = GameSpec(len(survivors), _maximal(new_sets), "SET")
    members = tuple(sorted(group_set))

    def mapper(pos) -> Position:
        pos = as_position(pos, spec)
        out = []
        for old in survivors:
            if old == keep:
                out.append(sum(pos[v - 1] for v in members))
            else:
                out.append(pos[old - 1])
        return tuple(out)

    step = ReductionStep(
        kind="merge",
        merged=members,
        index_map=tuple((old, renumber[old]) for old in survivors),
    )
    return reduced, mapper, step


def anchor_reduce(spec: GameSpec, pos) -> tuple[GameSpec, Position, ReductionStep]:
    """Merge the common middle of NN(n, n-l) down to NN(2l+1, l+1).

    Stacks l+1..n-l are summed into the centre stack; the l outermost
    stacks on each side are untouched.
    """
    if spec.family != "NN" or spec.k is None:
        raise DomainError(f"{spec.describe()} is not a NecklaceNim game")
    l = spec.n - spec.k
    if spec.n < 4 or not 1 <= l < spec.n // 2:
        raise DomainError(
            f"{spec.describe()} does not merge to a half-window game "
            "(requires n >= 4 and 1 <= n-k < floor(n/2))"
        )
    pos = as_position(pos, spec)
    middle = tuple(range(l + 1, spec.n - l + 1))
    reduced_pos = pos[:l] + (sum(pos[l : spec.n - l]),) + pos[spec.n - l :]
    anchor_spec = necklace(2 * l + 1, l + 1)
    step = ReductionStep(kind="anchor", merged=middle)
    return anchor_spec, reduced_pos, step


def invariant_vectors(spec: GameSpec) -> list[InvariantVector]:
    """The invariant vectors of a half-window necklace game.

    Even n = 2l: for each i in 2..l, ones at stacks 1, i, l+i-1, and 2l.
    Odd n = 2l+1: the same index sets shifted past the centre stack
    (ones at 1, i, l+i, 2l+1), plus the symmetric vector with ones at the
    two ends and the centre.
    """
    l = half_window_ell(spec)
    n = spec.n
    vectors = []
    odd = n % 2 == 1
    for i in range(2, l + 1):
        ones = {1, i, (l + i if odd else l + i - 1), n}
        bits = tuple(1 if v in ones else 0 for v in range(1, n + 1))
        vectors.append(InvariantVector(bits))
    if odd:
        ones = {1, l + 1, n}
        vectors.append(
            InvariantVector(tuple(1 if v in ones else 0 for v in range(1, n + 1)))
        )
    return vectors


def indicator_min(vector: InvariantVector, pos) -> int:
    """Smallest stack among the vector's 1-indices: the largest multiple
    of the vector that can be subtracted without going negative."""
    pos = tuple(int(h) for h in pos)
    return min(pos[i - 1] for i in vector.one_indices)


def invariance_reduce(
    spec: GameSpec, pos
) -> tuple[Position, tuple[tuple[InvariantVector, int], ...]]:
    """Subtract the maximal multiple of each invariant vector in turn.

    Vectors are applied in ascending index order, symmetric vector last;
    the order changes the reduced position but not membership, and fixing
    it keeps tests reproducible.  The result has a zero at some 1-index
    of every vector.
    """
    pos = as_position(pos, spec)
    current = list(pos)
    applied = []
    for vec in invariant_vectors(spec):
        c = min(current[i - 1] for i in vec.one_indices)
        if c:
            for i in vec.one_indices:
                current[i - 1] -= c
        applied.append((vec, c))
    return tuple(current), tuple(applied)


def pair_min_sum(spec: GameSpec, pos) -> int:
    """Sum of min(a_i, b_{i-1}) over i = 2..l for an even half-window game.

    This is the total the invariance reduction strips from each end stack
    when it exceeds neither end.
    """
    l = half_window_ell(spec)
    if spec.n != 2 * l:
        raise DomainError(f"{spec.describe()} is not an even half-window game")
    pos = as_position(pos, spec)
    return sum(min(pos[i - 1], pos[l + i - 2]) for i in range(2, l + 1))


def specs_same_sets(a: GameSpec, b: GameSpec) -> bool:
    """Structural equality: same vertex count and same move sets."""
    return a.n == b.n and set(a.move_sets) == set(b.move_sets)


def find_isomorphism(a: GameSpec, b: GameSpec) -> tuple[int, ...] | None:
    """A vertex relabeling of ``a`` onto ``b``, by brute force (n <= 8).

    Returns a tuple ``perm`` with perm[old-1] = new, or None.
    """
    if a.n != b.n or len(a.move_sets) != len(b.move_sets):
        return None
    if a.n > 8:
        return None
    target = {frozenset(ms) for ms in b.move_sets}
    for perm in permutations(range(1, a.n + 1)):
        image = {frozenset(perm[v - 1] for v in ms) for ms in a.move_sets}
        if image == target:
            return perm
    return None


def identify_family(spec: GameSpec) -> str | None:
    """Name a known family whose move sets match this spec's, if any.

    Checks the natural vertex order first, then relabelings for n <= 8.
    """
    n = spec.n
    candidates: list[GameSpec] = []
    if n >= 1:
        candidates.append(nim(n))
    for k in range(1, n + 1):
        candidates.append(path(n, k))
        candidates.append(circular(n, k))
        if k >= 2 and n >= 2:
            candidates.append(necklace(n, k))
    for cand in candidates:
        if specs_same_sets(spec, cand):
            return cand.describe()
    if n <= 8:
        for cand in candidates:
            if len(cand.move_sets) == len(spec.move_sets) and find_isomorphism(
                spec, cand
            ):
                return cand.describe() + " (relabeled)"
    return None


def reduction_pipeline(spec: GameSpec, pos) -> tuple[GameSpec, Position, list[dict]]:
    """The full reduction story for one position, for display.

    Applies, in order: the wide-window merge onto the half-window game,
    the invariance reduction, the zero reduction, and any all-or-nothing
    merges it exposed.  Each step is reported as a JSON-ready dict with
    the spec and position after the step.
    """
    from .serialize import spec_to_json

    pos = as_position(pos, spec)
    steps: list[dict] = []

    def record(step: ReductionStep, cur_spec: GameSpec, cur_pos: Position) -> None:
        entry = step.to_json()
        entry["spec"] = spec_to_json(cur_spec)
        entry["move_sets"] = [list(ms) for ms in cur_spec.move_sets]
        entry["pos"] = list(cur_pos)
        known = identify_family(cur_spec)
        if known:
            entry["recognized"] = known
        steps.append(entry)

    current_spec, current_pos = spec, pos
    if spec.family == "NN" and spec.k is not None:
        l = spec.n - spec.k
        if spec.n >= 4 and 1 <= l < spec.n // 2:
            current_spec, current_pos, step = anchor_reduce(spec, pos)
            record(step, current_spec, current_pos)
    if is_half_window(current_spec):
        sigma = None
        if current_spec.n % 2 == 0:
            sigma = pair_min_sum(current_spec, current_pos)
        reduced, applied = invariance_reduce(current_spec, current_pos)
        if reduced != current_pos:
            current_pos = reduced
            record(
                ReductionStep(kind="invariance", vectors=applied, sigma_min=sigma),
                current_spec,
                current_pos,
            )
    if any(h == 0 for h in current_pos) and current_spec.n > 1:
        current_spec, current_pos, step = zero_reduce(current_spec, current_pos)
        record(step, current_spec, current_pos)
    while True:
        classes = mergeable_classes(current_spec)
        if not classes:
            break
        current_spec, mapper, step = merge_reduce(current_spec, classes[0])
        current_pos = mapper(current_pos)
        record(step, current_spec, current_pos)
    return current_spec, current_pos, steps
