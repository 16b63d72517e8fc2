"""Closed-form P-position predicates and the quantities behind them.

For the half-window necklace games NN(2l, l) and NN(2l+1, l+1) the
P-positions are exactly the positions satisfying two balance conditions:

- (SE) the sum of the first floor(n/2) stacks equals the sum of the last
  floor(n/2) stacks (the centre stack of odd games counts for neither);
- (ME) the smaller end stack equals the minimum over the window sums
  ``s_i = p_i + ... + p_{i+k-2}`` for ``i = 2..l+1``.

Wider-window necklaces reduce onto those games by merging their middle
stacks, so their predicate is evaluated on the reduced position.  The
k = n-1 and k = n-2 families also admit direct end-stack formulas, kept
here as independent implementations and cross-checked against the
reduction route in the test suite.

Path games with windows covering at least half the stacks, and the two
small circular games CN(3,2) and CN(4,2), have their own closed forms.
Everything else returns "no closed form" and is left to the oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .games import GameSpec, Position, as_position


@dataclass(frozen=True)
class DerivedQuantities:
    """Balance quantities of a half-window necklace position.

    ``s`` holds the window sums s_2..s_{l+1}; ``t`` is the smallest index
    attaining ``s_star`` (ties beyond ``t`` are ignored everywhere).
    ``delta_me`` is stored once, signed, as ``s_star - m``; code handling
    the m >= s* regime reads the negation.
    """

    A: int
    B: int
    m: int
    s: tuple[int, ...]
    s_star: int
    t: int
    Delta: int
    delta_me: int

    def to_json(self) -> dict:
        return {
            "A": self.A,
            "B": self.B,
            "m": self.m,
            "s": list(self.s),
            "s_star": self.s_star,
            "t": self.t,
            "Delta": self.Delta,
            "delta": self.delta_me,
        }


@dataclass(frozen=True)
class PredicateReport:
    """Outcome of evaluating one closed-form predicate.

    ``witness`` is present exactly when the predicate fails and names the
    violated condition with its offending values.
    """

    predicate: str
    holds: bool
    witness: str | None = None

    def to_json(self) -> dict:
        return {
            "predicate": self.predicate,
            "holds": self.holds,
            "witness": self.witness,
        }


def is_half_window(spec: GameSpec) -> bool:
    """True for NN(n, k) with k = ceil(n/2) and n >= 3."""
    return (
        spec.family == "NN"
        and spec.k is not None
        and spec.n >= 3
        and spec.k == (spec.n + 1) // 2
    )


def half_window_ell(spec: GameSpec) -> int:
    """The parameter l of a half-window necklace game (n = 2l or 2l+1)."""
    if not is_half_window(spec):
        raise DomainError(
            f"{spec.describe()} is not a half-window necklace game "
            "(requires family NN, n >= 3, k = ceil(n/2))"
        )
    return spec.n // 2


def reduction_ell(spec: GameSpec) -> int | None:
    """The l for which NN(n, n-l) merges down to NN(2l+1, l+1), if any."""
    if spec.family != "NN" or spec.k is None:
        return None
    l = spec.n - spec.k
    if spec.n >= 4 and 1 <= l < spec.n // 2:
        return l
    return None


def derived_quantities(spec: GameSpec, pos) -> DerivedQuantities:
    """Compute A, B, m, the window sums, and the two gaps for a position."""
    l = half_window_ell(spec)
    pos = as_position(pos, spec)
    k = spec.k
    assert k is not None
    A = sum(pos[:l])
    B = sum(pos[spec.n - l :])
    m = min(pos[0], pos[-1])
    s = tuple(sum(pos[i - 1 : i + k - 2]) for i in range(2, l + 2))
    s_star = min(s)
    t = 2 + s.index(s_star)
    return DerivedQuantities(
        A=A, B=B, m=m, s=s, s_star=s_star, t=t, Delta=A - B, delta_me=s_star - m
    )


def decremented_quantities(
    spec: GameSpec, pos: Position, dq: DerivedQuantities, vertex: int, amount: int
) -> DerivedQuantities:
    """Quantities after reducing one stack, updated differentially.

    Only the window sums covering ``vertex`` change; A, B, and m follow
    from which side of the position the stack sits on.  Agrees with a
    full recompute by construction (property-tested).
    """
    l = half_window_ell(spec)
    k = spec.k
    assert k is not None
    if not 1 <= vertex <= spec.n:
        raise DomainError(f"vertex {vertex} out of range 1..{spec.n}")
    if not 0 <= amount <= pos[vertex - 1]:
        raise DomainError(
            f"cannot remove {amount} tokens from stack {vertex} of height "
            f"{pos[vertex - 1]}"
        )
    A = dq.A - (amount if vertex <= l else 0)
    B = dq.B - (amount if vertex >= spec.n - l + 1 else 0)
    p1 = pos[0] - (amount if vertex == 1 else 0)
    pn = pos[-1] - (amount if vertex == spec.n else 0)
    s = tuple(
        value - (amount if i <= vertex <= i + k - 2 else 0)
        for i, value in enumerate(dq.s, 2)
    )
    s_star = min(s)
    t = 2 + s.index(s_star)
    m = min(p1, pn)
    return DerivedQuantities(
        A=A, B=B, m=m, s=s, s_star=s_star, t=t, Delta=A - B, delta_me=s_star - m
    )


def p_half_window(spec: GameSpec, pos) -> PredicateReport:
    """Membership report for the balanced set of a half-window necklace."""
    dq = derived_quantities(spec, pos)
    failures = []
    if dq.Delta != 0:
        failures.append(f"SE: A={dq.A}, B={dq.B}")
    if dq.delta_me != 0:
        failures.append(f"ME: m={dq.m}, s*={dq.s_star}")
    if failures:
        return PredicateReport("S_ell", False, "; ".join(failures))
    return PredicateReport("S_ell", True)


def p_window_n_minus_1(pos) -> bool:
    """End-stack formula for NN(n, n-1), n >= 3.

    Both ends must equal the sum of the interior stacks.
    """
    pos = as_position(pos)
    if len(pos) < 3:
        raise DomainError("needs at least 3 stacks")
    interior = sum(pos[1:-1])
    return pos[0] == interior == pos[-1]


def p_window_n_minus_2(pos) -> bool:
    """Crossed end-stack formula for NN(n, n-2), n >= 4.

    Each end must equal the sum of the interior stacks on the far side of
    its neighbour.
    """
    pos = as_position(pos)
    if len(pos) < 4:
        raise DomainError("needs at least 4 stacks")
    return pos[0] == sum(pos[2:-1]) and pos[-1] == sum(pos[1:-2])


def p_path(spec: GameSpec, pos) -> bool:
    """Theorem-of-the-split predicate for PN(n, k) with k >= ceil(n/2).

    True iff the position is all zero when k = n, or splits as a
    non-empty prefix, a run of k-1 zeros, and a non-empty suffix with
    equal prefix and suffix sums.
    """
    if spec.family != "PN" or spec.k is None:
        raise DomainError(f"{spec.describe()} is not a PathNim game")
    n, k = spec.n, spec.k
    if 2 * k < n:
        raise DomainError(
            f"PN({n},{k}) has no closed form here (requires k >= ceil(n/2))"
        )
    pos = as_position(pos, spec)
    if k == n:
        return not any(pos)
    for u in range(1, n - k + 1):
        if any(pos[u : u + k - 1]):
            continue
        if sum(pos[:u]) == sum(pos[u + k - 1 :]):
            return True
    return False


def p_circular_small(spec: GameSpec, pos) -> bool:
    """Closed forms of the two solved small circular games.

    CN(3,2): all stacks equal.  CN(4,2): opposite stacks equal.
    """
    if spec.family != "CN" or (spec.n, spec.k) not in {(3, 2), (4, 2)}:
        raise DomainError(
            f"{spec.describe()} is not CN(3,2) or CN(4,2)"
        )
    pos = as_position(pos, spec)
    if spec.n == 3:
        return pos[0] == pos[1] == pos[2]
    return pos[0] == pos[2] and pos[1] == pos[3]


def closed_form(spec: GameSpec, pos) -> PredicateReport | None:
    """Dispatch to whichever closed form covers the game, if any.

    Returns ``None`` for games without a proven characterization; the
    oracle is the only authority there.
    """
    pos = as_position(pos, spec)
    if spec.family == "NN" and spec.n >= 3:
        if is_half_window(spec):
            return p_half_window(spec, pos)
        if reduction_ell(spec) is not None:
            from .reductions import anchor_reduce

            anchor_spec, anchor_pos, _ = anchor_reduce(spec, pos)
            return p_half_window(anchor_spec, anchor_pos)
        if spec.k == spec.n:
            # the clasp collapses into the whole-board window, so any
            # tokens at all can be taken in one move
            ok = not any(pos)
            witness = None if ok else "tokens remain on a whole-board window"
            return PredicateReport("PN_split", ok, witness)
        return None
    if spec.family == "PN" and spec.k is not None and 2 * spec.k >= spec.n:
        ok = p_path(spec, pos)
        witness = None if ok else (
            f"no run of {spec.k - 1} zeros with equal flanking sums"
        )
        return PredicateReport("PN_split", ok, witness)
    if spec.family == "CN" and (spec.n, spec.k) in {(3, 2), (4, 2)}:
        ok = p_circular_small(spec, pos)
        name = f"CN_{spec.n}_{spec.k}"
        if spec.n == 3:
            witness = None if ok else "stack heights differ"
        else:
            witness = None if ok else "opposite stacks differ"
        return PredicateReport(name, ok, witness)
    return None


PREDICATE_NAMES = ("auto", "s_ell", "nn_n_minus_1", "nn_n_minus_2", "path", "cn_small")


def predicate_for(name: str, spec: GameSpec):
    """Resolve a named predicate to ``pos -> PredicateReport``.

    Raises :class:`DomainError` when the predicate does not apply to the
    spec, so misconfigured sweeps are rejected before any search runs.
    """
    if name == "auto":
        probe = closed_form(spec, (0,) * spec.n)
        if probe is None:
            raise DomainError(f"{spec.describe()} has no closed form to verify")
        return lambda pos: closed_form(spec, pos)
    if name == "s_ell":
        half_window_ell(spec)
        return lambda pos: p_half_window(spec, pos)
    if name == "nn_n_minus_1":
        if spec.family != "NN" or spec.k != spec.n - 1 or spec.n < 3:
            raise DomainError(f"{spec.describe()} is not an NN(n, n-1) game")
        return lambda pos: PredicateReport(
            "NN_n_minus_1", p_window_n_minus_1(as_position(pos, spec))
        )
    if name == "nn_n_minus_2":
        if spec.family != "NN" or spec.k != spec.n - 2 or spec.n < 4:
            raise DomainError(f"{spec.describe()} is not an NN(n, n-2) game")
        return lambda pos: PredicateReport(
            "NN_n_minus_2", p_window_n_minus_2(as_position(pos, spec))
        )
    if name == "path":
        if spec.family != "PN" or spec.k is None or 2 * spec.k < spec.n:
            raise DomainError(
                f"{spec.describe()} is not a PathNim game with k >= ceil(n/2)"
            )
        return lambda pos: PredicateReport("PN_split", p_path(spec, pos))
    if name == "cn_small":
        if spec.family != "CN" or (spec.n, spec.k) not in {(3, 2), (4, 2)}:
            raise DomainError(f"{spec.describe()} is not CN(3,2) or CN(4,2)")
        return lambda pos: PredicateReport(
            f"CN_{spec.n}_{spec.k}", p_circular_small(spec, pos)
        )
    raise DomainError(f"unknown predicate {name!r}; expected one of {PREDICATE_NAMES}")
