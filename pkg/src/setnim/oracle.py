"""Ground-truth outcome classification by memoized exhaustive search.

A position is a previous-player win ("P") iff it has no legal move or
every option is a next-player win ("N"); the terminal all-zero position
is P.  ``Oracle`` memoizes outcomes per game structure, so the family
tag on a spec is irrelevant: NN(4,2) and CN(4,2) share one table.

Options are deduplicated by resulting position before recursion; the
windows of the path-like families overlap heavily, and this dedup is the
dominant constant-factor saving.  Classification uses an explicit work
list instead of recursion so tall positions cannot hit the interpreter
stack limit.

Budgets guard against runaway sweeps: exceeding the memo-entry or the
generated-option budget raises :class:`BudgetExceededError`, which always
means "too large", never a wrong answer.

Thread safety: outcomes are deterministic, so concurrent writes of the
same key are idempotent and the plain dict behaves as one logical map.
Sweeps may partition the position space across workers sharing the cache.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator

from .errors import BudgetExceededError, DomainError
from .games import (
    GameSpec,
    Move,
    Position,
    apply_move,
    as_position,
    legal_moves,
    mirror,
    reversal_symmetric,
)

P = "P"
N = "N"

DEFAULT_MAX_MEMO = 10_000_000
DEFAULT_MAX_OPTIONS = 1_000_000_000


@dataclass
class CacheStats:
    hits: int = 0
    misses: int = 0
    options_generated: int = 0


@dataclass
class _Table:
    """Memo table for one game structure."""

    outcomes: dict[Position, str] = field(default_factory=dict)


def option_positions(spec: GameSpec, pos: Position) -> Iterator[Position]:
    """Yield the distinct positions reachable in one move."""
    seen: set[Position] = set()
    for ms in spec.move_sets:
        idx = [v - 1 for v in ms]
        cur = tuple(pos[i] for i in idx)
        for combo in product(*(range(h + 1) for h in cur)):
            if combo == cur:
                continue
            q = list(pos)
            for i, h in zip(idx, combo):
                q[i] = h
            t = tuple(q)
            if t not in seen:
                seen.add(t)
                yield t


class Oracle:
    """Memoized exhaustive classifier with configurable budgets."""

    def __init__(
        self,
        max_memo_entries: int = DEFAULT_MAX_MEMO,
        max_options: int = DEFAULT_MAX_OPTIONS,
    ) -> None:
        self.max_memo_entries = max_memo_entries
        self.max_options = max_options
        self.stats = CacheStats()
        self._tables: dict[tuple, _Table] = {}

    def _table(self, spec: GameSpec) -> _Table:
        key = spec.structure
        table = self._tables.get(key)
        if table is None:
            table = self._tables.setdefault(key, _Table())
        return table

    def _memo_size(self) -> int:
        return sum(len(t.outcomes) for t in self._tables.values())

    def _charge_options(self, count: int) -> None:
        self.stats.options_generated += count
        if self.stats.options_generated > self.max_options:
            raise BudgetExceededError(
                f"generated more than {self.max_options} options"
            )

    def _check_memo_budget(self) -> None:
        if self._memo_size() > self.max_memo_entries:
            raise BudgetExceededError(
                f"memo grew past {self.max_memo_entries} entries"
            )

    def classify(
        self, spec: GameSpec, pos, *, mirror_canonical: bool = False
    ) -> str:
        """Classify a position as "P" or "N".

        With ``mirror_canonical`` the memo key is the lexicographic
        minimum of the position and its reversal; this is only sound for
        reversal-symmetric specs and is validated against the plain
        oracle in the test suite.
        """
        pos = as_position(pos, spec)
        if mirror_canonical:
            if not reversal_symmetric(spec):
                raise DomainError(
                    "mirror canonicalization requires a reversal-symmetric spec"
                )
            pos = min(pos, mirror(pos))
        table = self._table(spec).outcomes
        cached = table.get(pos)
        if cached is not None:
            self.stats.hits += 1
            return cached
        self.stats.misses += 1
        self._solve(spec, pos, table, mirror_canonical)
        return table[pos]

    def _solve(
        self,
        spec: GameSpec,
        root: Position,
        table: dict[Position, str],
        mirror_canonical: bool,
    ) -> None:
        stack = [root]
        while stack:
            cur = stack[-1]
            if cur in table:
                stack.pop()
                continue
            unknown: list[Position] = []
            outcome = P
            generated = 0
            for opt in option_positions(spec, cur):
                generated += 1
                if mirror_canonical:
                    opt = min(opt, mirror(opt))
                known = table.get(opt)
                if known == P:
                    outcome = N
                    break
                if known is None:
                    unknown.append(opt)
            self._charge_options(generated)
            if outcome == N:
                table[cur] = N
                stack.pop()
            elif not unknown:
                table[cur] = P
                stack.pop()
            else:
                stack.extend(unknown)
                self._check_memo_budget()

    def winning_options(self, spec: GameSpec, pos) -> list[Move]:
        """All legal moves whose resulting position classifies P.

        Empty exactly when the position is P (or terminal).
        """
        pos = as_position(pos, spec)
        wins = []
        for move in legal_moves(spec, pos):
            result = apply_move(spec, pos, move)
            if self.classify(spec, result) == P:
                wins.append(move)
        return wins

    def first_winning_option(self, spec: GameSpec, pos) -> Move | None:
        pos = as_position(pos, spec)
        for move in legal_moves(spec, pos):
            if self.classify(spec, apply_move(spec, pos, move)) == P:
                return move
        return None

    def classify_all(
        self, spec: GameSpec, height_cap: int, workers: int = 1
    ) -> dict[Position, str]:
        """Classify every position with all heights <= ``height_cap``.

        Positions are processed in increasing total-token order, so every
        option is already memoized when its parent is reached; with
        ``workers > 1`` each token layer is split across a thread pool
        sharing the memo table.
        """
        if height_cap < 0:
            raise DomainError(f"height cap must be >= 0, got {height_cap}")
        table = self._table(spec).outcomes
        layers: dict[int, list[Position]] = {}
        for pos in product(range(height_cap + 1), repeat=spec.n):
            layers.setdefault(sum(pos), []).append(pos)
        out: dict[Position, str] = {}
        for total in sorted(layers):
            layer = layers[total]
            if workers > 1 and len(layer) > workers:
                chunk = (len(layer) + workers - 1) // workers
                parts = [layer[i : i + chunk] for i in range(0, len(layer), chunk)]
                with ThreadPoolExecutor(max_workers=workers) as pool:
                    list(pool.map(lambda part: self._fill_layer(spec, part, table), parts))
            else:
                self._fill_layer(spec, layer, table)
            self._check_memo_budget()
            for pos in layer:
                out[pos] = table[pos]
        return out

    def _fill_layer(
        self, spec: GameSpec, layer: Iterable[Position], table: dict[Position, str]
    ) -> None:
        for pos in layer:
            if pos in table:
                self.stats.hits += 1
                continue
            self.stats.misses += 1
            outcome = P
            generated = 0
            for opt in option_positions(spec, pos):
                generated += 1
                if table[opt] == P:
                    outcome = N
                    break
            table[pos] = outcome
            self._charge_options(generated)

    def enumerate_p_positions(self, spec: GameSpec, height_cap: int) -> set[Position]:
        """Exactly the positions with all heights <= cap that classify P."""
        outcomes = self.classify_all(spec, height_cap)
        return {pos for pos, outcome in outcomes.items() if outcome == P}


_default: Oracle | None = None


def default_oracle() -> Oracle:
    """Process-wide shared oracle (cache shared across callers/sessions)."""
    global _default
    if _default is None:
        _default = Oracle()
    return _default
