"""JSON wire formats for specs, positions, and moves.

Spec + position:  ``{"family": "NN", "n": 10, "k": 5, "heights": [...]}``
Generic spec:     ``{"family": "SET", "n": 4, "move_sets": [[1, 2], [2, 3], [4]]}``
Move:             ``{"set": 3, "removals": [0, 0, 3, 2, 3, 0, 0, 0, 0, 0]}``

Vertex indices and set indices are 1-based on the wire.
"""

from __future__ import annotations

from .errors import GameParameterError, IllegalMoveError
from .games import GameSpec, Move, Position, as_position, build_spec


def spec_to_json(spec: GameSpec) -> dict:
    obj: dict = {"family": spec.family, "n": spec.n}
    if spec.k is not None:
        obj["k"] = spec.k
    if spec.c is not None:
        obj["c"] = spec.c
    if spec.family == "SET":
        obj["move_sets"] = [list(ms) for ms in spec.move_sets]
    return obj


def spec_from_json(obj: dict) -> GameSpec:
    if not isinstance(obj, dict) or "family" not in obj:
        raise GameParameterError("spec JSON must be an object with a 'family' key")
    return build_spec(
        obj["family"],
        n=obj.get("n"),
        k=obj.get("k"),
        c=obj.get("c"),
        move_sets=obj.get("move_sets"),
    )


def position_from_json(obj, spec: GameSpec | None = None) -> Position:
    """Accept either a bare list of heights or {"heights": [...]}."""
    if isinstance(obj, dict):
        if "heights" not in obj:
            raise IllegalMoveError("position JSON must carry a 'heights' list")
        obj = obj["heights"]
    if not isinstance(obj, (list, tuple)):
        raise IllegalMoveError("heights must be a list of integers")
    return as_position(obj, spec)


def move_to_json(move: Move) -> dict:
    return {"set": move.set_index, "removals": list(move.removals)}


def move_from_json(obj: dict, spec: GameSpec) -> Move:
    if not isinstance(obj, dict) or "set" not in obj or "removals" not in obj:
        raise IllegalMoveError("move JSON must carry 'set' and 'removals'")
    removals = obj["removals"]
    if not isinstance(removals, (list, tuple)):
        raise IllegalMoveError("removals must be a list of integers")
    if len(removals) != spec.n:
        raise IllegalMoveError(
            f"removal vector has length {len(removals)}, expected {spec.n}"
        )
    return Move(int(obj["set"]), tuple(int(r) for r in removals))
