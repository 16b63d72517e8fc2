"""Command-line interface: classify, move, enumerate, verify, reduce,
trace, coverage, and serve.

Exit codes: 0 success (or sweep agreement), 1 sweep disagreement,
2 usage error, 3 resource budget exceeded.  The environment variable
``NN_BUDGET`` overrides the oracle budgets, either as a single integer
applied to the memo-entry budget or as ``memo,options``.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from . import serialize
from .characterize import (
    PREDICATE_NAMES,
    closed_form,
    derived_quantities,
    is_half_window,
    predicate_for,
)
from .errors import BudgetExceededError, SetNimError
from .games import GameSpec, as_position, build_spec
from .oracle import Oracle
from .reductions import reduction_pipeline
from .strategy import delta_alg, small_delta, two_delta, winning_move

EXIT_OK = 0
EXIT_DISAGREEMENT = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def oracle_from_env() -> Oracle:
    raw = os.environ.get("NN_BUDGET")
    if not raw:
        return Oracle()
    parts = [p for p in raw.replace(":", ",").split(",") if p]
    try:
        numbers = [int(p) for p in parts]
    except ValueError:
        raise SetNimError(f"NN_BUDGET must be integers, got {raw!r}")
    if len(numbers) == 1:
        return Oracle(max_memo_entries=numbers[0])
    return Oracle(max_memo_entries=numbers[0], max_options=numbers[1])


def _add_spec_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--family", default="NN", help="NN, PN, CN, NIM, MOORE, NNg, or SET")
    parser.add_argument("--n", type=int)
    parser.add_argument("--k", type=int)
    parser.add_argument("--c", type=int)
    parser.add_argument(
        "--move-sets",
        help='JSON list of move sets for family SET, e.g. "[[1,2],[2,3],[4]]"',
    )
    parser.add_argument(
        "--spec", help="path to a spec JSON file (overrides the flags above)"
    )


def _spec_from_args(args) -> GameSpec:
    if args.spec:
        with open(args.spec) as fh:
            return serialize.spec_from_json(json.load(fh))
    move_sets = json.loads(args.move_sets) if args.move_sets else None
    return build_spec(args.family, n=args.n, k=args.k, c=args.c, move_sets=move_sets)


def _pos_from_args(args, spec: GameSpec):
    raw = args.pos
    if raw.startswith("@"):
        with open(raw[1:]) as fh:
            return serialize.position_from_json(json.load(fh), spec)
    return as_position([part for part in raw.split(",") if part != ""], spec)


def _format_report(report) -> str:
    if report.holds:
        if report.predicate == "S_ell":
            return "S_ell: SE ok, ME ok"
        return f"{report.predicate}: holds"
    return f"{report.predicate}: {report.witness}"


def cmd_classify(args) -> int:
    spec = _spec_from_args(args)
    pos = _pos_from_args(args, spec)
    report = None if args.oracle else closed_form(spec, pos)
    if report is None:
        oracle = oracle_from_env()
        outcome = oracle.classify(spec, pos)
        detail = "oracle"
    else:
        outcome = "P" if report.holds else "N"
        detail = _format_report(report)
    if args.json:
        payload = {"pos": list(pos), "outcome": outcome}
        if report is not None:
            payload["predicate"] = report.to_json()
        print(json.dumps(payload))
    else:
        print(f"{outcome} ({detail})")
    return EXIT_OK


def cmd_move(args) -> int:
    spec = _spec_from_args(args)
    pos = _pos_from_args(args, spec)
    sm = winning_move(spec, pos, oracle_from_env())
    if sm is None:
        print("P-position: no winning move")
        return EXIT_OK
    payload = serialize.move_to_json(sm.move)
    payload["result"] = list(sm.result)
    print(json.dumps(payload))
    if args.trace:
        for tr in sm.traces:
            print(f"[{tr.algorithm}]")
            print(tr.render())
    return EXIT_OK


def cmd_enumerate(args) -> int:
    spec = _spec_from_args(args)
    oracle = oracle_from_env()
    outcomes = oracle.classify_all(spec, args.cap, workers=args.workers)
    for pos in sorted(p for p, o in outcomes.items() if o == "P"):
        print(json.dumps({"pos": list(pos), "outcome": "P"}))
    return EXIT_OK


def cmd_verify(args) -> int:
    spec = _spec_from_args(args)
    predicate = predicate_for(args.predicate, spec)
    oracle = oracle_from_env()
    if args.sample:
        rng = random.Random(args.seed)
        positions = sorted(
            tuple(rng.randint(0, args.cap) for _ in range(spec.n))
            for _ in range(args.sample)
        )
        outcomes = {pos: oracle.classify(spec, pos) for pos in positions}
    else:
        outcomes = oracle.classify_all(spec, args.cap, workers=args.workers)
    disagreements = []
    for pos in sorted(outcomes):
        oracle_outcome = outcomes[pos]
        predicted = "P" if predicate(pos).holds else "N"
        if predicted != oracle_outcome:
            disagreements.append(
                {"pos": list(pos), "oracle": oracle_outcome, "predicate": predicted}
            )
    for entry in disagreements:
        print(json.dumps(entry))
    print(f"{len(outcomes)} positions, {len(disagreements)} disagreements")
    return EXIT_OK if not disagreements else EXIT_DISAGREEMENT


def cmd_reduce(args) -> int:
    spec = _spec_from_args(args)
    pos = _pos_from_args(args, spec)
    final_spec, final_pos, steps = reduction_pipeline(spec, pos)
    if args.json:
        print(json.dumps({"steps": steps, "final_pos": list(final_pos)}))
        return EXIT_OK
    if not steps:
        print("no reduction applies")
    for step in steps:
        detail = {k: v for k, v in step.items() if k not in {"spec", "pos", "move_sets"}}
        print(f"{step['kind']}: {json.dumps(detail)}")
        print(f"  -> pos {step['pos']} move sets {step['move_sets']}")
    recognized = steps[-1].get("recognized") if steps else None
    if recognized:
        print(f"reduced game: {recognized}")
    return EXIT_OK


def cmd_trace(args) -> int:
    spec = _spec_from_args(args)
    pos = _pos_from_args(args, spec)
    runner = {
        "two-delta": two_delta,
        "delta": delta_alg,
        "small-delta": small_delta,
    }[args.alg]
    result, trace = runner(spec, pos)
    if args.json:
        print(json.dumps({"result": list(result), "trace": trace.to_json()}))
    else:
        print(trace.render())
        print(f"result: {result}")
    return EXIT_OK


def cmd_coverage(args) -> int:
    """Textual grid of solved (n, k) pairs: a letter per closed form."""
    max_n = args.max_n
    print("n\\k " + " ".join(f"{k:>2}" for k in range(2, max_n + 1)))
    for n in range(2, max_n + 1):
        cells = []
        for k in range(2, n + 1):
            spec = build_spec("NN", n=n, k=k)
            report = closed_form(spec, (0,) * n)
            if report is None:
                cells.append(" .")
            elif is_half_window(spec):
                cells.append(" S")
            elif k == n:
                cells.append(" W")
            else:
                cells.append(" A")
        print(f"{n:>3} " + " ".join(cells))
    print(
        "S = half-window closed form, A = merges to a half-window game, "
        "W = whole-board window, . = unsolved"
    )
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .api import create_app

    app = create_app(oracle=oracle_from_env(), snapshot_dir=args.snapshot_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="setnim",
        description="NecklaceNim / SetNim engine, verifier, and play service",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify a position as P or N")
    _add_spec_args(p)
    p.add_argument("--pos", required=True, help="comma list of heights or @file.json")
    p.add_argument("--oracle", action="store_true", help="force exhaustive search")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("move", help="print a certified winning move")
    _add_spec_args(p)
    p.add_argument("--pos", required=True)
    p.add_argument("--trace", action="store_true", help="render algorithm traces")
    p.set_defaults(func=cmd_move)

    p = sub.add_parser("enumerate", help="list P-positions up to a height cap")
    _add_spec_args(p)
    p.add_argument("--cap", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="closed form vs oracle, exhaustively")
    _add_spec_args(p)
    p.add_argument("--cap", type=int, required=True)
    p.add_argument("--predicate", default="auto", choices=PREDICATE_NAMES)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument(
        "--sample", type=int, default=0,
        help="check this many random positions instead of sweeping exhaustively",
    )
    p.add_argument(
        "--seed", type=int, default=0, help="seed for --sample, for reproducibility"
    )
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reduce", help="print the reduction pipeline for a position")
    _add_spec_args(p)
    p.add_argument("--pos", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("trace", help="render an algorithm table")
    _add_spec_args(p)
    p.add_argument("--alg", required=True, choices=["two-delta", "delta", "small-delta"])
    p.add_argument("--pos", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("coverage", help="grid of solved necklace games")
    p.add_argument("--max-n", type=int, default=10)
    p.set_defaults(func=cmd_coverage)

    p = sub.add_parser("serve", help="start the play API")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--snapshot-dir", default=None)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (SetNimError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
