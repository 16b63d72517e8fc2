// Input-gating state machine for the board. This is the only "logic" in
// the client, and it is pure gating: which region is selected, how many
// tokens are pending per stack, and whether a submission is allowed.
// Game truth (legality, outcomes, analysis) always comes from the server.

import { HintJson, MoveJson, SessionJson } from "./types.js";

export interface BoardView {
    session: SessionJson | null;
    selectedSet: number | null; // 1-based index into session.move_sets
    pending: number[]; // per-stack removal amounts
    hinted: boolean; // pending was filled in from a server hint
    busy: boolean; // one in-flight request per session
    error: string | null; // the server's message, verbatim
    note: string | null;
}

export function emptyBoard(): BoardView {
    return {
        session: null,
        selectedSet: null,
        pending: [],
        hinted: false,
        busy: false,
        error: null,
        note: null,
    };
}

export function applySession(view: BoardView, session: SessionJson): BoardView {
    return {
        ...view,
        session,
        selectedSet: null,
        pending: session.heights.map(() => 0),
        hinted: false,
        error: null,
    };
}

export function humanCanAct(view: BoardView): boolean {
    return (
        view.session !== null &&
        view.session.status === "ongoing" &&
        view.session.to_move === "human" &&
        !view.busy
    );
}

function regionStacks(view: BoardView): Set<number> {
    if (view.session === null || view.selectedSet === null) {
        return new Set();
    }
    return new Set(view.session.move_sets[view.selectedSet - 1]);
}

export function selectMoveSet(view: BoardView, setIndex: number): BoardView {
    if (!humanCanAct(view) || view.session === null) {
        return view;
    }
    if (setIndex < 1 || setIndex > view.session.move_sets.length) {
        return view;
    }
    return {
        ...view,
        selectedSet: setIndex,
        pending: view.session.heights.map(() => 0),
        hinted: false,
        error: null,
    };
}

export function stackEditable(view: BoardView, stack: number): boolean {
    return humanCanAct(view) && regionStacks(view).has(stack);
}

// Step one stack's pending removal by +1/-1, clamped to [0, height].
// Stacks outside the highlighted region never change.
export function stepPending(
    view: BoardView,
    stack: number,
    delta: number,
): BoardView {
    if (!stackEditable(view, stack) || view.session === null) {
        return view;
    }
    const height = view.session.heights[stack - 1];
    const next = view.pending.slice();
    const value = next[stack - 1] + delta;
    if (value < 0 || value > height) {
        return view;
    }
    next[stack - 1] = value;
    return { ...view, pending: next, hinted: false };
}

export function pendingTotal(view: BoardView): number {
    return view.pending.reduce((a, b) => a + b, 0);
}

export function canSubmit(view: BoardView): boolean {
    if (!humanCanAct(view) || view.selectedSet === null || view.session === null) {
        return false;
    }
    if (pendingTotal(view) < 1) {
        return false;
    }
    const region = regionStacks(view);
    return view.pending.every(
        (amount, index) =>
            amount === 0 ||
            (region.has(index + 1) &&
                amount <= view.session!.heights[index]),
    );
}

// The request is exactly the displayed state: the selected set and the
// pending vector, nothing recomputed.
export function toMoveJson(view: BoardView): MoveJson {
    if (view.selectedSet === null) {
        throw new Error("no move set selected");
    }
    return { set: view.selectedSet, removals: view.pending.slice() };
}

// A hint is rendered as if the human had dialed it in: the hinted set is
// highlighted and its removals become the pending amounts.
export function applyHint(view: BoardView, hint: HintJson): BoardView {
    if (hint.move === null) {
        return { ...view, note: hint.message, hinted: false };
    }
    if (view.session === null) {
        return view;
    }
    return {
        ...view,
        selectedSet: hint.move.set,
        pending: hint.move.removals.slice(),
        hinted: true,
        note: null,
        error: null,
    };
}

export function setBusy(view: BoardView, busy: boolean): BoardView {
    return { ...view, busy };
}

export function setError(view: BoardView, message: string): BoardView {
    return { ...view, error: message };
}
