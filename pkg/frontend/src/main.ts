// Page controller: owns one BoardView, talks to the play service, and
// re-renders after every state change. One request in flight at a time;
// inputs are disabled while waiting.

import { ApiClient } from "./api.js";
import { renderBoard } from "./render.js";
import {
    BoardView,
    applyHint,
    applySession,
    emptyBoard,
    setBusy,
    setError,
    selectMoveSet,
    stepPending,
    toMoveJson,
} from "./state.js";
import { AnalysisJson, ServerError } from "./types.js";

const boardRoot = document.getElementById("board") as HTMLElement;
const form = document.getElementById("new-game") as HTMLFormElement;
const serverInput = document.getElementById("server") as HTMLInputElement;

let view: BoardView = emptyBoard();
let analysis: AnalysisJson | null = null;
let client = new ApiClient(serverInput.value);

function redraw(): void {
    renderBoard(boardRoot, view, analysis, {
        onSelectSet(setIndex) {
            view = selectMoveSet(view, setIndex);
            redraw();
        },
        onStep(stack, delta) {
            view = stepPending(view, stack, delta);
            redraw();
        },
        onSubmit() {
            void submitMove();
        },
        onEngineMove() {
            void engineMove();
        },
        onHint() {
            void fetchHint();
        },
    });
}

async function guarded(action: () => Promise<void>): Promise<void> {
    if (view.busy) return;
    view = setBusy(view, true);
    redraw();
    try {
        await action();
    } catch (err) {
        const message =
            err instanceof ServerError ? err.message : String(err);
        view = setError(view, message);
    } finally {
        view = setBusy(view, false);
        redraw();
    }
}

async function refreshAnalysis(): Promise<void> {
    if (view.session === null) {
        analysis = null;
        return;
    }
    analysis = await client.analysis(view.session.id);
}

async function submitMove(): Promise<void> {
    await guarded(async () => {
        if (view.session === null) return;
        const session = await client.submitMove(view.session.id, toMoveJson(view));
        view = applySession(view, session);
        await refreshAnalysis();
    });
}

async function engineMove(): Promise<void> {
    await guarded(async () => {
        if (view.session === null) return;
        const reply = await client.engineMove(view.session.id);
        view = applySession(view, reply.session);
        if (reply.note) {
            view = { ...view, note: reply.note };
        }
        await refreshAnalysis();
    });
}

async function fetchHint(): Promise<void> {
    await guarded(async () => {
        if (view.session === null) return;
        const hint = await client.hint(view.session.id);
        view = applyHint(view, hint);
    });
}

form.addEventListener("submit", (event) => {
    event.preventDefault();
    void guarded(async () => {
        client = new ApiClient(serverInput.value);
        const data = new FormData(form);
        const family = String(data.get("family") ?? "NN");
        const n = Number(data.get("n"));
        const k = Number(data.get("k"));
        const heights = String(data.get("heights") ?? "")
            .split(",")
            .map((part) => Number(part.trim()));
        const first = String(data.get("first") ?? "human") as
            | "human"
            | "engine";
        const session = await client.createGame({ family, n, k }, heights, first);
        view = applySession(emptyBoard(), session);
        await refreshAnalysis();
    });
});

redraw();
