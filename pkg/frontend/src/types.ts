// Wire types for the play service. Everything here mirrors the server's
// JSON exactly; the client never derives game facts on its own.

export interface SpecJson {
    family: string;
    n: number;
    k?: number;
    c?: number;
    move_sets?: number[][];
}

export interface MoveJson {
    set: number; // 1-based index into the session's move_sets
    removals: number[]; // full-length, zero outside the chosen set
}

export interface HistoryEntry {
    mover: "human" | "engine";
    move: MoveJson;
}

export interface SessionJson {
    id: string;
    spec: SpecJson;
    move_sets: number[][]; // server-reported, 1-based vertices
    heights: number[];
    initial: number[];
    to_move: "human" | "engine";
    status: "ongoing" | "won";
    winner: "human" | "engine" | null;
    history: HistoryEntry[];
}

export interface PredicateJson {
    predicate: string;
    holds: boolean;
    witness: string | null;
}

export interface DerivedJson {
    A: number;
    B: number;
    m: number;
    s: number[];
    s_star: number;
    t: number;
    Delta: number;
    delta: number;
}

export interface AnalysisJson {
    outcome: "P" | "N";
    source: "closed_form" | "oracle";
    predicate: PredicateJson | null;
    derived: DerivedJson | null;
    SE: boolean | null;
    ME: boolean | null;
    Delta?: number;
    delta?: number;
}

export interface HintJson {
    move: MoveJson | null;
    result: number[] | null;
    message: string | null;
}

export interface EngineReplyJson {
    session: SessionJson;
    move: MoveJson;
    note?: string;
}

export class ServerError extends Error {
    readonly code: number;

    constructor(code: number, message: string) {
        super(message); // the server's invariant message, verbatim
        this.code = code;
    }
}
