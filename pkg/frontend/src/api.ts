// Thin fetch client for the play service. Server errors arrive as
// {"error": {"code", "message"}} and are re-thrown as ServerError so the
// UI can surface the message unchanged.

import {
    AnalysisJson,
    EngineReplyJson,
    HintJson,
    MoveJson,
    SessionJson,
    SpecJson,
    ServerError,
} from "./types.js";

async function unwrap<T>(response: Response): Promise<T> {
    const body = await response.json().catch(() => null);
    if (!response.ok) {
        const message =
            body && body.error && typeof body.error.message === "string"
                ? body.error.message
                : `HTTP ${response.status}`;
        throw new ServerError(response.status, message);
    }
    return body as T;
}

export class ApiClient {
    constructor(private readonly baseUrl: string) {}

    private url(path: string): string {
        return this.baseUrl.replace(/\/$/, "") + path;
    }

    async createGame(
        spec: SpecJson,
        heights: number[],
        first: "human" | "engine" = "human",
    ): Promise<SessionJson> {
        const response = await fetch(this.url("/games"), {
            method: "POST",
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify({ spec, heights, first }),
        });
        return unwrap<SessionJson>(response);
    }

    async getGame(id: string): Promise<SessionJson> {
        return unwrap<SessionJson>(await fetch(this.url(`/games/${id}`)));
    }

    async submitMove(id: string, move: MoveJson): Promise<SessionJson> {
        const response = await fetch(this.url(`/games/${id}/moves`), {
            method: "POST",
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify(move),
        });
        return unwrap<SessionJson>(response);
    }

    async engineMove(id: string): Promise<EngineReplyJson> {
        const response = await fetch(this.url(`/games/${id}/engine-move`), {
            method: "POST",
        });
        return unwrap<EngineReplyJson>(response);
    }

    async analysis(id: string): Promise<AnalysisJson> {
        return unwrap<AnalysisJson>(
            await fetch(this.url(`/games/${id}/analysis`)),
        );
    }

    async hint(id: string): Promise<HintJson> {
        return unwrap<HintJson>(await fetch(this.url(`/games/${id}/hint`)));
    }
}
