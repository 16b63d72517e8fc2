// DOM/SVG rendering: the necklace as token columns hanging on an arc,
// move-set chips, steppers inside the highlighted region, and the
// analysis panel. Values shown in the panel come from the server's
// response verbatim.

import {
    BoardView,
    canSubmit,
    pendingTotal,
    stackEditable,
} from "./state.js";
import { AnalysisJson, SessionJson } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const WIDTH = 940;
const HEIGHT = 430;
const MAX_DRAWN_TOKENS = 12;

export interface Handlers {
    onSelectSet(setIndex: number): void;
    onStep(stack: number, delta: number): void;
    onSubmit(): void;
    onEngineMove(): void;
    onHint(): void;
}

function el<K extends keyof HTMLElementTagNameMap>(
    tag: K,
    className?: string,
    text?: string,
): HTMLElementTagNameMap[K] {
    const node = document.createElement(tag);
    if (className) node.className = className;
    if (text !== undefined) node.textContent = text;
    return node;
}

function svgEl(tag: string, attrs: Record<string, string>): SVGElement {
    const node = document.createElementNS(SVG_NS, tag);
    for (const [key, value] of Object.entries(attrs)) {
        node.setAttribute(key, value);
    }
    return node;
}

function stackBase(index: number, count: number): { x: number; y: number } {
    const t = count === 1 ? 0.5 : (index - 1) / (count - 1);
    return {
        x: 70 + t * (WIDTH - 140),
        y: 180 + Math.sin(t * Math.PI) * 170,
    };
}

function describeSet(vertices: number[], n: number): string {
    const isWindow =
        vertices.length > 1 &&
        vertices[vertices.length - 1] - vertices[0] === vertices.length - 1;
    if (isWindow) {
        return `stacks ${vertices[0]}–${vertices[vertices.length - 1]}`;
    }
    if (vertices.length === 2 && vertices[0] === 1 && vertices[1] === n) {
        return `clasp {1, ${n}}`;
    }
    return `{${vertices.join(", ")}}`;
}

function renderBoardSvg(view: BoardView, handlers: Handlers): SVGElement {
    const session = view.session!;
    const n = session.heights.length;
    const svg = svgEl("svg", {
        viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
        class: "board",
    });
    const region = new Set(
        view.selectedSet === null
            ? []
            : session.move_sets[view.selectedSet - 1],
    );
    // the string of the necklace
    const path = svgEl("path", {
        d: Array.from({ length: n }, (_, i) => {
            const { x, y } = stackBase(i + 1, n);
            return `${i === 0 ? "M" : "L"} ${x} ${y + 14}`;
        }).join(" "),
        class: "string",
    });
    svg.appendChild(path);
    for (let stack = 1; stack <= n; stack += 1) {
        const { x, y } = stackBase(stack, n);
        const height = session.heights[stack - 1];
        const pending = view.pending[stack - 1] ?? 0;
        const group = svgEl("g", {
            class: [
                "stack",
                region.has(stack) ? "in-region" : "",
                view.hinted && pending > 0 ? "hinted" : "",
            ].join(" "),
        });
        group.appendChild(
            svgEl("circle", { cx: `${x}`, cy: `${y + 14}`, r: "17", class: "bead" }),
        );
        const drawn = Math.min(height, MAX_DRAWN_TOKENS);
        for (let t = 0; t < drawn; t += 1) {
            const removalMark = t >= drawn - Math.min(pending, drawn);
            group.appendChild(
                svgEl("circle", {
                    cx: `${x}`,
                    cy: `${y - 8 - t * 13}`,
                    r: "6",
                    class: removalMark ? "token pending" : "token",
                }),
            );
        }
        if (height > MAX_DRAWN_TOKENS) {
            group.appendChild(
                Object.assign(
                    svgEl("text", {
                        x: `${x}`,
                        y: `${y - 16 - drawn * 13}`,
                        class: "overflow",
                    }),
                    { textContent: `${height}` },
                ),
            );
        }
        const label = svgEl("text", {
            x: `${x}`,
            y: `${y + 19}`,
            class: "stack-label",
        });
        label.textContent = `${stack}`;
        group.appendChild(label);
        const caption = svgEl("text", {
            x: `${x}`,
            y: `${y + 44}`,
            class: "caption",
        });
        caption.textContent =
            pending > 0 ? `${height} − ${pending}` : `${height}`;
        group.appendChild(caption);
        if (stackEditable(view, stack)) {
            const plus = svgEl("text", {
                x: `${x - 16}`,
                y: `${y + 66}`,
                class: "stepper",
            });
            plus.textContent = "+";
            plus.addEventListener("click", () => handlers.onStep(stack, 1));
            const minus = svgEl("text", {
                x: `${x + 16}`,
                y: `${y + 66}`,
                class: "stepper",
            });
            minus.textContent = "−";
            minus.addEventListener("click", () => handlers.onStep(stack, -1));
            group.appendChild(plus);
            group.appendChild(minus);
        }
        svg.appendChild(group);
    }
    return svg;
}

function renderMoveSets(view: BoardView, handlers: Handlers): HTMLElement {
    const session = view.session!;
    const holder = el("div", "move-sets");
    session.move_sets.forEach((vertices, index) => {
        const chip = el(
            "button",
            view.selectedSet === index + 1 ? "chip selected" : "chip",
            describeSet(vertices, session.heights.length),
        );
        chip.disabled = !(
            view.session !== null &&
            view.session.status === "ongoing" &&
            view.session.to_move === "human" &&
            !view.busy
        );
        chip.addEventListener("click", () => handlers.onSelectSet(index + 1));
        holder.appendChild(chip);
    });
    return holder;
}

function renderAnalysis(analysis: AnalysisJson | null): HTMLElement {
    const panel = el("div", "analysis");
    panel.appendChild(el("h3", undefined, "analysis"));
    if (analysis === null) {
        panel.appendChild(el("p", "muted", "—"));
        return panel;
    }
    const rows: [string, string][] = [
        ["outcome", `${analysis.outcome} (${analysis.source})`],
    ];
    if (analysis.derived) {
        rows.push(["A", `${analysis.derived.A}`]);
        rows.push(["B", `${analysis.derived.B}`]);
        rows.push(["m", `${analysis.derived.m}`]);
        rows.push(["s*", `${analysis.derived.s_star}`]);
        rows.push(["Δ", `${analysis.derived.Delta}`]);
        rows.push(["δ", `${analysis.derived.delta}`]);
        rows.push(["(SE)", analysis.SE ? "holds" : "fails"]);
        rows.push(["(ME)", analysis.ME ? "holds" : "fails"]);
    }
    if (analysis.predicate && analysis.predicate.witness) {
        rows.push(["witness", analysis.predicate.witness]);
    }
    const table = el("table");
    for (const [key, value] of rows) {
        const tr = el("tr");
        tr.appendChild(el("td", "key", key));
        tr.appendChild(el("td", undefined, value));
        table.appendChild(tr);
    }
    panel.appendChild(table);
    return panel;
}

function renderHistory(session: SessionJson): HTMLElement {
    const holder = el("div", "history");
    holder.appendChild(el("h3", undefined, "moves"));
    const list = el("ol");
    for (const entry of session.history) {
        list.appendChild(
            el(
                "li",
                entry.mover,
                `${entry.mover}: set ${entry.move.set} −(${entry.move.removals.join(",")})`,
            ),
        );
    }
    holder.appendChild(list);
    return holder;
}

export function renderBoard(
    root: HTMLElement,
    view: BoardView,
    analysis: AnalysisJson | null,
    handlers: Handlers,
): void {
    root.textContent = "";
    if (view.session === null) {
        root.appendChild(el("p", "muted", "create a game to start playing"));
        return;
    }
    const session = view.session;
    const status = el("div", "status");
    if (session.status === "won") {
        status.appendChild(el("strong", undefined, `${session.winner} wins`));
    } else {
        status.appendChild(
            el("span", undefined, `${session.to_move} to move`),
        );
    }
    if (view.busy) status.appendChild(el("span", "muted", " … waiting"));
    if (view.note) status.appendChild(el("em", "note", ` ${view.note}`));
    root.appendChild(status);
    if (view.error) {
        root.appendChild(el("div", "error", view.error));
    }
    root.appendChild(renderBoardSvg(view, handlers));
    root.appendChild(renderMoveSets(view, handlers));

    const controls = el("div", "controls");
    const submit = el(
        "button",
        "primary",
        `submit move (${pendingTotal(view)} token${pendingTotal(view) === 1 ? "" : "s"})`,
    );
    submit.disabled = !canSubmit(view);
    submit.addEventListener("click", handlers.onSubmit);
    controls.appendChild(submit);

    const engine = el("button", undefined, "engine move");
    engine.disabled =
        session.status !== "ongoing" || session.to_move !== "engine" || view.busy;
    engine.addEventListener("click", handlers.onEngineMove);
    controls.appendChild(engine);

    const hint = el("button", undefined, "hint");
    hint.disabled = session.status !== "ongoing" || view.busy;
    hint.addEventListener("click", handlers.onHint);
    controls.appendChild(hint);
    root.appendChild(controls);

    const panels = el("div", "panels");
    panels.appendChild(renderAnalysis(analysis));
    panels.appendChild(renderHistory(session));
    root.appendChild(panels);
}
