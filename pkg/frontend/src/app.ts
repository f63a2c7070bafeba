// DOM wiring: renders the board as two SVG panels and forwards clicks
// to the service. All state shown comes from the last server payload.

import { ApiClient, ApiError, type Analysis, type SessionState } from "./api.js";
import {
  deriveBoard,
  legalClickSide,
  type BoardState,
  type PanelView,
} from "./board.js";
import { Poller } from "./poller.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export class App {
  private session: SessionState | null = null;
  private analysis: Analysis | null = null;
  private showHints = false;
  private message = "";
  private readonly poller: Poller;

  constructor(
    private readonly api: ApiClient,
    private readonly root: HTMLElement,
    private sessionId: string,
  ) {
    this.poller = new Poller(() => this.refresh());
  }

  async start(): Promise<void> {
    await this.refresh();
    this.poller.start();
  }

  private async refresh(): Promise<void> {
    try {
      this.session = await this.api.getSession(this.sessionId);
      this.analysis = this.showHints
        ? await this.api.getAnalysis(this.sessionId)
        : null;
      this.message = "";
    } catch (err) {
      // fetch failures are surfaced without touching the last board
      this.message = err instanceof Error ? err.message : String(err);
    }
    this.render();
  }

  toggleHints(): void {
    this.showHints = !this.showHints;
    void this.refresh();
  }

  private async click(side: "G" | "H", vertex: number): Promise<void> {
    const s = this.session;
    if (s === null) {
      return;
    }
    const legal = legalClickSide(s);
    if (legal === null || (legal !== "both" && legal !== side)) {
      this.flash("not your move on this panel");
      return;
    }
    const result = await this.poller.run(async () => {
      try {
        this.session = await this.api.postMove(this.sessionId, side, vertex);
        this.message = "";
      } catch (err) {
        if (err instanceof ApiError) {
          this.message = err.message;
        } else {
          throw err;
        }
      }
    });
    if (result === null) {
      return; // a request was already in flight; the click is dropped
    }
    await this.refresh();
  }

  private flash(text: string): void {
    this.message = text;
    this.render();
  }

  private render(): void {
    if (this.session === null) {
      this.root.textContent = this.message || "loading";
      return;
    }
    const board = deriveBoard(this.session, this.analysis, this.showHints);
    this.root.replaceChildren(
      this.header(board),
      ...board.panels.map((p) => this.panel(p)),
    );
  }

  private header(board: BoardState): HTMLElement {
    const div = document.createElement("div");
    div.className = "header";
    const title = document.createElement("strong");
    title.textContent = board.banner;
    const note = document.createElement("span");
    note.className = "message";
    note.textContent = this.message;
    const toggle = document.createElement("button");
    toggle.textContent = this.showHints ? "hide hints" : "show hints";
    toggle.addEventListener("click", () => this.toggleHints());
    div.append(title, ` round ${board.round} `, toggle, note);
    return div;
  }

  private panel(view: PanelView): SVGSVGElement {
    const svg = document.createElementNS(SVG_NS, "svg");
    svg.setAttribute("width", "300");
    svg.setAttribute("height", "300");
    svg.setAttribute("data-side", view.side);
    for (const [a, b] of view.edges) {
      const u = view.vertices[a];
      const v = view.vertices[b];
      const line = document.createElementNS(SVG_NS, "line");
      line.setAttribute("x1", String(u.x));
      line.setAttribute("y1", String(u.y));
      line.setAttribute("x2", String(v.x));
      line.setAttribute("y2", String(v.y));
      line.setAttribute("stroke", "#888");
      svg.append(line);
    }
    for (const v of view.vertices) {
      const c = document.createElementNS(SVG_NS, "circle");
      c.setAttribute("cx", String(v.x));
      c.setAttribute("cy", String(v.y));
      c.setAttribute("r", "14");
      c.setAttribute("fill", v.violated ? "#d33" : v.pending ? "#fc3" : "#369");
      c.addEventListener("click", () => void this.click(view.side, v.id));
      svg.append(c);
      if (v.labels.length > 0) {
        const t = document.createElementNS(SVG_NS, "text");
        t.setAttribute("x", String(v.x));
        t.setAttribute("y", String(v.y + 4));
        t.setAttribute("text-anchor", "middle");
        t.setAttribute("fill", "#fff");
        t.textContent = v.labels.join(",");
        svg.append(t);
      }
      if (v.badge !== null) {
        const b = document.createElementNS(SVG_NS, "text");
        b.setAttribute("x", String(v.x + 16));
        b.setAttribute("y", String(v.y - 12));
        b.setAttribute("class", "badge");
        b.textContent = v.badge;
        svg.append(b);
      }
    }
    return svg;
  }
}
