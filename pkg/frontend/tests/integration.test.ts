// Full-stack test: spawns the Python game service and drives a scripted
// session through the HTTP client, exactly as the browser board would.

import { spawn, type ChildProcess } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";
import { ApiClient } from "../src/api.js";
import { deriveBoard } from "../src/board.js";

const PORT = 8931;
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;

async function waitForServer(): Promise<void> {
  const deadline = Date.now() + 30_000;
  while (Date.now() < deadline) {
    try {
      const res = await fetch(`${BASE}/sessions/probe`);
      if (res.status === 404) {
        return;
      }
    } catch {
      // not up yet
    }
    await new Promise((r) => setTimeout(r, 200));
  }
  throw new Error("game service did not come up");
}

beforeAll(async () => {
  server = spawn(
    "python3",
    ["-m", "uvicorn", "fograph.service:app", "--port", String(PORT),
     "--log-level", "warning"],
    { stdio: "ignore" },
  );
  await waitForServer();
}, 40_000);

afterAll(() => {
  server.kill();
});

describe("scripted session against the live service", () => {
  const api = new ApiClient(BASE);

  it("human spoiler wins K1 vs K2 in two moves, with verbatim hints", async () => {
    const id = await api.createSession({ g: "@", h: "A_", role: "Spoiler", k: 2 });
    let session = await api.getSession(id);
    expect(session.status).toBe("awaiting-human");

    // hint badges must reproduce the analysis payload byte for byte
    const raw = await (await fetch(`${BASE}/sessions/${id}/analysis`)).text();
    const analysis = JSON.parse(raw);
    const board = deriveBoard(session, analysis, true);
    for (const hint of analysis.hints) {
      const panel = board.panels[hint.side === "G" ? 0 : 1];
      const badge = panel.vertices[hint.vertex].badge;
      if (hint.value === null) {
        expect(badge).toBeNull();
      } else {
        expect(badge).toBe(JSON.stringify(hint.value));
        expect(raw).toContain(`"value":${badge}`);
      }
    }
    const k2Hints = analysis.hints.filter((h: { side: string }) => h.side === "H");
    expect(k2Hints.map((h: { value: number }) => h.value)).toEqual([2, 2]);

    session = await api.postMove(id, "H", 0);
    expect(session.status).toBe("awaiting-human");
    expect(session.round).toBe(1);
    expect(session.history.filter((m) => m.by === "engine")).toHaveLength(1);

    session = await api.postMove(id, "H", 1);
    expect(session.status).toBe("spoiler-won");
    expect(session.round).toBe(2);
    expect(session.history.filter((m) => m.by === "human")).toHaveLength(2);

    // terminal board: banner and violated pair, no hints
    const after = deriveBoard(session, null, true);
    expect(after.banner).toBe("You won");
    expect(after.violatedRounds).toEqual([1, 2]);
    expect(after.panels.every((p) => p.vertices.every((v) => v.badge === null)))
      .toBe(true);

    // terminal analysis is empty and moves are refused
    const done = await api.getAnalysis(id);
    expect(done).toEqual({ budget: 0, hints: [] });
    const err = await api.postMove(id, "H", 0).catch((e) => e);
    expect(err.status).toBe(409);
  }, 30_000);

  it("renders identical boards from refetched state", async () => {
    const id = await api.createSession({ g: "Bw", h: "Bg", role: "Spoiler", k: 3 });
    await api.postMove(id, "G", 0);
    const s1 = await api.getSession(id);
    const s2 = await api.getSession(id);
    expect(deriveBoard(s1, null, false)).toEqual(deriveBoard(s2, null, false));
  }, 30_000);

  it("surfaces illegal duplicator replies inline", async () => {
    const id = await api.createSession({
      g: "Bw",
      h: "Bg",
      role: "Duplicator",
      k: 3,
    });
    const session = await api.getSession(id);
    expect(session.pending).not.toBeNull();
    const sameSide = session.pending![0] === 0 ? "G" : "H";
    const err = await api.postMove(id, sameSide, 0).catch((e) => e);
    expect(err.status).toBe(400);
    expect(err.message).toMatch(/other graph/);
    // the failed call left the session untouched
    const again = await api.getSession(id);
    expect(again.round).toBe(session.round);
  }, 30_000);
});
