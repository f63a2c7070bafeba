// Pure view-model derivation: the board is a function of the last server
// payload (session state plus optional analysis), never of local state.

import type { Analysis, SessionState } from "./api.js";
import { decodeGraph6, type DecodedGraph } from "./graph6.js";

export const MAX_PANEL_VERTICES = 32;

export interface VertexView {
  id: number;
  x: number;
  y: number;
  labels: number[]; // round numbers marking this vertex, ascending
  pending: boolean; // marked by the unanswered spoiler move
  badge: string | null; // hint value, verbatim from the analysis payload
  violated: boolean;
}

export interface PanelView {
  side: "G" | "H";
  n: number;
  edges: [number, number][];
  vertices: VertexView[];
}

export interface BoardState {
  panels: [PanelView, PanelView];
  banner: string;
  status: SessionState["status"];
  yourTurn: boolean;
  round: number;
  violatedRounds: number[];
}

export interface Point {
  x: number;
  y: number;
}

export function circularLayout(
  n: number,
  cx: number,
  cy: number,
  radius: number,
): Point[] {
  // vertices sit on a circle in id order, vertex 0 at the top
  const pts: Point[] = [];
  for (let i = 0; i < n; i++) {
    const angle = -Math.PI / 2 + (2 * Math.PI * i) / Math.max(n, 1);
    pts.push({
      x: cx + radius * Math.cos(angle),
      y: cy + radius * Math.sin(angle),
    });
  }
  return pts;
}

function findViolation(
  g: DecodedGraph,
  h: DecodedGraph,
  position: [number, number][],
): number[] {
  for (let j = 0; j < position.length; j++) {
    for (let i = 0; i < j; i++) {
      const [gi, hi] = position[i];
      const [gj, hj] = position[j];
      const sameG = gi === gj;
      const sameH = hi === hj;
      if (sameG !== sameH) {
        return [i + 1, j + 1];
      }
      if (!sameG && g.adj[gi][gj] !== h.adj[hi][hj]) {
        return [i + 1, j + 1];
      }
    }
  }
  return [];
}

function banner(session: SessionState): string {
  if (session.status === "spoiler-won") {
    return session.role === "Spoiler" ? "You won" : "Spoiler won";
  }
  if (session.status === "duplicator-won") {
    return session.role === "Duplicator" ? "You won" : "Duplicator won";
  }
  if (session.pending !== null && session.role === "Duplicator") {
    return "Your reply";
  }
  return session.role === "Spoiler" ? "Your move" : "Waiting for the engine";
}

export function deriveBoard(
  session: SessionState,
  analysis: Analysis | null,
  showHints: boolean,
  geometry = { cx: 150, cy: 150, radius: 110 },
): BoardState {
  const graphs: [DecodedGraph, DecodedGraph] = [
    decodeGraph6(session.g),
    decodeGraph6(session.h),
  ];
  for (const dg of graphs) {
    if (dg.n > MAX_PANEL_VERTICES) {
      throw new Error(`panel capped at ${MAX_PANEL_VERTICES} vertices`);
    }
  }
  const violated = findViolation(graphs[0], graphs[1], session.position);
  const terminal = session.status !== "awaiting-human";
  const hintsOn = showHints && !terminal && analysis !== null;
  const panels = graphs.map((dg, sideIdx) => {
    const side = sideIdx === 0 ? "G" : "H";
    const pts = circularLayout(
      dg.n,
      geometry.cx,
      geometry.cy,
      geometry.radius,
    );
    const vertices: VertexView[] = pts.map((p, id) => {
      const labels: number[] = [];
      session.position.forEach((pair, round) => {
        if (pair[sideIdx] === id) {
          labels.push(round + 1);
        }
      });
      const pending =
        session.pending !== null &&
        session.pending[0] === sideIdx &&
        session.pending[1] === id;
      if (pending) {
        labels.push(session.round + 1);
      }
      let badge: string | null = null;
      if (hintsOn) {
        const hint = analysis.hints.find(
          (hh) => hh.side === side && hh.vertex === id,
        );
        if (hint !== undefined && hint.value !== null) {
          badge = String(hint.value);
        }
      }
      const violatedHere =
        terminal &&
        session.status === "spoiler-won" &&
        violated.some((r) => session.position[r - 1]?.[sideIdx] === id);
      return { id, x: p.x, y: p.y, labels, pending, badge, violated: violatedHere };
    });
    return { side, n: dg.n, edges: dg.edges, vertices } as PanelView;
  });
  return {
    panels: panels as [PanelView, PanelView],
    banner: banner(session),
    status: session.status,
    yourTurn: !terminal && isHumansTurn(session),
    round: session.round,
    violatedRounds: violated,
  };
}

export function isHumansTurn(session: SessionState): boolean {
  if (session.status !== "awaiting-human") {
    return false;
  }
  return session.role === "Spoiler"
    ? session.pending === null
    : session.pending !== null;
}

export function legalClickSide(session: SessionState): "G" | "H" | "both" | null {
  // which panel accepts a click right now
  if (!isHumansTurn(session)) {
    return null;
  }
  if (session.role === "Spoiler") {
    return "both";
  }
  return session.pending![0] === 0 ? "H" : "G";
}
