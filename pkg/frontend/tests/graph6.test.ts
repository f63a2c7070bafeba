import { describe, expect, it } from "vitest";
import { decodeGraph6, Graph6Error } from "../src/graph6.js";

describe("decodeGraph6", () => {
  it("decodes the one-vertex graph", () => {
    const g = decodeGraph6("@");
    expect(g.n).toBe(1);
    expect(g.edges).toEqual([]);
  });

  it("decodes an edge and a non-edge", () => {
    expect(decodeGraph6("A_").edges).toEqual([[0, 1]]);
    expect(decodeGraph6("A?").edges).toEqual([]);
  });

  it("decodes the triangle and the path", () => {
    const k3 = decodeGraph6("Bw");
    expect(k3.edges).toEqual([
      [0, 1],
      [0, 2],
      [1, 2],
    ]);
    const p3 = decodeGraph6("Bg");
    expect(p3.edges).toEqual([
      [0, 1],
      [1, 2],
    ]);
    expect(p3.adj[0][2]).toBe(false);
    expect(p3.adj[2][1]).toBe(true);
  });

  it("decodes the five-cycle", () => {
    const c5 = decodeGraph6("Dhc");
    expect(c5.n).toBe(5);
    expect(c5.edges.length).toBe(5);
    for (let v = 0; v < 5; v++) {
      expect(c5.adj[v].filter(Boolean).length).toBe(2);
    }
  });

  it("rejects malformed strings", () => {
    expect(() => decodeGraph6("")).toThrow(Graph6Error);
    expect(() => decodeGraph6("D?")).toThrow(Graph6Error); // truncated body
    expect(() => decodeGraph6("A_x")).toThrow(Graph6Error); // trailing byte
    expect(() => decodeGraph6("A")).toThrow(Graph6Error);
  });
});
