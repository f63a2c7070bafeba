// Minimal graph6 decoder for the board (panels are capped at 32 vertices,
// so only the single-byte order header is needed).

export interface DecodedGraph {
  n: number;
  edges: [number, number][];
  adj: boolean[][];
}

export class Graph6Error extends Error {}

export function decodeGraph6(text: string): DecodedGraph {
  if (text.length === 0) {
    throw new Graph6Error("empty graph6 string");
  }
  const codes = [...text].map((ch) => ch.charCodeAt(0) - 63);
  if (codes.some((c) => c < 0 || c > 63)) {
    throw new Graph6Error("invalid graph6 character");
  }
  const n = codes[0];
  if (n === 63) {
    throw new Graph6Error("multi-byte order headers are not supported");
  }
  const need = Math.ceil((n * (n - 1)) / 2 / 6);
  if (codes.length - 1 !== need) {
    throw new Graph6Error("graph6 body has the wrong length");
  }
  const bits: number[] = [];
  for (const c of codes.slice(1)) {
    for (let b = 5; b >= 0; b--) {
      bits.push((c >> b) & 1);
    }
  }
  const adj: boolean[][] = Array.from({ length: n }, () =>
    new Array<boolean>(n).fill(false),
  );
  const edges: [number, number][] = [];
  let idx = 0;
  for (let j = 1; j < n; j++) {
    for (let i = 0; i < j; i++) {
      if (bits[idx] === 1) {
        adj[i][j] = adj[j][i] = true;
        edges.push([i, j]);
      }
      idx += 1;
    }
  }
  if (bits.slice(idx).some((b) => b === 1)) {
    throw new Graph6Error("nonzero padding bits");
  }
  return { n, edges, adj };
}
