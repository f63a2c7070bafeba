"""Immutable bitset graphs: sampling, isomorphism machinery, components, I/O.

Vertices are 0..n-1.  A vertex set is a plain int used as a bitmask; the
adjacency of vertex v is the bitmask ``g.adj[v]``.  Graphs are immutable
after construction and safe to share between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Iterator, Optional

import numpy as np

# Largest supported vertex count.  Exponential operations impose their own,
# much smaller caps.
MAX_VERTICES = 16384

_GOLDEN = 0x9E3779B97F4A7C15
_MASK64 = (1 << 64) - 1


class GraphError(ValueError):
    pass


def bit_indices(mask: int) -> Iterator[int]:
    """Yield the set bit positions of a mask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """Simple undirected graph over 0..n-1 with bitset adjacency rows."""

    __slots__ = ("n", "adj", "_hash")

    def __init__(self, n: int, rows: Optional[list[int]] = None):
        if n < 0 or n > MAX_VERTICES:
            raise GraphError(f"vertex count {n} outside supported range")
        self.n = n
        if rows is None:
            rows = [0] * n
        full = (1 << n) - 1
        for v, row in enumerate(rows):
            if row & (1 << v):
                raise GraphError(f"self-loop at vertex {v}")
            if row & ~full:
                raise GraphError(f"adjacency row {v} out of range")
        for v in range(n):
            for u in bit_indices(rows[v]):
                if not rows[u] & (1 << v):
                    raise GraphError(f"asymmetric adjacency {v}-{u}")
        self.adj = tuple(rows)
        self._hash = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for i, j in edges:
            if i == j:
                raise GraphError(f"self-loop at vertex {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise GraphError(f"edge ({i},{j}) out of range")
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        return cls(n, rows)

    @classmethod
    def _trusted(cls, n: int, rows: list[int]) -> "Graph":
        g = object.__new__(cls)
        g.n = n
        g.adj = tuple(rows)
        g._hash = None
        return g

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adj[i] >> j & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> Iterator[tuple[int, int]]:
        for i in range(self.n):
            for j in bit_indices(self.adj[i] >> (i + 1) << (i + 1)):
                yield (i, j)

    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.adj) // 2

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.adj))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges())})"


@dataclass(frozen=True)
class SampleParams:
    """Parameters of a seeded G(n,p) draw; q and c are derived."""

    n: int
    p: float
    seed: int

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise GraphError(f"edge probability {self.p} outside [0,1]")
        if not 0 <= self.n <= MAX_VERTICES:
            raise GraphError(f"vertex count {self.n} outside supported range")

    @property
    def q(self) -> float:
        return 1.0 - self.p

    @property
    def c(self) -> float:
        return self.p * self.n


def _mix64(x: np.ndarray) -> np.ndarray:
    """splitmix64 finalizer, vectorized over uint64."""
    x = x ^ (x >> np.uint64(30))
    x = x * np.uint64(0xBF58476D1CE4E5B9)
    x = x ^ (x >> np.uint64(27))
    x = x * np.uint64(0x94D049BB133111EB)
    return x ^ (x >> np.uint64(31))


def gnp_sample(params: SampleParams) -> Graph:
    """Draw G(n,p) deterministically from a 64-bit seed.

    The unordered pairs are ordered lexicographically ((i,j), i<j) and pair
    number k is an edge iff splitmix64(seed + (k+1)*golden) < p * 2^64.
    The stream is counter-based, so identical (n, p, seed) always produce
    the identical graph, independent of evaluation order.
    """
    n, p = params.n, params.p
    if n <= 1 or p == 0.0:
        return Graph(n)
    m = n * (n - 1) // 2
    if p >= 1.0:
        rows = [((1 << n) - 1) ^ (1 << v) for v in range(n)]
        return Graph._trusted(n, rows)
    thr = np.uint64(int(p * 2.0**64))
    seed = np.uint64(params.seed & _MASK64)
    with np.errstate(over="ignore"):
        counters = (np.arange(1, m + 1, dtype=np.uint64)) * np.uint64(_GOLDEN) + seed
        edge_bits = _mix64(counters) < thr
    mat = np.zeros((n, n), dtype=bool)
    iu, ju = np.triu_indices(n, 1)
    mat[iu, ju] = edge_bits
    mat |= mat.T
    pad = (-n) % 8
    if pad:
        mat = np.concatenate([mat, np.zeros((n, pad), dtype=bool)], axis=1)
    packed = np.packbits(mat, axis=1, bitorder="little")
    rows = [int.from_bytes(packed[v].tobytes(), "little") for v in range(n)]
    return Graph._trusted(n, rows)


def complement(g: Graph) -> Graph:
    full = g.full_mask
    rows = [(~g.adj[v]) & full & ~(1 << v) for v in range(g.n)]
    return Graph._trusted(g.n, rows)


def common_neighbors(g: Graph, w: int) -> int:
    """N(W): vertices adjacent to every vertex of w.  N(empty) = V."""
    acc = g.full_mask
    for v in bit_indices(w):
        acc &= g.adj[v]
    return acc


def induced_subgraph(g: Graph, vmask: int) -> tuple[Graph, list[int]]:
    """Induced subgraph on the vertices of vmask; returns (graph, old ids).

    New vertex i corresponds to the i-th smallest member of vmask.
    """
    verts = list(bit_indices(vmask))
    index = {v: i for i, v in enumerate(verts)}
    rows = [0] * len(verts)
    for i, v in enumerate(verts):
        for u in bit_indices(g.adj[v] & vmask):
            rows[i] |= 1 << index[u]
    return Graph._trusted(len(verts), rows), verts


def residual(g: Graph, xs: tuple[int, ...]) -> tuple[Graph, int]:
    """Common-neighbor residual: the induced subgraph on V_xs.

    V_xs is the set of common neighbors of all of xs, excluding xs itself.
    Returns (induced graph, vertex mask in g).  The empty tuple yields g.
    """
    if len(set(xs)) != len(xs):
        raise GraphError("residual tuple has duplicate vertices")
    if not xs:
        return g, g.full_mask
    vmask = common_neighbors(g, mask_of(xs)) & ~mask_of(xs)
    sub, _ = induced_subgraph(g, vmask)
    return sub, vmask


# ---------------------------------------------------------------------------
# Canonical forms and isomorphism


def _refine(g: Graph, colors: tuple[int, ...]) -> tuple[int, ...]:
    """Iterated color refinement; colors are canonical ranks."""
    n = g.n
    while True:
        sigs = []
        for v in range(n):
            nbr = tuple(sorted(colors[u] for u in bit_indices(g.adj[v])))
            sigs.append((colors[v], nbr))
        order = sorted(set(sigs))
        rank = {s: i for i, s in enumerate(order)}
        new = tuple(rank[s] for s in sigs)
        if new == colors:
            return new
        colors = new


def _adj_string(g: Graph, perm: list[int]) -> bytes:
    """Upper-triangle adjacency bits of g relabeled by perm (perm[i] = old id)."""
    n = g.n
    bits = bytearray()
    for i in range(n):
        vi = perm[i]
        for j in range(i + 1, n):
            bits.append(g.adj[vi] >> perm[j] & 1)
    return bytes(bits)


def _canon_search(g: Graph, colors: tuple[int, ...]) -> bytes:
    colors = _refine(g, colors)
    n = g.n
    cells: dict[int, list[int]] = {}
    for v in range(n):
        cells.setdefault(colors[v], []).append(v)
    target = None
    for c in sorted(cells):
        if len(cells[c]) > 1:
            target = cells[c]
            break
    if target is None:
        perm = sorted(range(n), key=lambda v: colors[v])
        return _adj_string(g, perm)
    pivot = colors[target[0]]
    best = None
    for v in target:
        branched = tuple(
            c + (0 if c < pivot else 1) if u != v else pivot for u, c in enumerate(colors)
        )
        s = _canon_search(g, branched)
        if best is None or s < best:
            best = s
    return best


def canonical_form(g: Graph) -> bytes:
    """Canonical adjacency string: refinement + individualization backtracking.

    Ties are broken by the smallest adjacency string, so the result is a
    complete isomorphism invariant.
    """
    if g.n == 0:
        return b""
    return bytes([g.n]) + _canon_search(g, (0,) * g.n)


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.edge_count() != h.edge_count():
        return False
    if sorted(g.degree(v) for v in range(g.n)) != sorted(h.degree(v) for v in range(h.n)):
        return False
    return canonical_form(g) == canonical_form(h)


def _embed_search(h: Graph, g: Graph, induced: bool, collect=None, limit: Optional[int] = None):
    """Backtracking search for (induced) embeddings of h into g.

    Without collect, returns True iff an embedding exists.  With collect (a
    set), gathers image vertex-sets, stopping once len(collect) > limit.
    """
    hn, gn = h.n, g.n
    if hn > gn:
        return False
    order = sorted(range(hn), key=lambda v: -h.degree(v))
    hdeg = [h.degree(v) for v in range(hn)]
    gdeg = [g.degree(v) for v in range(gn)]
    image = [0] * hn
    used = 0

    def place(i: int) -> bool:
        nonlocal used
        if i == hn:
            if collect is None:
                return True
            collect.add(used)
            return limit is not None and len(collect) > limit
        v = order[i]
        for w in range(gn):
            if used >> w & 1:
                continue
            if gdeg[w] < hdeg[v]:
                continue
            ok = True
            for k in range(i):
                u = order[k]
                hv = h.adj[v] >> u & 1
                gv = g.adj[w] >> image[u] & 1
                if induced:
                    if hv != gv:
                        ok = False
                        break
                else:
                    if hv and not gv:
                        ok = False
                        break
            if not ok:
                continue
            image[v] = w
            used |= 1 << w
            if place(i + 1):
                return True
            used &= ~(1 << w)
        return False

    return place(0)


def induced_embeds(h: Graph, g: Graph) -> bool:
    """True iff h is isomorphic to an induced subgraph of g."""
    return bool(_embed_search(h, g, induced=True))


def count_induced_copies(h: Graph, g: Graph, stop_after: int = 2) -> int:
    """Number of distinct vertex sets of g inducing a copy of h.

    Stops counting once more than stop_after copies are seen (returns
    stop_after + 1 then); exact below that.
    """
    found: set[int] = set()
    _embed_search(h, g, induced=True, collect=found, limit=stop_after)
    return len(found)


def has_nontrivial_automorphism(g: Graph, x: Optional[int] = None) -> bool:
    """True iff the induced subgraph on x (default: all of g) has a
    non-identity automorphism."""
    if x is not None:
        g, _ = induced_subgraph(g, x)
    n = g.n
    if n <= 1:
        return False
    colors = _refine(g, (0,) * n)
    image = [-1] * n
    used = 0

    def place(v: int, all_fixed: bool) -> bool:
        nonlocal used
        if v == n:
            return not all_fixed
        for w in range(n):
            if used >> w & 1 or colors[w] != colors[v]:
                continue
            ok = True
            for u in range(v):
                if (g.adj[v] >> u & 1) != (g.adj[w] >> image[u] & 1):
                    ok = False
                    break
            if not ok:
                continue
            image[v] = w
            used |= 1 << w
            if place(v + 1, all_fixed and w == v):
                return True
            used &= ~(1 << w)
        return False

    return place(0, True)


# ---------------------------------------------------------------------------
# Enumeration of small graphs

_ENUM_CAP = 7


@lru_cache(maxsize=None)
def _enumerate(n: int) -> tuple[Graph, ...]:
    if n == 0:
        return (Graph(0),)
    seen: dict[bytes, Graph] = {}
    for parent in _enumerate(n - 1):
        for nbrs in range(1 << (n - 1)):
            rows = list(parent.adj) + [nbrs]
            for u in bit_indices(nbrs):
                rows[u] |= 1 << (n - 1)
            g = Graph._trusted(n, rows)
            key = canonical_form(g)
            if key not in seen:
                seen[key] = g
    return tuple(seen[k] for k in sorted(seen))


def enumerate_graphs(n: int) -> tuple[Graph, ...]:
    """One representative per isomorphism class of order n, fixed order."""
    if not 0 <= n <= _ENUM_CAP:
        raise GraphError(f"enumeration supported only for n <= {_ENUM_CAP}")
    return _enumerate(n)


# ---------------------------------------------------------------------------
# Component census


@dataclass(frozen=True)
class ComponentCensus:
    """Connected components grouped by isomorphism class."""

    components: tuple[tuple[bytes, int, int, bool], ...]  # (canon, multiplicity, order, is_tree)
    t: dict  # k -> number of order-k tree components

    def c_F(self, f: Graph) -> int:
        key = canonical_form(f)
        for canon, mult, _, _ in self.components:
            if canon == key:
                return mult
        return 0

    @property
    def t1(self) -> int:
        return self.t.get(1, 0)


# canonical forms of the one- and two-vertex components, precomputed
_CANON_K1 = canonical_form(Graph(1))
_CANON_K2 = canonical_form(Graph.from_edges(2, [(0, 1)]))


def component_masks(g: Graph) -> list[int]:
    """Vertex masks of the connected components."""
    unseen = g.full_mask
    comps = []
    while unseen:
        start = unseen & -unseen
        comp = start
        frontier = start
        while frontier:
            nxt = 0
            for v in bit_indices(frontier):
                nxt |= g.adj[v]
            frontier = nxt & ~comp
            comp |= frontier
        comps.append(comp)
        unseen &= ~comp
    return comps


def component_census(g: Graph) -> ComponentCensus:
    groups: dict[bytes, list] = {}
    for cmask in component_masks(g):
        order = cmask.bit_count()
        if order == 1:
            key, nedges = _CANON_K1, 0
        elif order == 2:
            key, nedges = _CANON_K2, 1
        else:
            sub, _ = induced_subgraph(g, cmask)
            key, nedges = canonical_form(sub), sub.edge_count()
        if key in groups:
            groups[key][1] += 1
        else:
            groups[key] = [key, 1, order, nedges == order - 1]
    comps = tuple(tuple(v) for v in sorted(groups.values(), key=lambda r: r[0]))
    t: dict[int, int] = {}
    for _, mult, order, is_tree in comps:
        if is_tree:
            t[order] = t.get(order, 0) + mult
    return ComponentCensus(components=comps, t=t)


# ---------------------------------------------------------------------------
# graph6 codec


class Graph6Error(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


_G6_MAX = 258047  # largest n of the 4-byte size form we support


def graph6_encode(g: Graph) -> str:
    n = g.n
    if n > _G6_MAX:
        raise GraphError(f"graph6 encoding supported only for n <= {_G6_MAX}")
    if n <= 62:
        head = chr(n + 63)
    else:
        head = "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(g.adj[i] >> j & 1)
    while len(bits) % 6:
        bits.append(0)
    chars = []
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k : k + 6]:
            val = val << 1 | b
        chars.append(chr(val + 63))
    return head + "".join(chars)


def graph6_decode(text: str) -> Graph:
    data = text.rstrip("\n")
    if not data:
        raise Graph6Error("empty graph6 string", 0)
    pos = 0
    if data[0] == "~":
        if len(data) >= 2 and data[1] == "~":
            raise Graph6Error("8-byte size form not supported", 0)
        if len(data) < 4:
            raise Graph6Error("truncated size field", len(data))
        n = 0
        for k in range(1, 4):
            c = ord(data[k]) - 63
            if not 0 <= c <= 63:
                raise Graph6Error("invalid size character", k)
            n = n << 6 | c
        pos = 4
    else:
        n = ord(data[0]) - 63
        if not 0 <= n <= 62:
            raise Graph6Error("invalid size character", 0)
        pos = 1
    nbits = n * (n - 1) // 2
    nchars = (nbits + 5) // 6
    if len(data) - pos < nchars:
        raise Graph6Error(f"truncated edge data: need {nchars} chars", len(data))
    if len(data) - pos > nchars:
        raise Graph6Error("trailing characters after edge data", pos + nchars)
    rows = [0] * n
    bit = 0
    for k in range(nchars):
        c = ord(data[pos + k]) - 63
        if not 0 <= c <= 63:
            raise Graph6Error("invalid data character", pos + k)
        for s in range(5, -1, -1):
            if bit >= nbits:
                if c >> s & 1:
                    raise Graph6Error("nonzero padding bits", pos + k)
                continue
            if c >> s & 1:
                # bit index -> pair (i, j) in column-major upper triangle
                j = _g6_col(bit)
                i = bit - j * (j - 1) // 2
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            bit += 1
    return Graph._trusted(n, rows)


def _g6_col(bit: int) -> int:
    # smallest j with j*(j+1)/2 > bit, i.e. the column of this bit
    j = int((math.isqrt(8 * bit + 1) - 1) // 2) + 1
    while j * (j - 1) // 2 > bit:
        j -= 1
    while (j + 1) * j // 2 <= bit:
        j += 1
    return j


def edges_json(g: Graph) -> dict:
    """Adjacency-list JSON form used by the HTTP service."""
    return {"n": g.n, "edges": [[i, j] for i, j in g.edges()]}


def from_edges_json(obj: dict) -> Graph:
    return Graph.from_edges(int(obj["n"]), [(int(i), int(j)) for i, j in obj["edges"]])
