"""Verifiable bound witnesses for game depth metrics.

Each certificate carries the data needed to re-check its bound from the
host graph alone.  Kinds:

  ExtensionLower  -- k-extension property forces depth >= k+2
  LemmaY          -- double sifting S(S(X)) = V gives D_1 <= |X|+3
  DetD0           -- sieve + rigid + unique induced copy gives D_0 <= |X|+2
  Half            -- S_u(W) machinery gives D_2 <= u+|W|+4
  Lupper          -- recursive residual conditions give D <= l+l_0
  Comps           -- very sparse census condition pins D exactly

Vertex sets are bitmasks throughout, matching the graph substrate.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from .graphs import (
    Graph,
    bit_indices,
    common_neighbors,
    component_census,
    count_induced_copies,
    has_nontrivial_automorphism,
    induced_embeds,
    induced_subgraph,
    mask_of,
    residual,
)

EXT_CAP = 10**9
SU_CAP = 2 * 10**5


class CertificateError(ValueError):
    pass


class CapExceeded(CertificateError):
    pass


@dataclass
class Certificate:
    kind: str                     # ExtensionLower | LemmaY | DetD0 | Half | Lupper | Comps
    metric: str                   # D | D0 | D1 | D2
    rel: str                      # >= | <= | =
    value: int
    witness: dict = field(default_factory=dict)
    mode: str = "exact"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "metric": self.metric,
            "rel": self.rel,
            "value": self.value,
            "witness": self.witness,
            "mode": self.mode,
        }

    @staticmethod
    def from_json(obj: dict) -> "Certificate":
        return Certificate(kind=obj["kind"], metric=obj["metric"], rel=obj["rel"],
                           value=int(obj["value"]), witness=dict(obj["witness"]),
                           mode=obj.get("mode", "exact"))


def _vset(mask: int) -> list[int]:
    return list(bit_indices(mask))


# ---------------------------------------------------------------------------
# Extension property


@dataclass
class ExtensionResult:
    holds: bool
    witness: Optional[tuple[int, int]]  # failing (A, B) masks, if any
    mode: str


def _extension_witness_exists(g: Graph, a_mask: int, b_mask: int) -> bool:
    cand = common_neighbors(g, a_mask)
    for b in bit_indices(b_mask):
        cand &= ~g.adj[b]
    cand &= ~(a_mask | b_mask)
    return cand != 0


def has_extension_property(g: Graph, k: int, seed: int = 0,
                           samples: int = 20000) -> ExtensionResult:
    """Every disjoint (A, B) with |A|+|B| <= k has a vertex adjacent to all
    of A and none of B.

    Exhaustive when n^(k+1) fits the documented cap; otherwise a seeded
    sample of (A, B) pairs is checked and the result is flagged sampled.
    For n >= k it suffices to check |A|+|B| = k exactly, since any smaller
    pair extends to a full-size one whose witness also serves it.
    """
    n = g.n
    if k == 0:
        return ExtensionResult(True, None, "exact")
    if n ** k * n <= EXT_CAP and n >= k:
        for combo in combinations(range(n), k):
            for split in range(1 << k):
                a = b = 0
                for i, v in enumerate(combo):
                    if split >> i & 1:
                        a |= 1 << v
                    else:
                        b |= 1 << v
                if not _extension_witness_exists(g, a, b):
                    return ExtensionResult(False, (a, b), "exact")
        return ExtensionResult(True, None, "exact")
    if n < k:
        # tiny graph, enumerate all sizes directly
        for size in range(1, min(k, n) + 1):
            for combo in combinations(range(n), size):
                for split in range(1 << size):
                    a = b = 0
                    for i, v in enumerate(combo):
                        if split >> i & 1:
                            a |= 1 << v
                        else:
                            b |= 1 << v
                    if not _extension_witness_exists(g, a, b):
                        return ExtensionResult(False, (a, b), "exact")
        return ExtensionResult(True, None, "exact")
    rng = random.Random(seed)
    for _ in range(samples):
        picks = rng.sample(range(n), k)
        a = b = 0
        for v in picks:
            if rng.getrandbits(1):
                a |= 1 << v
            else:
                b |= 1 << v
        if not _extension_witness_exists(g, a, b):
            return ExtensionResult(False, (a, b), "sampled")
    return ExtensionResult(True, None, "sampled")


def extension_lower_bound(g: Graph, k_max: int) -> Certificate:
    """Largest k <= k_max with the extension property; bound D >= k+2.

    Exact mode only; a cap violation propagates rather than degrading the
    certificate to a sampled claim.
    """
    best = 0
    for k in range(1, k_max + 1):
        if g.n ** k * g.n > EXT_CAP and g.n >= k:
            raise CapExceeded(f"exhaustive extension check infeasible at k={k}")
        res = has_extension_property(g, k)
        if not res.holds:
            break
        best = k
    return Certificate(kind="ExtensionLower", metric="D", rel=">=", value=best + 2,
                       witness={"k": best})


# ---------------------------------------------------------------------------
# Similarity, sifting, sieves


@dataclass
class SimilarityPartition:
    base: int                 # X mask
    classes: tuple[int, ...]  # class masks, ascending by lowest member


def similarity_partition(g: Graph, x: int) -> SimilarityPartition:
    """Vertices grouped by their adjacency trace on x; members of x are
    singletons by definition."""
    groups: dict[int, int] = {}
    classes = []
    for v in range(g.n):
        if x >> v & 1:
            classes.append(1 << v)
            continue
        trace = g.adj[v] & x
        if trace in groups:
            classes[groups[trace]] |= 1 << v
        else:
            groups[trace] = len(classes)
            classes.append(1 << v)
    classes.sort(key=lambda m: m & -m)
    return SimilarityPartition(base=x, classes=tuple(classes))


def sifted(g: Graph, x: int) -> int:
    """S(x): union of the singleton similarity classes; always contains x."""
    out = 0
    for cls in similarity_partition(g, x).classes:
        if cls.bit_count() == 1:
            out |= cls
    return out


def is_sieve(g: Graph, x: int) -> bool:
    return sifted(g, x) == g.full_mask


def lemmaY_bound(g: Graph, x: int) -> Optional[Certificate]:
    """If sifting twice from x reaches all of V, D_1 <= |x|+3."""
    y = sifted(g, x)
    if sifted(g, y) != g.full_mask:
        return None
    return Certificate(kind="LemmaY", metric="D1", rel="<=",
                       value=x.bit_count() + 3,
                       witness={"X": _vset(x), "Y": _vset(y)})


def search_small_sieve(g: Graph, restarts: int = 20, seed: int = 0) -> int:
    """Smallest x found with S(S(x)) = V.

    Greedy growth (add the vertex creating the most singleton classes,
    lowest id on ties) plus seeded random restarts from a single random
    vertex.  x = V always qualifies, so a result always exists.
    """
    rng = random.Random(seed)
    best = g.full_mask

    def grow(x: int) -> int:
        while sifted(g, sifted(g, x)) != g.full_mask:
            top_v, top_score = -1, -1
            for v in range(g.n):
                if x >> v & 1:
                    continue
                score = sifted(g, x | (1 << v)).bit_count()
                if score > top_score:
                    top_v, top_score = v, score
            if top_v < 0:
                break
            x |= 1 << top_v
        return x

    for attempt in range(restarts + 1):
        start = 0 if attempt == 0 else 1 << rng.randrange(g.n)
        x = grow(start)
        if sifted(g, sifted(g, x)) == g.full_mask and x.bit_count() < best.bit_count():
            best = x
    return best


# ---------------------------------------------------------------------------
# Deterministic D_0 bound


def detD0_bound(g: Graph, x: int) -> Optional[Certificate]:
    """x a sieve, g[x] rigid, and g has exactly one induced copy of g[x]
    gives D_0 <= |x|+2."""
    size = x.bit_count()
    if g.n > 256 and size > 12:
        raise CapExceeded("induced-copy search infeasible")
    if not is_sieve(g, x):
        return None
    if has_nontrivial_automorphism(g, x):
        return None
    sub, _ = induced_subgraph(g, x)
    if count_induced_copies(sub, g) != 1:
        return None
    return Certificate(kind="DetD0", metric="D0", rel="<=", value=size + 2,
                       witness={"X": _vset(x)})


# ---------------------------------------------------------------------------
# S_u(W) and the depth-2-alternation bound


def sifted_u(g: Graph, w: int, u: int) -> tuple[int, str]:
    """Vertices sifted out by w together with some u-set.

    Returns (mask, mode).  Exact when C(n, u) is small enough; otherwise a
    seeded sample of u-sets, flagged sampled (an under-approximation).
    """
    if u == 0:
        return sifted(g, w) & ~w, "exact"
    pool = [v for v in range(g.n) if not (w >> v & 1)]
    from math import comb
    if comb(len(pool), u) <= SU_CAP:
        out = 0
        for us in combinations(pool, u):
            um = mask_of(us)
            out |= sifted(g, um | w) & ~(um | w)
        return out, "exact"
    rng = random.Random(0)
    out = 0
    for _ in range(SU_CAP):
        um = mask_of(rng.sample(pool, u))
        out |= sifted(g, um | w) & ~(um | w)
    return out, "sampled"


def lemma_half_bound(g: Graph, w: int, u: int) -> Optional[Certificate]:
    """Y = S_u(w): if Y∪w is a sieve and the Y-vertices have pairwise
    distinct traces on w, then D_2 <= u+|w|+4."""
    y, mode = sifted_u(g, w, u)
    if mode != "exact":
        raise CapExceeded("exact S_u computation infeasible")
    if sifted(g, y | w) != g.full_mask:
        return None
    seen = set()
    for v in bit_indices(y & ~w):
        trace = g.adj[v] & w
        if trace in seen:
            return None
        seen.add(trace)
    return Certificate(kind="Half", metric="D2", rel="<=",
                       value=u + w.bit_count() + 4,
                       witness={"W": _vset(w), "u": u, "Y": _vset(y)})


def half_recipe(g: Graph, k: int, seed: int = 0) -> Optional[Certificate]:
    """Default W-selection: a random k/2-set A, retried with one member of
    a colliding similarity class appended when the trace condition fails."""
    if k % 2:
        raise CertificateError("k must be even")
    u = k // 2
    rng = random.Random(seed)
    a = mask_of(rng.sample(range(g.n), min(u, g.n)))
    w = a
    for _ in range(3):
        cert = lemma_half_bound(g, w, u)
        if cert is not None:
            return cert
        y, _ = sifted_u(g, w, u)
        seen: dict[int, int] = {}
        extra = -1
        for v in bit_indices(y & ~w):
            trace = g.adj[v] & w
            if trace in seen:
                extra = min(seen[trace], v)
                break
            seen[trace] = v
        if extra < 0:
            return None
        w |= 1 << extra
    return None


# ---------------------------------------------------------------------------
# Recursive upper bound via common-neighbor residuals


def _upper_certificate(g: Graph, limit: int, sieve_restarts: int = 5,
                       seed: int = 0) -> Optional[Certificate]:
    """Any upper-bound certificate on D(g) with value <= limit."""
    cert = comps_check(g)
    if cert is not None and cert.value <= limit:
        return cert
    x = search_small_sieve(g, restarts=sieve_restarts, seed=seed)
    cert = lemmaY_bound(g, x)
    if cert is not None and cert.value <= limit:
        return cert
    try:
        cert = detD0_bound(g, x)
    except CapExceeded:
        cert = None
    if cert is not None and cert.value <= limit:
        return cert
    return None


def _tuples(g: Graph, length: int):
    """All ordered tuples of distinct vertices of the given length."""
    from itertools import permutations
    if length < 0:
        return
    if length == 0:
        yield ()
        return
    yield from permutations(range(g.n), length)


def lupper_check(g: Graph, l: int, l0: int,
                 seed: int = 0) -> tuple[Optional[Certificate], Optional[dict]]:
    """Recursive residual conditions giving D <= l+l_0.

    Condition 1 asks for D(residual) <= l_0 on every (l-1)- and l-tuple
    residual; it is certified through upper-bound sub-certificates rather
    than exact depth, so the emitted bound is conditionally sound on those.
    Returns (certificate, None) on success or (None, failing condition).
    """
    if l0 < 3:
        return None, {"condition": "pre", "detail": "l0 must be at least 3"}
    if l > 2 or g.n > 64:
        raise CapExceeded("tuple enumeration infeasible (need l <= 2, n <= 64)")
    inner = []
    for length in sorted({max(l - 1, 0), l}):
        for xs in _tuples(g, length):
            sub, _ = residual(g, xs)
            cert = _upper_certificate(sub, l0, seed=seed)
            if cert is None:
                return None, {"condition": "1", "tuple": list(xs)}
            inner.append({"tuple": list(xs), "certificate": cert.to_json()})
    for i in range(l):  # i <= l-1
        for xs in _tuples(g, i):
            _, vmask = residual(g, xs)
            members = _vset(vmask)
            for y, z in combinations(members, 2):
                for (yy, zz) in ((y, z), (z, y)):
                    fail = _condition3(g, xs, yy, zz)
                    if fail:
                        return None, {"condition": fail, "tuple": list(xs),
                                      "y": yy, "z": zz}
            for y, z, w in combinations(members, 3):
                for (yy, zz) in combinations((y, z, w), 2):
                    for ww in (y, z, w):
                        if ww in (yy, zz):
                            continue
                        if _condition4_fails(g, xs, yy, zz, ww):
                            return None, {"condition": "4", "tuple": list(xs),
                                          "y": yy, "z": zz, "w": ww}
    return Certificate(kind="Lupper", metric="D", rel="<=", value=l + l0,
                       witness={"l": l, "l0": l0, "inner": inner}), None


def _condition3(g: Graph, xs: tuple, y: int, z: int) -> Optional[str]:
    """Check conditions on the ordered pair (y, z); returns "3a"/"3b" on
    failure, None when both hold."""
    sub_yz, u_mask = residual(g, xs + (y, z))
    _, vy_mask = residual(g, xs + (y,))
    _, vz_mask = residual(g, xs + (z,))
    # 3a: the only induced embedding of G_{x,y,z} into G_{x,y} is the
    # identity, i.e. the copy at U is unique and rigid (vacuous when U = 0)
    if u_mask:
        if has_nontrivial_automorphism(g, u_mask):
            return "3a"
        sub_y, _ = induced_subgraph(g, vy_mask)
        if count_induced_copies(sub_yz, sub_y) != 1:
            return "3a"
    # 3b: some v in V_{x,y}\U whose U-trace differs from every w in V_{x,z}\U
    z_traces = {g.adj[wv] & u_mask for wv in bit_indices(vz_mask & ~u_mask)}
    for v in bit_indices(vy_mask & ~u_mask):
        if (g.adj[v] & u_mask) not in z_traces:
            return None
    return "3b"


def _condition4_fails(g: Graph, xs: tuple, y: int, z: int, w: int) -> bool:
    sub_yz, _ = residual(g, xs + (y, z))
    sub_w, _ = residual(g, xs + (w,))
    return induced_embeds(sub_yz, sub_w)


# ---------------------------------------------------------------------------
# Exact depth for very sparse graphs


def comps_check(g: Graph) -> Optional[Certificate]:
    """Census condition pinning D exactly.

    Empty graph: D = v+1.  Otherwise, if every component class F satisfies
    c_F + v(F) <= t_1 + 1 then D = D_1 = t_1 + 2.
    """
    if g.edge_count() == 0:
        return Certificate(kind="Comps", metric="D", rel="=", value=g.n + 1,
                           witness={"empty": True})
    census = component_census(g)
    t1 = census.t1
    for _, mult, order, _ in census.components:
        if mult + order > t1 + 1:
            return None
    return Certificate(kind="Comps", metric="D", rel="=", value=t1 + 2,
                       witness={"t1": t1})


# ---------------------------------------------------------------------------
# Re-verification


def verify_certificate(g: Graph, cert: Certificate) -> bool:
    """Re-check a certificate's payload against the host graph."""
    if cert.mode != "exact":
        return False
    kind = cert.kind
    if kind == "ExtensionLower":
        k = cert.witness["k"]
        return (has_extension_property(g, k).holds
                and cert.rel == ">=" and cert.value == k + 2)
    if kind == "LemmaY":
        x = mask_of(cert.witness["X"])
        fresh = lemmaY_bound(g, x)
        return fresh is not None and fresh.value == cert.value and cert.rel == "<="
    if kind == "DetD0":
        x = mask_of(cert.witness["X"])
        fresh = detD0_bound(g, x)
        return fresh is not None and fresh.value == cert.value and cert.rel == "<="
    if kind == "Half":
        w = mask_of(cert.witness["W"])
        fresh = lemma_half_bound(g, w, cert.witness["u"])
        return fresh is not None and fresh.value == cert.value and cert.rel == "<="
    if kind == "Lupper":
        l, l0 = cert.witness["l"], cert.witness["l0"]
        fresh, _ = lupper_check(g, l, l0)
        return fresh is not None and fresh.value == cert.value and cert.rel == "<="
    if kind == "Comps":
        fresh = comps_check(g)
        return fresh is not None and fresh.value == cert.value and cert.rel == "="
    raise CertificateError(f"unknown certificate kind {kind!r}")
