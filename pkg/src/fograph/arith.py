"""Hypergraph arithmetization machinery.

A 4-set W determines A = N(W) (common neighbors).  Each outside vertex w
induces a 3-uniform hypergraph H_w on A: a triple T belongs to H_w when
no outside vertex is adjacent to all of T and w.  With A labeled as
a, b, x_1..x_s, y_1..y_s, z_1..z_s, seven witness vertices can pin down a
successor chain, addition, multiplication and base-2 exponentiation on
the indices, which is what makes very shallow descriptions of single
vertices possible.  This module provides the hypergraph extraction, the
target patterns, witness verification, a synthetic fixture generator,
and the binary-digit / description-depth accounting.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Optional

from .graphs import Graph, bit_indices, common_neighbors, mask_of

TRIPLE_CAP = 10 ** 6
UNIVERSAL_CAP = 20


class ArithError(ValueError):
    pass


class CapExceeded(ArithError):
    pass


@dataclass(frozen=True)
class Hypergraph3:
    ground: tuple[int, ...]
    triples: frozenset  # of frozensets of size 3

    def restrict_a(self, a: int) -> set:
        """Pairs T with T + {a} a triple."""
        out = set()
        for t in self.triples:
            if a in t:
                out.add(t - {a})
        return out

    def restrict_ab(self, a: int, b: int) -> set:
        """Elements y with {a, b, y} a triple."""
        out = set()
        for t in self.triples:
            if a in t and b in t:
                (y,) = t - {a, b}
                out.add(y)
        return out


@dataclass(frozen=True)
class ArithLabeling:
    a: int
    b: int
    x: tuple[int, ...]
    y: tuple[int, ...]
    z: tuple[int, ...]

    @property
    def s(self) -> int:
        return len(self.x)

    def members(self) -> set:
        return {self.a, self.b, *self.x, *self.y, *self.z}


@dataclass(frozen=True)
class ArithWitnesses:
    w: tuple[int, ...]  # w1..w7


def hypergraph_of_witness(g: Graph, w_set: int, ground: int, excl: int,
                          w: int) -> Hypergraph3:
    """Triples of the ground set with no vertex outside excl adjacent to
    the whole triple plus w."""
    if excl >> w & 1:
        raise ArithError("witness lies in the excluded set")
    verts = list(bit_indices(ground))
    if comb(len(verts), 3) > TRIPLE_CAP:
        raise CapExceeded("triple enumeration over the ground set infeasible")
    outside = g.full_mask & ~excl
    triples = set()
    base = g.adj[w] & outside
    for t in combinations(verts, 3):
        blockers = base & g.adj[t[0]] & g.adj[t[1]] & g.adj[t[2]]
        if blockers == 0:
            triples.add(frozenset(t))
    return Hypergraph3(ground=tuple(verts), triples=frozenset(triples))


def compute_B(g: Graph, w_set: int, a_set: int) -> int:
    """Outside vertices adjacent to exactly four A-vertices whose A-trace
    is unique among all outside vertices."""
    outside = g.full_mask & ~(w_set | a_set)
    traces: dict[int, int] = {}
    for v in bit_indices(outside):
        tr = g.adj[v] & a_set
        traces[tr] = traces.get(tr, 0) + 1
    out = 0
    for v in bit_indices(outside):
        tr = g.adj[v] & a_set
        if tr.bit_count() == 4 and traces[tr] == 1:
            out |= 1 << v
    return out


def is_universal(g: Graph, w_set: int, a_set: int) -> bool:
    """Every 3-uniform hypergraph on A is realized by some outside vertex."""
    verts = list(bit_indices(a_set))
    m = comb(len(verts), 3)
    if m > UNIVERSAL_CAP:
        raise CapExceeded("universality check needs C(|A|,3) <= 20")
    excl = w_set | a_set
    seen = set()
    for v in bit_indices(g.full_mask & ~excl):
        seen.add(hypergraph_of_witness(g, w_set, a_set, excl, v).triples)
    return len(seen) == 1 << m


def is_splitting(g: Graph, w_set: int, a_set: int, b_set: int) -> bool:
    """The B-hypergraphs of the outside vertices are pairwise distinct."""
    excl = w_set | a_set | b_set
    seen = set()
    for v in bit_indices(g.full_mask & ~excl):
        h = hypergraph_of_witness(g, w_set, b_set, excl, v).triples
        if h in seen:
            return False
        seen.add(h)
    return True


def size_advisories(g: Graph, a_set: int, b_set: int, k: float = 16.0) -> list[str]:
    """Soft sanity flags: a universal A should be small and a splitting B
    should be large relative to ln(n)^(1/3)."""
    import math
    out = []
    ln_n = math.log(max(g.n, 2))
    if a_set.bit_count() ** 3 > ln_n * k:
        out.append("universal candidate A larger than the plausible scale")
    if b_set.bit_count() ** 3 * k < ln_n:
        out.append("splitting candidate B smaller than the plausible scale")
    return out


# ---------------------------------------------------------------------------
# Target patterns

A_LBL = ("a",)
B_LBL = ("b",)


def _x(i):
    return ("x", i)


def _y(i):
    return ("y", i)


def _z(i):
    return ("z", i)


def target_hypergraphs(s: int) -> dict:
    """The seven symbolic triple sets over the labeled ground set.

    Witnesses whose content lives in a restricted view (w2, w3, w4, w7)
    get the smallest full triple set inducing that view.
    """
    if s < 1:
        raise ArithError("need s >= 1")
    r = range(1, s + 1)
    return {
        "w1": {frozenset({_x(i), _y(i), _z(i)}) for i in r},
        "w2": {frozenset({A_LBL, B_LBL, _x(i)}) for i in r},
        "w3": {frozenset({A_LBL, B_LBL, _y(i)}) for i in r},
        "w4": {frozenset({A_LBL, _x(i), _y(j)}) for i in r for j in r if i <= j},
        "w5": {frozenset({_x(i), _y(j), _z(i + j)})
               for i in r for j in r if i + j <= s},
        "w6": {frozenset({_x(i), _y(j), _z(i * j)})
               for i in r for j in r if i * j <= s},
        "w7": {frozenset({A_LBL, _x(i), _y(2 ** i)}) for i in r if 2 ** i <= s},
    }


def _label_map(lab: ArithLabeling) -> dict:
    m = {A_LBL: lab.a, B_LBL: lab.b}
    for i, v in enumerate(lab.x, 1):
        m[_x(i)] = v
    for i, v in enumerate(lab.y, 1):
        m[_y(i)] = v
    for i, v in enumerate(lab.z, 1):
        m[_z(i)] = v
    return m


# ---------------------------------------------------------------------------
# Witness verification

CLAUSES = ("1-factor", "splitting", "order", "addition", "multiplication",
           "exponentiation")


def verify_witnesses(g: Graph, w_set: int, a_set: int, lab: ArithLabeling,
                     wit: ArithWitnesses) -> tuple[bool, Optional[str]]:
    """Check the six property blocks; returns (ok, first failing clause).

    The numbering of the x/y/z classes is derived from the order chain, so
    the check accepts any relabeling consistent with the structure.
    """
    if len(wit.w) != 7:
        raise ArithError("need exactly seven witnesses")
    excl = w_set | a_set
    h = [hypergraph_of_witness(g, w_set, a_set, excl, wv) for wv in wit.w]
    s = lab.s
    aminus = lab.members() - {lab.a, lab.b}

    # 1-Factor: disjoint triples covering exactly A minus {a, b}
    covered: set = set()
    for t in h[0].triples:
        if not t <= aminus or t & covered:
            return False, "1-factor"
        covered |= t
    if covered != aminus:
        return False, "1-factor"

    # Splitting the 1-Factor; the w2/w3 content must be exactly the
    # restricted view, so stray triples are an error
    ab = {lab.a, lab.b}
    if any(not ab <= t for t in h[1].triples) or \
            any(not ab <= t for t in h[2].triples):
        return False, "splitting"
    xs = h[1].restrict_ab(lab.a, lab.b)
    ys = h[2].restrict_ab(lab.a, lab.b)
    if not (xs <= aminus and ys <= aminus):
        return False, "splitting"
    for t in h[0].triples:
        if len(t & xs) != 1 or len(t & ys) != 1 or (t & xs) == (t & ys):
            return False, "splitting"
    zs = aminus - xs - ys
    mate: dict = {}  # vertex -> its 1-factor triple
    for t in h[0].triples:
        for v in t:
            mate[v] = t

    # Creating <=: the w4 pairs must chain the x's
    if any(lab.a not in t for t in h[3].triples):
        return False, "order"
    pairs = h[3].restrict_a(lab.a)
    nbh: dict = {v: set() for v in xs}
    for t in pairs:
        px, py = sorted(t, key=lambda v: v not in xs)
        if px not in xs or py not in ys:
            return False, "order"
        nbh[px].add(py)
    sizes = sorted(len(v) for v in nbh.values())
    if sizes != list(range(1, s + 1)):
        return False, "order"
    chain = sorted(xs, key=lambda v: -len(nbh[v]))
    for i in range(len(chain) - 1):
        if not nbh[chain[i + 1]] <= nbh[chain[i]]:
            return False, "order"
    for v in xs:
        ymate = next(iter(mate[v] & ys))
        if ymate not in nbh[v]:
            return False, "order"
    num = {v: i for i, v in enumerate(chain, 1)}  # derived index of each x
    for t in h[0].triples:
        i = num[next(iter(t & xs))]
        num[next(iter(t & ys))] = i
        num[next(iter(t & zs))] = i

    def table(triples):
        """(i, j) -> k map from triples with one member per class."""
        out = {}
        for t in triples:
            if len(t & xs) != 1 or len(t & ys) != 1 or len(t & zs) != 1:
                return None
            key = (num[next(iter(t & xs))], num[next(iter(t & ys))])
            if key in out:
                return None
            out[key] = num[next(iter(t & zs))]
        return out

    # Creating addition
    add = table(h[4].triples)
    if add is None or add != {(i, j): i + j for i in range(1, s + 1)
                              for j in range(1, s + 1) if i + j <= s}:
        return False, "addition"
    for (i, j), k in add.items():
        if (i, j + 1) in add and add[(i, j + 1)] != k + 1:
            return False, "addition"

    # Creating multiplication
    mul = table(h[5].triples)
    if mul is None or mul != {(i, j): i * j for i in range(1, s + 1)
                              for j in range(1, s + 1) if i * j <= s}:
        return False, "multiplication"
    for (i, j), k in mul.items():
        if (i, 1) in mul and mul[(i, 1)] != i:
            return False, "multiplication"
        if (i, j + 1) in mul and (i, k) in add and mul[(i, j + 1)] != add[(i, k)]:
            return False, "multiplication"

    # Creating exponentiation
    if any(lab.a not in t for t in h[6].triples):
        return False, "exponentiation"
    expo = {}
    for t in h[6].restrict_a(lab.a):
        ex = t & xs
        ey = t & ys
        if len(ex) != 1 or len(ey) != 1:
            return False, "exponentiation"
        key = num[next(iter(ex))]
        if key in expo:
            return False, "exponentiation"
        expo[key] = num[next(iter(ey))]
    if expo != {i: 2 ** i for i in range(1, s + 1) if 2 ** i <= s}:
        return False, "exponentiation"
    for i, v in expo.items():
        if i + 1 in expo and (v, v) in add and expo[i + 1] != add[(v, v)]:
            return False, "exponentiation"

    return True, None


# ---------------------------------------------------------------------------
# Synthetic fixtures


def build_fixture(s: int, seed: int = 0) -> tuple[Graph, int, int, ArithLabeling,
                                                  ArithWitnesses]:
    """A graph realizing all seven witness patterns at size s.

    Layout: W (4 vertices), A = N(W) of size 3s+2, seven witnesses, then
    one blocker per triple that is absent from at least one target; the
    blocker is adjacent to its triple and to exactly the witnesses whose
    target excludes that triple.  The A-labeling is shuffled by the seed.
    """
    if not 1 <= s <= 8:
        raise ArithError("need 1 <= s <= 8")
    rng = random.Random(seed)
    na = 3 * s + 2
    w_ids = list(range(4))
    a_ids = list(range(4, 4 + na))
    wit_ids = list(range(4 + na, 4 + na + 7))

    labels = [A_LBL, B_LBL] + [_x(i) for i in range(1, s + 1)] \
        + [_y(i) for i in range(1, s + 1)] + [_z(i) for i in range(1, s + 1)]
    rng.shuffle(labels)
    vert_of = {lbl: a_ids[i] for i, lbl in enumerate(labels)}

    targets = target_hypergraphs(s)
    keys = ["w1", "w2", "w3", "w4", "w5", "w6", "w7"]
    concrete = [{frozenset(vert_of[l] for l in t) for t in targets[k]}
                for k in keys]

    edges = [(wv, av) for wv in w_ids for av in a_ids]
    blocker_plan = []  # (triple, witnesses missing it)
    for t in combinations(sorted(a_ids), 3):
        ft = frozenset(t)
        missing = [i for i in range(7) if ft not in concrete[i]]
        if missing:
            blocker_plan.append((t, missing))
    next_id = 4 + na + 7
    for t, missing in blocker_plan:
        for av in t:
            edges.append((next_id, av))
        for i in missing:
            edges.append((next_id, wit_ids[i]))
        next_id += 1

    g = Graph.from_edges(next_id, edges)
    lab = ArithLabeling(a=vert_of[A_LBL], b=vert_of[B_LBL],
                        x=tuple(vert_of[_x(i)] for i in range(1, s + 1)),
                        y=tuple(vert_of[_y(i)] for i in range(1, s + 1)),
                        z=tuple(vert_of[_z(i)] for i in range(1, s + 1)))
    return g, mask_of(w_ids), mask_of(a_ids), lab, ArithWitnesses(tuple(wit_ids))


# ---------------------------------------------------------------------------
# Binary digits and description depth

DESCRIBE_C = 5  # depth charged per arithmetic layer; a declared convention


def digit(x: int, d: int, s: int) -> int:
    """Bit d (1 = least significant) of x, expressed through the zero-free
    arithmetic available in the model."""
    if not 1 <= x <= s:
        raise ArithError("need 1 <= x <= s")
    if d < 1:
        raise ArithError("need d >= 1")
    if d == 1:
        return 0 if x % 2 == 0 else 1
    pd = 2 ** d
    half = 2 ** (d - 1)
    r = x % pd
    zero = (x >= pd and 1 <= r < half) or r == 0 or x < half
    return 0 if zero else 1


@lru_cache(maxsize=None)
def _describe(x: int, c: int) -> int:
    if x <= 2:
        return c
    m = x.bit_length()
    return c + max(_describe(d, c) for d in range(1, m + 1))


def describe_depth(x: int, s: int, c: int = DESCRIBE_C) -> int:
    """Quantifier-depth account for pinning down x among 1..s: give the
    digit count m, then recursively describe each digit position."""
    if not 1 <= x <= s:
        raise ArithError("need 1 <= x <= s")
    return _describe(x, c)
