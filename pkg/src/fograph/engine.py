"""Exact Ehrenfeucht game solver.

Positions are partial maps between the vertex sets of two graphs.  The
solver decides whether Spoiler forces a win within k rounds, computes the
distinguishing depth D(G,H) and its alternation-bounded variants, extracts
per-move values, and synthesizes distinguishing sentences from winning
strategies.

State-space reductions (both verified against a naive recursion):
  * the memo key is the mapping as an unordered set of pairs -- round order
    is irrelevant to the game value;
  * candidate moves and replies are grouped by twin classes (u, v are twins
    when swapping them is a graph automorphism), one representative each;
  * Spoiler never re-selects a marked vertex (a copying reply shows such a
    move can never be his unique fastest win).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from . import formulas as F
from .graphs import Graph, bit_indices, enumerate_graphs, is_isomorphic

STATE_CAP = 10**8


class EngineError(ValueError):
    pass


class CapExceeded(EngineError):
    """Search refused: estimated state count above the documented cap."""


GamePosition = tuple[tuple[int, int], ...]  # ordered (vertex in G, vertex in H) pairs


def position_valid(g: Graph, h: Graph, pos: GamePosition) -> bool:
    """True iff pos is a partial isomorphism."""
    for i, (a, b) in enumerate(pos):
        if not (0 <= a < g.n and 0 <= b < h.n):
            return False
        for a2, b2 in pos[:i]:
            if (a == a2) != (b == b2):
                return False
            if a != a2 and g.has_edge(a, a2) != h.has_edge(b, b2):
                return False
    return True


def _twin_classes(g: Graph) -> list[int]:
    """class_id per vertex; u, v share a class iff transposing them is an
    automorphism of g."""
    n = g.n
    ids = [-1] * n
    nxt = 0
    for v in range(n):
        if ids[v] >= 0:
            continue
        ids[v] = nxt
        for u in range(v + 1, n):
            if ids[u] >= 0:
                continue
            pair = (1 << v) | (1 << u)
            if (g.adj[v] & ~pair) == (g.adj[u] & ~pair):
                ids[u] = nxt
        nxt += 1
    return ids


class GameSolver:
    """Memoized solver for one ordered pair of graphs."""

    def __init__(self, g: Graph, h: Graph):
        self.g = g
        self.h = h
        self.twins = (_twin_classes(g), _twin_classes(h))
        self.memo: dict = {}

    def _candidates(self, side: int, marked: tuple[int, ...]) -> list[int]:
        """One unmarked representative per twin class."""
        graph = self.g if side == 0 else self.h
        twins = self.twins[side]
        seen = set()
        out = []
        mset = set(marked)
        for v in range(graph.n):
            if v in mset or twins[v] in seen:
                continue
            seen.add(twins[v])
            out.append(v)
        return out

    def _replies(self, side: int, marked: tuple[int, ...]) -> list[int]:
        """Marked vertices individually plus one representative per unmarked
        twin class, in ascending vertex order."""
        graph = self.g if side == 0 else self.h
        twins = self.twins[side]
        mset = set(marked)
        seen = set()
        out = []
        for v in range(graph.n):
            if v in mset:
                out.append(v)
                continue
            if twins[v] not in seen:
                seen.add(twins[v])
                out.append(v)
        return out

    @staticmethod
    def _extend_ok(g: Graph, h: Graph, pos: GamePosition, a: int, b: int) -> bool:
        for a2, b2 in pos:
            if (a == a2) != (b == b2):
                return False
            if a != a2 and g.has_edge(a, a2) != h.has_edge(b, b2):
                return False
        return True

    def win(self, pos: GamePosition, k: int, alt: Optional[tuple[Optional[int], int]] = None) -> bool:
        """Spoiler forces a win within k further rounds from pos.

        alt, when given, is (last side Spoiler played in or None, remaining
        alternations).
        """
        if k <= 0:
            return False
        key = (frozenset(pos), k, alt)
        cached = self.memo.get(key)
        if cached is not None:
            return cached
        xs = tuple(a for a, _ in pos)
        ys = tuple(b for _, b in pos)
        result = False
        for side in (0, 1):
            if alt is not None:
                last, left = alt
                if last is not None and side != last and left == 0:
                    continue
                sub_alt = (side, left - (1 if last is not None and side != last else 0))
            else:
                sub_alt = None
            marked = xs if side == 0 else ys
            other_marked = ys if side == 0 else xs
            g_move = self.g if side == 0 else self.h
            g_reply = self.h if side == 0 else self.g
            for v in self._candidates(side, marked):
                all_fail = True
                for w in self._replies(1 - side, other_marked):
                    a, b = (v, w) if side == 0 else (w, v)
                    if not self._extend_ok(self.g, self.h, pos, a, b):
                        continue
                    if not self.win(pos + ((a, b),), k - 1, sub_alt):
                        all_fail = False
                        break
                if all_fail:
                    result = True
                    break
            if result:
                break
        self.memo[key] = result
        return result


def spoiler_wins(g: Graph, h: Graph, pos: GamePosition = (), k: int = 0,
                 solver: Optional[GameSolver] = None) -> bool:
    """Spoiler forces a win within k further rounds; k=0 means Duplicator
    has already won if pos holds."""
    pos = tuple(tuple(p) for p in pos)
    if not position_valid(g, h, pos):
        raise EngineError("position is not a partial isomorphism")
    s = solver or GameSolver(g, h)
    _check_cap(g, h, k)
    return s.win(pos, k)


def _check_cap(g: Graph, h: Graph, k: int):
    est = 1
    for i in range(k):
        est *= (g.n + 1) * (h.n + 1)
        if est > STATE_CAP:
            raise CapExceeded(
                f"estimated state count above {STATE_CAP}; undecided at cap")
    return est


def distinguishing_depth(g: Graph, h: Graph, solver: Optional[GameSolver] = None) -> int:
    """Minimum rounds in which Spoiler wins from the empty position.

    Always at most min(v(g), v(h)) + 1 for non-isomorphic inputs.
    """
    if is_isomorphic(g, h):
        raise EngineError("graphs are isomorphic: no distinguishing depth")
    s = solver or GameSolver(g, h)
    cap = min(g.n, h.n) + 1
    for k in range(cap + 1):
        if s.win((), k):
            return k
    raise AssertionError("non-isomorphic pair not distinguished within v+1 rounds")


def distinguishing_depth_alt(g: Graph, h: Graph, r: int,
                             solver: Optional[GameSolver] = None) -> int:
    """Smallest k such that Spoiler wins with at most r side alternations.

    A move in g counts as existential, a move in h as universal; switches
    of Spoiler's side are counted.  Weakly decreasing in r and equal to
    distinguishing_depth once r is large.
    """
    if is_isomorphic(g, h):
        raise EngineError("graphs are isomorphic: no distinguishing depth")
    s = solver or GameSolver(g, h)
    cap = g.n + h.n + 2
    for k in range(cap + 1):
        if s.win((), k, (None, r)):
            return k
    raise AssertionError("alternation-bounded game not won within n+n'+2 rounds")


@dataclass
class MoveAnalysis:
    """Exact per-move values at a position.

    spoiler_moves maps (side, vertex) -> minimal remaining rounds to force a
    win within the budget, or None if no forced win.  When a pending Spoiler
    move awaits a reply, duplicator_replies maps vertex -> maximal number of
    further rounds Duplicator survives (budget counts the pending round).
    """

    budget: int
    spoiler_moves: dict
    duplicator_replies: dict


def analyze_moves(g: Graph, h: Graph, pos: GamePosition, budget: int,
                  alt: Optional[tuple[Optional[int], int]] = None,
                  pending: Optional[tuple[int, int]] = None,
                  solver: Optional[GameSolver] = None) -> MoveAnalysis:
    """Per-move game values consistent with spoiler_wins.

    Ties between optimal moves are broken by (side index, vertex id), which
    analysis consumers rely on for reproducibility.
    """
    pos = tuple(tuple(p) for p in pos)
    if not position_valid(g, h, pos):
        raise EngineError("position is not a partial isomorphism")
    s = solver or GameSolver(g, h)
    _check_cap(g, h, budget)
    spoiler_moves: dict = {}
    replies: dict = {}
    if pending is None:
        for side in (0, 1):
            if alt is not None:
                last, left = alt
                if last is not None and side != last and left == 0:
                    continue
                sub_alt = (side, left - (1 if last is not None and side != last else 0))
            else:
                sub_alt = None
            graph = g if side == 0 else h
            for v in range(graph.n):
                value = None
                for t in range(1, budget + 1):
                    if _move_wins(s, pos, side, v, t, sub_alt):
                        value = t
                        break
                spoiler_moves[(side, v)] = value
    else:
        side, v = pending
        sub_alt = None
        if alt is not None:
            last, left = alt
            sub_alt = (side, left - (1 if last is not None and side != last else 0))
        other = h if side == 0 else g
        for w in range(other.n):
            a, b = (v, w) if side == 0 else (w, v)
            if not GameSolver._extend_ok(g, h, pos, a, b):
                replies[w] = 0
                continue
            newpos = pos + ((a, b),)
            surv = budget - 1
            for t in range(budget):
                if s.win(newpos, t, sub_alt):
                    surv = t - 1
                    break
            replies[w] = surv + 1  # rounds survived including the pending one
    return MoveAnalysis(budget=budget, spoiler_moves=spoiler_moves,
                        duplicator_replies=replies)


def _move_wins(s: GameSolver, pos: GamePosition, side: int, v: int, t: int,
               sub_alt) -> bool:
    """Spoiler move (side, v) forces a win within t rounds total."""
    g, h = s.g, s.h
    other_marked = tuple(b for _, b in pos) if side == 0 else tuple(a for a, _ in pos)
    for w in s._replies(1 - side, other_marked):
        a, b = (v, w) if side == 0 else (w, v)
        if not GameSolver._extend_ok(g, h, pos, a, b):
            continue
        if not s.win(pos + ((a, b),), t - 1, sub_alt):
            return False
    return True


# ---------------------------------------------------------------------------
# Sentence synthesis


def synthesize_sentence(g: Graph, h: Graph) -> F.Formula:
    """A sentence true on g, false on h, of depth exactly D(g,h).

    Built from an optimal Spoiler strategy: a move v in g becomes an
    existential quantifier over the atomic type of v against the marked
    vertices, conjoined with subsentences for each Duplicator reply class;
    a move in h becomes the dual universal form.
    """
    s = GameSolver(g, h)
    d = distinguishing_depth(g, h, solver=s)
    return _synth(s, (), d, 0)


def _var(i: int) -> str:
    return f"x{i + 1}"


def _type_literals(graph: Graph, v: int, marked: tuple[int, ...], newvar: str) -> list[F.Formula]:
    lits: list[F.Formula] = []
    for j, m in enumerate(marked):
        eq = F.AtomEq(newvar, _var(j))
        lits.append(eq if v == m else F.Not(eq))
        if v != m:
            adj = F.AtomAdj(newvar, _var(j))
            lits.append(adj if graph.has_edge(v, m) else F.Not(adj))
    return lits


def _conj(parts: list[F.Formula], var: str) -> F.Formula:
    if not parts:
        return F.AtomEq(var, var)  # truth
    if len(parts) == 1:
        return parts[0]
    return F.And(tuple(parts))


def _synth(s: GameSolver, pos: GamePosition, k: int, depth_used: int) -> F.Formula:
    """Formula with free vars x1..x|pos| true on (g, pos_g), false on (h, pos_h),
    of quantifier depth exactly k, given Spoiler wins in k rounds."""
    g, h = s.g, s.h
    xs = tuple(a for a, _ in pos)
    ys = tuple(b for _, b in pos)
    newvar = _var(len(pos))
    # optimal move: lowest side index then lowest vertex id among moves
    # that win within k rounds
    for side in (0, 1):
        marked = xs if side == 0 else ys
        for v in s._candidates(side, marked):
            if not _move_wins(s, pos, side, v, k, None):
                continue
            graph = g if side == 0 else h
            other_marked = ys if side == 0 else xs
            tau = _type_literals(graph, v, marked, newvar)
            children = []
            for w in s._replies(1 - side, other_marked):
                a, b = (v, w) if side == 0 else (w, v)
                if not GameSolver._extend_ok(g, h, pos, a, b):
                    continue
                children.append(_synth(s, pos + ((a, b),), k - 1, depth_used + 1))
            if side == 0:
                return F.Exists(newvar, _conj(tau + children, newvar))
            # dual: any vertex of h matching the type admits a true branch on g
            if not children:
                body: F.Formula = F.Not(_conj(tau, newvar))
            elif not tau:
                body = children[0] if len(children) == 1 else F.Or(tuple(children))
            else:
                cons = children[0] if len(children) == 1 else F.Or(tuple(children))
                body = F.Implies(_conj(tau, newvar), cons)
            return F.Forall(newvar, body)
    raise AssertionError(f"no winning move found at k={k}")


# ---------------------------------------------------------------------------
# Families of adversaries


def depth_over_family(g: Graph, adversaries: Iterable[Graph]) -> tuple[int, Graph]:
    """max D(g, h) over the non-isomorphic members, with an attaining h.

    A lower bound for the true D(g) when the family is partial.
    """
    best = -1
    arg = None
    for h in adversaries:
        if is_isomorphic(g, h):
            continue
        d = distinguishing_depth(g, h)
        if d > best:
            best, arg = d, h
    if arg is None:
        raise EngineError("no non-isomorphic adversary in the family")
    return best, arg


def same_order_depth(g: Graph) -> int:
    """Depth needed against every non-isomorphic graph of the same order.

    Exact for v(g) <= 7.  Defined as 0 when there is no non-isomorphic
    graph of the order (v(g) <= 1).
    """
    if g.n > 7:
        raise EngineError("same-order depth supported only for v(g) <= 7")
    pool = [h for h in enumerate_graphs(g.n) if not is_isomorphic(g, h)]
    if not pool:
        return 0
    return depth_over_family(g, pool)[0]


# ---------------------------------------------------------------------------
# Naive oracle (kept deliberately independent of GameSolver)


def naive_spoiler_wins(g: Graph, h: Graph, pos: GamePosition, k: int) -> bool:
    """Unmemoized game recursion over all moves; oracle for the solver."""
    if k <= 0:
        return False
    xs = [a for a, _ in pos]
    ys = [b for _, b in pos]
    for side in (0, 1):
        mover, other = (g, h) if side == 0 else (h, g)
        marked = set(xs if side == 0 else ys)
        for v in range(mover.n):
            if v in marked:
                continue  # copying reply makes such moves never necessary
            all_fail = True
            for w in range(other.n):
                a, b = (v, w) if side == 0 else (w, v)
                ok = True
                for a2, b2 in pos:
                    if (a == a2) != (b == b2) or (
                        a != a2 and g.has_edge(a, a2) != h.has_edge(b, b2)
                    ):
                        ok = False
                        break
                if not ok:
                    continue
                if not naive_spoiler_wins(g, h, pos + ((a, b),), k - 1):
                    all_fail = False
                    break
            if all_fail:
                return True
    return False


def naive_distinguishing_depth(g: Graph, h: Graph) -> int:
    cap = min(g.n, h.n) + 1
    for k in range(cap + 1):
        if naive_spoiler_wins(g, h, (), k):
            return k
    raise AssertionError("non-isomorphic pair not distinguished within v+1 rounds")
