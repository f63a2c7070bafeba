"""First-order formulas over graphs: AST, parser, evaluator, depth metrics.

The vocabulary has equality (x=y) and adjacency (x~y); quantifiers range
over vertices.  Connectives And/Or are n-ary to keep synthesized sentences
compact.

Grammar (whitespace insignificant)::

    formula := quant | iff
    quant   := ("E"|"A") var "." formula
    iff     := imp ("<->" imp)*
    imp     := or ("->" or)*
    or      := and ("|" and)*
    and     := unary ("&" unary)*
    unary   := "!" unary | "(" formula ")" | atom
    atom    := var ("="|"~") var
    var     := [a-z][a-z0-9_]*
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional

from .graphs import Graph


class FormulaError(ValueError):
    pass


class ParseError(FormulaError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} at line {line}, column {col}")
        self.line = line
        self.col = col


class EvalBudgetExceeded(FormulaError):
    pass


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Formula:
    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class AtomEq(Formula):
    left: str
    right: str


@dataclass(frozen=True)
class AtomAdj(Formula):
    left: str
    right: str


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    parts: tuple[Formula, ...]


@dataclass(frozen=True)
class Or(Formula):
    parts: tuple[Formula, ...]


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula


def free_variables(f: Formula, bound: frozenset = frozenset()) -> set[str]:
    if isinstance(f, (AtomEq, AtomAdj)):
        return {v for v in (f.left, f.right) if v not in bound}
    if isinstance(f, Not):
        return free_variables(f.body, bound)
    if isinstance(f, (And, Or)):
        out: set[str] = set()
        for p in f.parts:
            out |= free_variables(p, bound)
        return out
    if isinstance(f, (Implies, Iff)):
        return free_variables(f.left, bound) | free_variables(f.right, bound)
    if isinstance(f, (Exists, Forall)):
        return free_variables(f.body, bound | {f.var})
    raise FormulaError(f"unknown node {f!r}")


# ---------------------------------------------------------------------------
# Parser

_SYMBOLS = ("<->", "->", "(", ")", "!", "&", "|", ".", "=", "~")


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.tokens: list[tuple[str, str, int, int]] = []  # (kind, value, line, col)
        self._scan()
        self.idx = 0

    def _scan(self):
        line, col = 1, 1
        text = self.text
        i = 0
        while i < len(text):
            c = text[i]
            if c == "\n":
                line += 1
                col = 1
                i += 1
                continue
            if c.isspace():
                i += 1
                col += 1
                continue
            matched = False
            for sym in _SYMBOLS:
                if text.startswith(sym, i):
                    self.tokens.append(("sym", sym, line, col))
                    i += len(sym)
                    col += len(sym)
                    matched = True
                    break
            if matched:
                continue
            if c in ("E", "A"):
                self.tokens.append(("quant", c, line, col))
                i += 1
                col += 1
                continue
            if c.islower():
                j = i
                while j < len(text) and (text[j].islower() or text[j].isdigit() or text[j] == "_"):
                    j += 1
                self.tokens.append(("var", text[i:j], line, col))
                col += j - i
                i = j
                continue
            raise ParseError(f"unexpected character {c!r}", line, col)
        self.tokens.append(("eof", "", line, col))

    def peek(self):
        return self.tokens[self.idx]

    def next(self):
        t = self.tokens[self.idx]
        if t[0] != "eof":
            self.idx += 1
        return t

    def expect_sym(self, sym: str):
        kind, val, line, col = self.peek()
        if kind != "sym" or val != sym:
            raise ParseError(f"expected {sym!r}, found {val or 'end of input'!r}", line, col)
        return self.next()


def parse_formula(text: str, allow_free: bool = False) -> Formula:
    """Parse concrete syntax; sentences must have no free variables."""
    tok = _Tokenizer(text)
    f = _parse_formula(tok)
    kind, val, line, col = tok.peek()
    if kind != "eof":
        raise ParseError(f"unexpected trailing input {val!r}", line, col)
    if not allow_free:
        fv = free_variables(f)
        if fv:
            raise ParseError(f"unbound variable(s): {', '.join(sorted(fv))}", 1, 1)
    return f


def _parse_formula(tok: _Tokenizer) -> Formula:
    kind, val, _, _ = tok.peek()
    if kind == "quant":
        tok.next()
        vkind, var, line, col = tok.next()
        if vkind != "var":
            raise ParseError("expected variable after quantifier", line, col)
        tok.expect_sym(".")
        body = _parse_formula(tok)
        return Exists(var, body) if val == "E" else Forall(var, body)
    return _parse_iff(tok)


def _parse_iff(tok: _Tokenizer) -> Formula:
    left = _parse_imp(tok)
    kind, val, _, _ = tok.peek()
    if kind == "sym" and val == "<->":
        tok.next()
        right = _parse_iff(tok)
        return Iff(left, right)
    return left


def _parse_imp(tok: _Tokenizer) -> Formula:
    left = _parse_or(tok)
    kind, val, _, _ = tok.peek()
    if kind == "sym" and val == "->":
        tok.next()
        right = _parse_imp(tok)
        return Implies(left, right)
    return left


def _parse_or(tok: _Tokenizer) -> Formula:
    parts = [_parse_and(tok)]
    while tok.peek()[:2] == ("sym", "|"):
        tok.next()
        parts.append(_parse_and(tok))
    return parts[0] if len(parts) == 1 else Or(tuple(parts))


def _parse_and(tok: _Tokenizer) -> Formula:
    parts = [_parse_unary(tok)]
    while tok.peek()[:2] == ("sym", "&"):
        tok.next()
        parts.append(_parse_unary(tok))
    return parts[0] if len(parts) == 1 else And(tuple(parts))


def _parse_unary(tok: _Tokenizer) -> Formula:
    kind, val, line, col = tok.peek()
    if kind == "sym" and val == "!":
        tok.next()
        return Not(_parse_unary(tok))
    if kind == "sym" and val == "(":
        tok.next()
        f = _parse_formula(tok)
        tok.expect_sym(")")
        return f
    if kind == "quant":
        # quantifiers are allowed after "(" and at top level only; but a
        # nested quantifier directly under ! is also accepted for convenience
        return _parse_formula(tok)
    if kind == "var":
        tok.next()
        okind, op, oline, ocol = tok.next()
        if okind != "sym" or op not in ("=", "~"):
            raise ParseError("expected '=' or '~' in atom", oline, ocol)
        vkind, rhs, rline, rcol = tok.next()
        if vkind != "var":
            raise ParseError("dangling atom: expected variable", rline, rcol)
        return AtomEq(val, rhs) if op == "=" else AtomAdj(val, rhs)
    raise ParseError(f"unexpected token {val or 'end of input'!r}", line, col)


def render(f: Formula) -> str:
    """Concrete syntax; parse(render(f)) == f."""
    if isinstance(f, AtomEq):
        return f"{f.left} = {f.right}"
    if isinstance(f, AtomAdj):
        return f"{f.left} ~ {f.right}"
    if isinstance(f, Not):
        return f"!({render(f.body)})"
    if isinstance(f, And):
        if not f.parts:
            raise FormulaError("cannot render empty conjunction")
        return "(" + " & ".join(render(p) for p in f.parts) + ")"
    if isinstance(f, Or):
        if not f.parts:
            raise FormulaError("cannot render empty disjunction")
        return "(" + " | ".join(render(p) for p in f.parts) + ")"
    if isinstance(f, Implies):
        return f"({render(f.left)} -> {render(f.right)})"
    if isinstance(f, Iff):
        return f"({render(f.left)} <-> {render(f.right)})"
    if isinstance(f, Exists):
        return f"(E {f.var}. {render(f.body)})"
    if isinstance(f, Forall):
        return f"(A {f.var}. {render(f.body)})"
    raise FormulaError(f"unknown node {f!r}")


# ---------------------------------------------------------------------------
# Evaluation

EVAL_BUDGET = 10**9


class _Budget:
    __slots__ = ("left",)

    def __init__(self, limit: int):
        self.left = limit

    def spend(self):
        self.left -= 1
        if self.left < 0:
            raise EvalBudgetExceeded(f"evaluation exceeded {EVAL_BUDGET} visited assignments")


def eval_formula(g: Graph, f: Formula, assignment: Optional[dict] = None,
                 budget: int = EVAL_BUDGET) -> bool:
    """Standard FO semantics; quantifiers range over the vertices of g."""
    a = dict(assignment or {})
    fv = free_variables(f)
    missing = fv - a.keys()
    if missing:
        raise FormulaError(f"unbound free variable(s): {', '.join(sorted(missing))}")
    for var, v in a.items():
        if not 0 <= v < g.n:
            raise FormulaError(f"assignment {var}={v} outside vertex range")
    return _eval(g, f, a, _Budget(budget))


def _eval(g: Graph, f: Formula, a: dict, budget: _Budget) -> bool:
    budget.spend()
    if isinstance(f, AtomEq):
        return a[f.left] == a[f.right]
    if isinstance(f, AtomAdj):
        return g.has_edge(a[f.left], a[f.right]) if a[f.left] != a[f.right] else False
    if isinstance(f, Not):
        return not _eval(g, f.body, a, budget)
    if isinstance(f, And):
        return all(_eval(g, p, a, budget) for p in f.parts)
    if isinstance(f, Or):
        return any(_eval(g, p, a, budget) for p in f.parts)
    if isinstance(f, Implies):
        return (not _eval(g, f.left, a, budget)) or _eval(g, f.right, a, budget)
    if isinstance(f, Iff):
        return _eval(g, f.left, a, budget) == _eval(g, f.right, a, budget)
    if isinstance(f, (Exists, Forall)):
        old = a.get(f.var)
        hit = f.var in a
        result = not isinstance(f, Exists)
        for v in range(g.n):
            a[f.var] = v
            val = _eval(g, f.body, a, budget)
            if isinstance(f, Exists) and val:
                result = True
                break
            if isinstance(f, Forall) and not val:
                result = False
                break
        if hit:
            a[f.var] = old
        else:
            a.pop(f.var, None)
        return result
    raise FormulaError(f"unknown node {f!r}")


# ---------------------------------------------------------------------------
# Depth and alternation


def depth(f: Formula) -> int:
    """Maximum nesting of quantifiers along any root-to-leaf path."""
    if isinstance(f, (AtomEq, AtomAdj)):
        return 0
    if isinstance(f, Not):
        return depth(f.body)
    if isinstance(f, (And, Or)):
        return max((depth(p) for p in f.parts), default=0)
    if isinstance(f, (Implies, Iff)):
        return max(depth(f.left), depth(f.right))
    if isinstance(f, (Exists, Forall)):
        return 1 + depth(f.body)
    raise FormulaError(f"unknown node {f!r}")


def nnf(f: Formula, negate: bool = False) -> Formula:
    """Negation normal form; -> and <-> are expanded first."""
    if isinstance(f, AtomEq) or isinstance(f, AtomAdj):
        return Not(f) if negate else f
    if isinstance(f, Not):
        return nnf(f.body, not negate)
    if isinstance(f, And):
        parts = tuple(nnf(p, negate) for p in f.parts)
        return Or(parts) if negate else And(parts)
    if isinstance(f, Or):
        parts = tuple(nnf(p, negate) for p in f.parts)
        return And(parts) if negate else Or(parts)
    if isinstance(f, Implies):
        return nnf(Or((Not(f.left), f.right)), negate)
    if isinstance(f, Iff):
        expanded = And((Implies(f.left, f.right), Implies(f.right, f.left)))
        return nnf(expanded, negate)
    if isinstance(f, Exists):
        return Forall(f.var, nnf(f.body, True)) if negate else Exists(f.var, nnf(f.body, False))
    if isinstance(f, Forall):
        return Exists(f.var, nnf(f.body, True)) if negate else Forall(f.var, nnf(f.body, False))
    raise FormulaError(f"unknown node {f!r}")


def alternation_number(f: Formula) -> int:
    """Max number of E/A switches along a quantifier chain of the NNF."""
    chains = _alt(nnf(f))
    return max(chains.values(), default=0)


def _alt(f: Formula) -> dict[bool, int]:
    """Per leading-quantifier kind (True = Exists), the max switch count of
    any quantifier chain starting with that kind.  Empty dict: no chains."""
    if isinstance(f, (AtomEq, AtomAdj)):
        return {}
    if isinstance(f, Not):
        return _alt(f.body)
    if isinstance(f, (And, Or)):
        out: dict[bool, int] = {}
        for p in f.parts:
            for k, v in _alt(p).items():
                out[k] = max(out.get(k, -1), v)
        return out
    if isinstance(f, (Exists, Forall)):
        kind = isinstance(f, Exists)
        inner = _alt(f.body)
        if not inner:
            return {kind: 0}
        best = max(v + (1 if k != kind else 0) for k, v in inner.items())
        return {kind: best}
    raise FormulaError(f"alternation expects NNF, got {f!r}")
