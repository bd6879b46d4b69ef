"""First-order formulas over colored graphs: AST, parser, evaluator, locality.

The signature is the binary adjacency relation E, named unary predicates,
equality, and a bounded-distance builtin dist(x,y)<=r.  Predicate names that
a graph does not carry evaluate as the empty set, so formulas stay evaluable
on partially expanded graphs.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import FormulaSyntaxError, UnboundVariableError
from .graphs import ColoredGraph, Graph, colored_ball, distance_matrix


class Formula:
    """Base class; all nodes are immutable and hashable."""

    __slots__ = ()


@dataclass(frozen=True)
class TrueF(Formula):
    pass


@dataclass(frozen=True)
class FalseF(Formula):
    pass


TRUE = TrueF()
FALSE = FalseF()


@dataclass(frozen=True)
class EdgeAtom(Formula):
    x: str
    y: str


@dataclass(frozen=True)
class PredAtom(Formula):
    name: str
    var: str


@dataclass(frozen=True)
class Equals(Formula):
    x: str
    y: str


@dataclass(frozen=True)
class DistLeq(Formula):
    x: str
    y: str
    bound: int

    def __post_init__(self):
        if self.bound < 0:
            raise ValueError("distance bound must be >= 0")


@dataclass(frozen=True)
class Not(Formula):
    sub: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


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


def conjunction(parts: Iterable) -> Formula:
    parts = list(parts)
    if not parts:
        return TRUE
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def disjunction(parts: Iterable) -> Formula:
    parts = list(parts)
    if not parts:
        return FALSE
    out = parts[0]
    for p in parts[1:]:
        out = Or(out, p)
    return out


def free_vars(f: Formula) -> frozenset:
    if isinstance(f, (TrueF, FalseF)):
        return frozenset()
    if isinstance(f, (EdgeAtom, Equals, DistLeq)):
        return frozenset((f.x, f.y))
    if isinstance(f, PredAtom):
        return frozenset((f.var,))
    if isinstance(f, Not):
        return free_vars(f.sub)
    if isinstance(f, (And, Or, Implies, Iff)):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, (Exists, Forall)):
        return free_vars(f.body) - {f.var}
    raise TypeError(f"not a formula: {f!r}")


def all_vars(f: Formula) -> frozenset:
    """Every variable name occurring in f, free or bound."""
    if isinstance(f, (TrueF, FalseF)):
        return frozenset()
    if isinstance(f, (EdgeAtom, Equals, DistLeq)):
        return frozenset((f.x, f.y))
    if isinstance(f, PredAtom):
        return frozenset((f.var,))
    if isinstance(f, Not):
        return all_vars(f.sub)
    if isinstance(f, (And, Or, Implies, Iff)):
        return all_vars(f.left) | all_vars(f.right)
    if isinstance(f, (Exists, Forall)):
        return all_vars(f.body) | {f.var}
    raise TypeError(f"not a formula: {f!r}")


def quantifier_rank(f: Formula) -> int:
    """Maximal nesting depth of explicit quantifiers (dist builtin counts 0)."""
    if isinstance(f, Not):
        return quantifier_rank(f.sub)
    if isinstance(f, (And, Or, Implies, Iff)):
        return max(quantifier_rank(f.left), quantifier_rank(f.right))
    if isinstance(f, (Exists, Forall)):
        return 1 + quantifier_rank(f.body)
    return 0


def expanded_quantifier_rank(f: Formula) -> int:
    """Rank counting dist(x,y)<=r as ceil(log2(r+1)) for its doubling expansion."""
    if isinstance(f, DistLeq):
        return math.ceil(math.log2(f.bound + 1)) if f.bound > 0 else 0
    if isinstance(f, Not):
        return expanded_quantifier_rank(f.sub)
    if isinstance(f, (And, Or, Implies, Iff)):
        return max(expanded_quantifier_rank(f.left), expanded_quantifier_rank(f.right))
    if isinstance(f, (Exists, Forall)):
        return 1 + expanded_quantifier_rank(f.body)
    return 0


def rename_free(f: Formula, mapping: Mapping) -> Formula:
    """Simultaneously rename free variables, alpha-renaming binders on capture."""
    targets = set(mapping.values())

    def go(node, mp):
        if isinstance(node, (TrueF, FalseF)):
            return node
        if isinstance(node, EdgeAtom):
            return EdgeAtom(mp.get(node.x, node.x), mp.get(node.y, node.y))
        if isinstance(node, Equals):
            return Equals(mp.get(node.x, node.x), mp.get(node.y, node.y))
        if isinstance(node, DistLeq):
            return DistLeq(mp.get(node.x, node.x), mp.get(node.y, node.y), node.bound)
        if isinstance(node, PredAtom):
            return PredAtom(node.name, mp.get(node.var, node.var))
        if isinstance(node, Not):
            return Not(go(node.sub, mp))
        if isinstance(node, (And, Or, Implies, Iff)):
            return type(node)(go(node.left, mp), go(node.right, mp))
        if isinstance(node, (Exists, Forall)):
            inner = {k: v for k, v in mp.items() if k != node.var}
            var = node.var
            body = node.body
            captures = any(tgt == var and src in free_vars(body)
                           for src, tgt in inner.items())
            if captures:
                fresh = var
                taken = targets | free_vars(body) | set(inner)
                while fresh in taken:
                    fresh += "_"
                body = go(body, {var: fresh})
                var = fresh
            return type(node)(var, go(body, inner))
        raise TypeError(f"not a formula: {node!r}")

    return go(f, dict(mapping))


def swap_xy(f: Formula, x: str = "x", y: str = "y") -> Formula:
    return rename_free(f, {x: y, y: x})


def fold_constants(f: Formula) -> Formula:
    """Constant folding only; no other simplification."""
    if isinstance(f, Not):
        s = fold_constants(f.sub)
        if isinstance(s, TrueF):
            return FALSE
        if isinstance(s, FalseF):
            return TRUE
        if isinstance(s, Not):
            return s.sub
        return Not(s)
    if isinstance(f, (And, Or, Implies, Iff)):
        a, b = fold_constants(f.left), fold_constants(f.right)
        if isinstance(f, And):
            if isinstance(a, FalseF) or isinstance(b, FalseF):
                return FALSE
            if isinstance(a, TrueF):
                return b
            if isinstance(b, TrueF):
                return a
            return And(a, b)
        if isinstance(f, Or):
            if isinstance(a, TrueF) or isinstance(b, TrueF):
                return TRUE
            if isinstance(a, FalseF):
                return b
            if isinstance(b, FalseF):
                return a
            return Or(a, b)
        if isinstance(f, Implies):
            if isinstance(a, FalseF) or isinstance(b, TrueF):
                return TRUE
            if isinstance(a, TrueF):
                return b
            if isinstance(b, FalseF):
                return fold_constants(Not(a))
            return Implies(a, b)
        if isinstance(a, TrueF):
            return b
        if isinstance(b, TrueF):
            return a
        if isinstance(a, FalseF):
            return fold_constants(Not(b))
        if isinstance(b, FalseF):
            return fold_constants(Not(a))
        return Iff(a, b)
    if isinstance(f, (Exists, Forall)):
        body = fold_constants(f.body)
        return type(f)(f.var, body)
    return f


# ---------------------------------------------------------------------------
# Evaluation


def evaluate(cg: ColoredGraph, f: Formula, assignment: Mapping) -> bool:
    """Standard FO satisfaction; distances via cached per-graph BFS matrices."""
    missing = free_vars(f) - set(assignment)
    if missing:
        raise UnboundVariableError(f"unassigned free variables: {sorted(missing)}")
    n = cg.graph.n
    env = dict(assignment)

    def go(node) -> bool:
        if isinstance(node, TrueF):
            return True
        if isinstance(node, FalseF):
            return False
        if isinstance(node, EdgeAtom):
            return cg.graph.has_edge(env[node.x], env[node.y])
        if isinstance(node, PredAtom):
            return env[node.var] in cg.pred(node.name)
        if isinstance(node, Equals):
            return env[node.x] == env[node.y]
        if isinstance(node, DistLeq):
            d = distance_matrix(cg.graph)[env[node.x]][env[node.y]]
            return 0 <= d <= node.bound
        if isinstance(node, Not):
            return not go(node.sub)
        if isinstance(node, And):
            return go(node.left) and go(node.right)
        if isinstance(node, Or):
            return go(node.left) or go(node.right)
        if isinstance(node, Implies):
            return (not go(node.left)) or go(node.right)
        if isinstance(node, Iff):
            return go(node.left) == go(node.right)
        if isinstance(node, (Exists, Forall)):
            existential = isinstance(node, Exists)
            saved = env.get(node.var, _MISSING)
            result = not existential
            for v in range(n):
                env[node.var] = v
                if go(node.body) == existential:
                    result = existential
                    break
            if saved is _MISSING:
                env.pop(node.var, None)
            else:
                env[node.var] = saved
            return result
        raise TypeError(f"not a formula: {node!r}")

    return go(f)


_MISSING = object()


def solution_set(cg: ColoredGraph, f: Formula, variables: Iterable) -> set:
    """All satisfying tuples for the given variable order (exhaustive)."""
    variables = list(variables)
    if set(variables) != set(free_vars(f)):
        raise ValueError(f"variables {variables} do not match free variables "
                         f"{sorted(free_vars(f))}")
    out = set()
    for tup in itertools.product(range(cg.graph.n), repeat=len(variables)):
        if evaluate(cg, f, dict(zip(variables, tup))):
            out.add(tup)
    return out


def zeta_formula(r: int, pattern: Graph) -> Formula:
    """Distance-pattern formula: dist <= r along pattern edges, > r along non-edges.

    Pattern vertex i corresponds to variable x{i+1}.
    """
    parts = []
    for i in range(pattern.n):
        for j in range(i + 1, pattern.n):
            atom = DistLeq(f"x{i + 1}", f"x{j + 1}", r)
            parts.append(atom if pattern.has_edge(i, j) else Not(atom))
    return conjunction(parts)


# ---------------------------------------------------------------------------
# Locality testing (corpus-relative)


@dataclass(frozen=True)
class LocalityReport:
    radius_tested: int
    holds: bool
    witness: tuple | None = None  # (ColoredGraph, assignment tuple)
    note: str = ""

    def __bool__(self):
        return self.holds


def _tuples(n: int, k: int):
    return itertools.product(range(n), repeat=k)


def is_r_local_on_corpus(f: Formula, r: int, corpus: Iterable) -> LocalityReport:
    """Does satisfaction agree with satisfaction in the radius-r ball of the tuple?

    Corpus-relative evidence only, not a proof of locality.
    """
    fv = sorted(free_vars(f))
    if not fv:
        raise ValueError("locality is defined for formulas with free variables")
    for cg in corpus:
        for tup in _tuples(cg.graph.n, len(fv)):
            assignment = dict(zip(fv, tup))
            full = evaluate(cg, f, assignment)
            bg, origin = colored_ball(cg, set(tup), r)
            pos = {v: i for i, v in enumerate(origin)}
            local = evaluate(bg, f, {var: pos[v] for var, v in assignment.items()})
            if full != local:
                return LocalityReport(r, False, (cg, tup),
                                      note="ball evaluation disagrees")
    return LocalityReport(r, True)


def is_strongly_r_local_on_corpus(f: Formula, r: int, corpus: Iterable) -> LocalityReport:
    """r-local on the corpus and satisfying tuples have pairwise distance <= r."""
    corpus = list(corpus)
    local = is_r_local_on_corpus(f, r, corpus)
    if not local.holds:
        return local
    fv = sorted(free_vars(f))
    for cg in corpus:
        dm = distance_matrix(cg.graph)
        for tup in _tuples(cg.graph.n, len(fv)):
            if evaluate(cg, f, dict(zip(fv, tup))):
                for a, b in itertools.combinations(tup, 2):
                    if not 0 <= dm[a][b] <= r:
                        return LocalityReport(r, False, (cg, tup),
                                              note="satisfying tuple too spread")
    return LocalityReport(r, True)


# ---------------------------------------------------------------------------
# Parser: atoms E(x,y), Name(x), x=y, dist(x,y)<=INT, true/false;
# connectives ! & | -> <-> (loosest last); quantifiers `ex v.`/`all v.`
# whose scope extends maximally to the right.

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<iff><->)
  | (?P<implies>->)
  | (?P<leq><=)
  | (?P<lparen>\()
  | (?P<rparen>\))
  | (?P<comma>,)
  | (?P<dot>\.)
  | (?P<eq>=)
  | (?P<not>!)
  | (?P<and>&)
  | (?P<or>\|)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
""", re.VERBOSE)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    line: int
    column: int


def _tokenize(text: str):
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        chunk = m.group()
        if kind != "ws":
            tokens.append(_Token(kind, chunk, line, col))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            col = len(chunk) - chunk.rfind("\n")
        else:
            col += len(chunk)
        pos = m.end()
    tokens.append(_Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind):
        tok = self.peek()
        if tok.kind != kind:
            raise FormulaSyntaxError(
                f"expected {kind}, found {tok.text or 'end of input'!r}",
                tok.line, tok.column)
        self.pos += 1
        return tok

    def parse(self):
        f = self.formula()
        tok = self.peek()
        if tok.kind != "eof":
            raise FormulaSyntaxError(f"trailing input {tok.text!r}", tok.line, tok.column)
        return f

    def formula(self):
        left = self.implication()
        while self.peek().kind == "iff":
            self.take("iff")
            left = Iff(left, self.implication())
        return left

    def implication(self):
        left = self.disjunct()
        if self.peek().kind == "implies":
            self.take("implies")
            return Implies(left, self.implication())
        return left

    def disjunct(self):
        left = self.conjunct()
        while self.peek().kind == "or":
            self.take("or")
            left = Or(left, self.conjunct())
        return left

    def conjunct(self):
        left = self.unary()
        while self.peek().kind == "and":
            self.take("and")
            left = And(left, self.unary())
        return left

    def unary(self):
        tok = self.peek()
        if tok.kind == "not":
            self.take("not")
            return Not(self.unary())
        if tok.kind == "ident" and tok.text in ("ex", "all"):
            self.take("ident")
            var = self.take("ident").text
            self.take("dot")
            body = self.formula()  # maximal scope
            return Exists(var, body) if tok.text == "ex" else Forall(var, body)
        return self.atom()

    def atom(self):
        tok = self.peek()
        if tok.kind == "lparen":
            self.take("lparen")
            f = self.formula()
            self.take("rparen")
            return f
        if tok.kind == "ident":
            name = self.take("ident").text
            if name == "true":
                return TRUE
            if name == "false":
                return FALSE
            if name == "dist":
                self.take("lparen")
                x = self.take("ident").text
                self.take("comma")
                y = self.take("ident").text
                self.take("rparen")
                self.take("leq")
                bound = int(self.take("int").text)
                return DistLeq(x, y, bound)
            if self.peek().kind == "lparen":
                self.take("lparen")
                args = [self.take("ident").text]
                while self.peek().kind == "comma":
                    self.take("comma")
                    args.append(self.take("ident").text)
                self.take("rparen")
                if name == "E":
                    if len(args) != 2:
                        raise FormulaSyntaxError("E takes two arguments",
                                                 tok.line, tok.column)
                    return EdgeAtom(args[0], args[1])
                if len(args) != 1:
                    raise FormulaSyntaxError(
                        f"predicate {name} takes one argument", tok.line, tok.column)
                return PredAtom(name, args[0])
            if self.peek().kind == "eq":
                self.take("eq")
                other = self.take("ident").text
                return Equals(name, other)
            raise FormulaSyntaxError(f"dangling identifier {name!r}",
                                     tok.line, tok.column)
        raise FormulaSyntaxError(f"unexpected token {tok.text or 'end of input'!r}",
                                 tok.line, tok.column)


def parse(text: str) -> Formula:
    return _Parser(text).parse()


_LEVELS = {Iff: 0, Implies: 1, Or: 2, And: 3, Not: 4}


def to_text(f: Formula) -> str:
    """Canonical ASCII rendering; parse(to_text(f)) == f."""

    def wrap(node, level):
        text, mine = emit(node)
        return f"({text})" if mine < level else text

    def emit(node):
        if isinstance(node, TrueF):
            return "true", 5
        if isinstance(node, FalseF):
            return "false", 5
        if isinstance(node, EdgeAtom):
            return f"E({node.x},{node.y})", 5
        if isinstance(node, PredAtom):
            return f"{node.name}({node.var})", 5
        if isinstance(node, Equals):
            return f"{node.x}={node.y}", 5
        if isinstance(node, DistLeq):
            return f"dist({node.x},{node.y})<={node.bound}", 5
        if isinstance(node, Not):
            return f"!{wrap(node.sub, 5)}", 4
        if isinstance(node, And):
            return f"{wrap(node.left, 3)} & {wrap(node.right, 4)}", 3
        if isinstance(node, Or):
            return f"{wrap(node.left, 2)} | {wrap(node.right, 3)}", 2
        if isinstance(node, Implies):
            return f"{wrap(node.left, 2)} -> {wrap(node.right, 1)}", 1
        if isinstance(node, Iff):
            return f"{wrap(node.left, 0)} <-> {wrap(node.right, 1)}", 0
        if isinstance(node, (Exists, Forall)):
            kw = "ex" if isinstance(node, Exists) else "all"
            body, _ = emit(node.body)
            # quantifier scope is maximal, so always parenthesized
            return f"({kw} {node.var}. {body})", 5
        raise TypeError(f"not a formula: {node!r}")

    return emit(f)[0]
