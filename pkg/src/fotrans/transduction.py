"""Transduction pipelines: copy, expansion, interpretation, subset complementation.

A pipeline runs left to right.  Expansion steps introduce named predicates
whose member sets are free choices; all other steps are deterministic.  The
output of a pipeline is the underlying graph of its final stage.
"""

from __future__ import annotations

import itertools
import shlex
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import BudgetExceededError, EmptyComparisonError
from .graphs import (ColoredGraph, Graph, are_isomorphic, copy_operation,
                     distance_matrix, edge, graph_sort_key)
from .logic import (And, Equals, Formula, Not, Or, evaluate, free_vars, parse,
                    swap_xy, to_text)


@dataclass(frozen=True)
class Interpretation:
    """A simple interpretation (domain formula, edge formula).

    The domain formula uses variable x; the edge formula uses x and y.  The
    stored edge formula is forcibly symmetrized and made irreflexive:
    (eta(x,y) | eta(y,x)) & !(x=y).
    """

    nu: Formula
    eta: Formula
    edge_formula: Formula = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if not free_vars(self.nu) <= {"x"}:
            raise ValueError("domain formula must use only variable x")
        if not free_vars(self.eta) <= {"x", "y"}:
            raise ValueError("edge formula must use only variables x and y")
        sym = And(Or(self.eta, swap_xy(self.eta)), Not(Equals("x", "y")))
        object.__setattr__(self, "edge_formula", sym)

    def apply(self, cg: ColoredGraph) -> tuple[Graph, tuple]:
        """Interpret cg; returns (graph, kept) with kept[i] = source vertex."""
        kept = tuple(v for v in range(cg.graph.n)
                     if evaluate(cg, self.nu, {"x": v}))
        pos = {v: i for i, v in enumerate(kept)}
        pairs = [(pos[u], pos[v]) for u, v in itertools.combinations(kept, 2)
                 if evaluate(cg, self.edge_formula, {"x": u, "y": v})]
        return Graph.from_edges(len(kept), pairs), kept


IDENTITY_INTERPRETATION_TEXT = ("true", "E(x,y)")


def identity_interpretation() -> Interpretation:
    nu, eta = IDENTITY_INTERPRETATION_TEXT
    return Interpretation(parse(nu), parse(eta))


@dataclass(frozen=True)
class Copy:
    k: int


@dataclass(frozen=True)
class Expand:
    names: tuple

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))


@dataclass(frozen=True)
class Interpret:
    interp: Interpretation


@dataclass(frozen=True)
class SubsetComplement:
    name: str


@dataclass(frozen=True)
class Transduction:
    steps: tuple

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))

    @property
    def is_normalized(self) -> bool:
        """At most one copy step, and if present it is first."""
        copies = [i for i, s in enumerate(self.steps) if isinstance(s, Copy)]
        return len(copies) == 0 or copies == [0]

    @property
    def expansion_names(self) -> tuple:
        """All predicate names introduced by expansion steps, in step order."""
        return tuple(name for s in self.steps if isinstance(s, Expand)
                     for name in s.names)

    def __repr__(self):
        return f"Transduction({list(self.steps)!r})"


def identity_transduction() -> Transduction:
    return Transduction(())


def perturbation(names: Iterable) -> Transduction:
    """Expand the named subsets, then complement each in turn."""
    names = tuple(names)
    if not names:
        return Transduction(())
    steps = [Expand(names)]
    steps.extend(SubsetComplement(n) for n in names)
    return Transduction(tuple(steps))


def compose(t1: Transduction, t2: Transduction) -> Transduction:
    """Concatenate pipelines (t1 runs first).

    If the result has a copy step out of normal position it is returned in
    raw form; check is_normalized.
    """
    return Transduction(t1.steps + t2.steps)


def _toggle_within(cg: ColoredGraph, name: str) -> ColoredGraph:
    members = sorted(cg.pred(name))
    toggled = frozenset(edge(u, v) for u, v in itertools.combinations(members, 2))
    return ColoredGraph(Graph(cg.graph.n, cg.graph.edges ^ toggled), cg.predicates)


def run_stages(t: Transduction, cg: ColoredGraph, choices: Iterable) -> list:
    """Run all steps; returns the list of stages (input first, output last)."""
    choices = list(choices)
    needed = len(t.expansion_names)
    if len(choices) != needed:
        raise ValueError(f"pipeline expands {needed} predicates "
                         f"but {len(choices)} choices were supplied")
    stages = [cg]
    ci = 0
    for step in t.steps:
        cur = stages[-1]
        if isinstance(step, Copy):
            cur = copy_operation(cur, step.k)
        elif isinstance(step, Expand):
            for name in step.names:
                cur = cur.with_predicate(name, choices[ci])
                ci += 1
        elif isinstance(step, Interpret):
            g2, _ = step.interp.apply(cur)
            cur = ColoredGraph.bare(g2)
        elif isinstance(step, SubsetComplement):
            cur = _toggle_within(cur, step.name)
        else:
            raise TypeError(f"unknown step {step!r}")
        stages.append(cur)
    return stages


def apply_with_coloring(t: Transduction, cg: ColoredGraph, choices: Iterable) -> ColoredGraph:
    return run_stages(t, cg, choices)[-1]


def coloring_space_bound(t: Transduction, n0: int) -> int:
    """Upper bound on the number of colorings a full enumeration visits."""
    n = n0
    total = 1
    for step in t.steps:
        if isinstance(step, Copy):
            n *= step.k
        elif isinstance(step, Expand):
            total *= 2 ** (len(step.names) * n)
    return total


def _check_budget(t: Transduction, cg: ColoredGraph, budget: int):
    bound = coloring_space_bound(t, cg.graph.n)
    if bound > budget:
        raise BudgetExceededError(bound, budget)


def _subsets_ascending(n: int):
    for mask in range(2 ** n):
        yield frozenset(v for v in range(n) if mask >> v & 1)


def _enumerate_runs(steps: tuple, cg: ColoredGraph):
    """Yield (final stage, choices) over all colorings, lexicographically.

    Subsets are enumerated by ascending bitmask with vertex 0 as the low bit;
    within an expansion step the first-listed predicate varies slowest.
    """
    if not steps:
        yield cg, ()
        return
    step, rest = steps[0], steps[1:]
    if isinstance(step, Expand):
        n = cg.graph.n
        for combo in itertools.product(list(_subsets_ascending(n)),
                                       repeat=len(step.names)):
            cur = cg
            for name, members in zip(step.names, combo):
                cur = cur.with_predicate(name, members)
            for out, tail in _enumerate_runs(rest, cur):
                yield out, combo + tail
    else:
        if isinstance(step, Copy):
            cur = copy_operation(cg, step.k)
        elif isinstance(step, Interpret):
            g2, _ = step.interp.apply(cg)
            cur = ColoredGraph.bare(g2)
        elif isinstance(step, SubsetComplement):
            cur = _toggle_within(cg, step.name)
        else:
            raise TypeError(f"unknown step {step!r}")
        yield from _enumerate_runs(rest, cur)


def output_set(t: Transduction, cg: ColoredGraph, budget: int) -> frozenset:
    """All output graphs over all colorings, deduplicated by labeled equality."""
    _check_budget(t, cg, budget)
    return frozenset(out.graph for out, _ in _enumerate_runs(t.steps, cg))


@dataclass(frozen=True)
class WitnessResult:
    found: bool
    choices: tuple | None
    expansion: ColoredGraph | None
    tried: int


def _expansion_snapshot(t: Transduction, cg: ColoredGraph, choices: tuple):
    """The colored stage holding all expanded predicates, when single-staged."""
    seen_interpret = False
    for step in t.steps:
        if isinstance(step, Interpret):
            seen_interpret = True
        elif isinstance(step, Expand) and seen_interpret:
            return None  # predicates live on different stages
    stages = run_stages(t, cg, choices)
    for i, step in enumerate(t.steps):
        if isinstance(step, Interpret):
            return stages[i]
    return stages[-1]


def witness_search(t: Transduction, source: ColoredGraph, target: Graph,
                   budget: int, iso: bool = False) -> WitnessResult:
    """Search the coloring space for an expansion mapping source onto target."""
    _check_budget(t, source, budget)
    tried = 0
    for out, choices in _enumerate_runs(t.steps, source):
        tried += 1
        hit = (are_isomorphic(out.graph, target) if iso
               else out.graph == target)
        if hit:
            return WitnessResult(True, choices,
                                 _expansion_snapshot(t, source, choices), tried)
    return WitnessResult(False, None, None, tried)


@dataclass(frozen=True)
class SubsumptionResult:
    holds: bool
    counterexample: tuple | None = None  # (source ColoredGraph, missing Graph)

    def __bool__(self):
        return self.holds


def subsumes_on_corpus(t1: Transduction, t2: Transduction,
                       corpus: Iterable, budget: int) -> SubsumptionResult:
    """Does t1 produce every t2 output on every corpus graph?"""
    for cg in corpus:
        big = output_set(t1, cg, budget)
        small = output_set(t2, cg, budget)
        missing = small - big
        if missing:
            return SubsumptionResult(False, (cg, min(missing, key=graph_sort_key)))
    return SubsumptionResult(True)


def distance_shrink_ratio(interp: Interpretation, cg: ColoredGraph) -> Fraction:
    """Minimum of dist_output / dist_source over kept pairs connected in both."""
    out, kept = interp.apply(cg)
    dm_src = distance_matrix(cg.graph)
    dm_out = distance_matrix(out)
    best = None
    for i, j in itertools.combinations(range(len(kept)), 2):
        ds = dm_src[kept[i]][kept[j]]
        do = dm_out[i][j]
        if ds <= 0 or do < 0:
            continue
        ratio = Fraction(do, ds)
        if best is None or ratio < best:
            best = ratio
    if best is None:
        raise EmptyComparisonError("no vertex pairs connected in both graphs")
    return best


# ---------------------------------------------------------------------------
# Description file: `copy <k>`, `expand <name>...`,
# `interpret nu "<formula>" eta "<formula>"`, `complement <name>`.


def loads_transduction(text: str) -> Transduction:
    steps = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = shlex.split(line)
        kind = fields[0]
        if kind == "copy":
            steps.append(Copy(int(fields[1])))
        elif kind == "expand":
            if len(fields) < 2:
                raise ValueError(f"line {lineno}: expand needs predicate names")
            steps.append(Expand(tuple(fields[1:])))
        elif kind == "interpret":
            if len(fields) != 5 or fields[1] != "nu" or fields[3] != "eta":
                raise ValueError(f"line {lineno}: expected "
                                 f'interpret nu "<formula>" eta "<formula>"')
            steps.append(Interpret(Interpretation(parse(fields[2]), parse(fields[4]))))
        elif kind == "complement":
            steps.append(SubsetComplement(fields[1]))
        else:
            raise ValueError(f"line {lineno}: unknown step {kind!r}")
    return Transduction(tuple(steps))


def dumps_transduction(t: Transduction) -> str:
    lines = []
    for step in t.steps:
        if isinstance(step, Copy):
            lines.append(f"copy {step.k}")
        elif isinstance(step, Expand):
            lines.append("expand " + " ".join(step.names))
        elif isinstance(step, Interpret):
            nu = to_text(step.interp.nu)
            eta = to_text(step.interp.eta)
            lines.append(f'interpret nu "{nu}" eta "{eta}"')
        elif isinstance(step, SubsetComplement):
            lines.append(f"complement {step.name}")
    return "\n".join(lines) + ("\n" if lines else "")
