"""Immersive transduction from a graph onto any of its subgraphs via star coloring.

Given a star coloring of the host graph with C colors, the expansion marks
the subgraph's vertex set X, the color classes M_1..M_C, and N_i = vertices
having a subgraph-neighbor of color i.  The quantifier-free interpretation
(X(x), edge formula below) then recovers the subgraph exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import NoStarColoringError
from .graphs import ColoredGraph, Graph, Subgraph, adjacency
from .invariants import is_star_coloring, star_chromatic_number, star_coloring_with
from .logic import And, EdgeAtom, Formula, PredAtom, conjunction, disjunction
from .transduction import Interpretation


@dataclass(frozen=True)
class StarColoring:
    """colors[v] is a 1-based color index."""

    colors: tuple

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(self.colors))

    @property
    def num_colors(self) -> int:
        return max(self.colors, default=0)

    def classes(self) -> dict:
        out: dict = {}
        for v, c in enumerate(self.colors):
            out.setdefault(c, set()).add(v)
        return out

    def is_valid_for(self, g: Graph) -> bool:
        return len(self.colors) == g.n and is_star_coloring(g, self.colors)


def find_star_coloring(g: Graph, max_colors: int, minimize: bool = False) -> StarColoring:
    """Backtracking search; raises NoStarColoringError if max_colors is too few."""
    if minimize:
        count, colors = star_chromatic_number(g, with_coloring=True)
        if count > max_colors:
            raise NoStarColoringError(
                f"needs {count} colors, only {max_colors} allowed")
        return StarColoring(colors)
    colors = star_coloring_with(g, max_colors)
    if colors is None:
        raise NoStarColoringError(f"no star coloring with {max_colors} colors")
    return StarColoring(colors)


@dataclass(frozen=True)
class MonotoneExpansion:
    base: ColoredGraph
    target: Subgraph
    num_colors: int


def build_expansion(g: Graph, h: Subgraph, gamma: StarColoring) -> MonotoneExpansion:
    """The expansion realizing the subgraph h: X = V(h), M_i = color class i,
    N_i = vertices with an h-neighbor of color i."""
    if not h.is_subgraph_of(g):
        raise ValueError("h is not a subgraph of g")
    if not gamma.is_valid_for(g):
        raise ValueError("coloring is not a star coloring of g")
    c = gamma.num_colors
    preds = {"X": frozenset(h.vertices)}
    for i in range(1, c + 1):
        preds[f"M{i}"] = frozenset(v for v in range(g.n) if gamma.colors[v] == i)
    h_adj: dict = {v: set() for v in range(g.n)}
    for u, v in h.edges:
        h_adj[u].add(v)
        h_adj[v].add(u)
    for i in range(1, c + 1):
        preds[f"N{i}"] = frozenset(v for v in range(g.n)
                                   if any(gamma.colors[u] == i for u in h_adj[v]))
    return MonotoneExpansion(ColoredGraph(g, preds), h, c)


def monotone_eta(num_colors: int) -> Formula:
    """E(x,y) & (OR_i M_i(x) & N_i(y)) & (OR_i M_i(y) & N_i(x))."""
    if num_colors < 1:
        raise ValueError("need at least one color")
    fwd = disjunction(And(PredAtom(f"M{i}", "x"), PredAtom(f"N{i}", "y"))
                      for i in range(1, num_colors + 1))
    bwd = disjunction(And(PredAtom(f"M{i}", "y"), PredAtom(f"N{i}", "x"))
                      for i in range(1, num_colors + 1))
    return conjunction([EdgeAtom("x", "y"), fwd, bwd])


def monotone_interpretation(num_colors: int) -> Interpretation:
    return Interpretation(PredAtom("X", "x"), monotone_eta(num_colors))


@dataclass(frozen=True)
class MonotoneReport:
    ok: bool
    coloring: StarColoring
    expansion: MonotoneExpansion
    produced: Subgraph

    def __bool__(self):
        return self.ok


def extract_subgraph(expansion: MonotoneExpansion) -> Subgraph:
    """Apply the interpretation to the expansion, mapped back to host indices."""
    interp = monotone_interpretation(expansion.num_colors)
    out, kept = interp.apply(expansion.base)
    verts = frozenset(kept)
    edges = frozenset((kept[u], kept[v]) for u, v in out.edges)
    return Subgraph(verts, edges)


def verify_monotone(g: Graph, h: Subgraph, max_colors: Optional[int] = None,
                    coloring: Optional[StarColoring] = None) -> MonotoneReport:
    """Star-color g, build the expansion for h, interpret, compare exactly.

    A precomputed coloring can be passed in when checking many subgraphs of
    the same host.
    """
    if coloring is None:
        coloring = find_star_coloring(g, max_colors if max_colors else g.n,
                                      minimize=max_colors is None)
    expansion = build_expansion(g, h, coloring)
    produced = extract_subgraph(expansion)
    ok = produced.vertices == h.vertices and produced.edges == h.edges
    return MonotoneReport(ok, coloring, expansion, produced)
