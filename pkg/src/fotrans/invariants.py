"""Exact desk-scale graph invariants and model-theoretic pattern searches.

All widths are computed exactly by search (ground truth for the test suite),
with hard size caps so infeasibility is explicit rather than silent.  Pattern
searches enumerate lexicographically, so reported witnesses are reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .errors import BudgetExceededError, SizeLimitError, vertex_cap
from .graphs import ColoredGraph, Graph, adjacency
from .logic import Formula, evaluate, free_vars

WIDTH_CAP = 12
STAR_CAP = 14


def _adj_masks(g: Graph) -> list:
    masks = [0] * g.n
    for u, v in g.edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return masks


def _check_cap(g: Graph, cap: int, what: str):
    cap = vertex_cap(cap)
    if g.n > cap:
        raise SizeLimitError(what, g.n, cap)


def _components(g: Graph) -> list:
    seen = [False] * g.n
    adj = adjacency(g)
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _induced(g: Graph, verts: list) -> Graph:
    pos = {v: i for i, v in enumerate(verts)}
    return Graph.from_edges(len(verts), ((pos[u], pos[v]) for u, v in g.edges
                                         if u in pos and v in pos))


# ---------------------------------------------------------------------------
# Bandwidth: least l such that some vertex ordering places every edge within
# span l (equivalently G embeds in the l-th power of a path).


def bandwidth(g: Graph, with_ordering: bool = False):
    _check_cap(g, WIDTH_CAP, "bandwidth")
    best = 0
    order_out: list = []
    for comp in _components(g):
        sub = _induced(g, comp)
        width, order = _component_bandwidth(sub)
        best = max(best, width)
        order_out.extend(comp[i] for i in order)
    return (best, tuple(order_out)) if with_ordering else best


def _component_bandwidth(g: Graph):
    n = g.n
    if n == 1 or not g.edges:
        return 0, list(range(n))
    masks = _adj_masks(g)
    lower = max((-(-len(adjacency(g)[v]) // 2) for v in range(n)), default=1)
    for limit in range(max(lower, 1), n):
        order = _bandwidth_feasible(n, masks, limit)
        if order is not None:
            return limit, order
    return n - 1, list(range(n))


def _bandwidth_feasible(n: int, masks: list, limit: int) -> Optional[list]:
    """Place vertices position by position; prune when a placed vertex would
    be forced to reach an unplaced neighbor beyond the span limit."""
    placed = [-1] * n  # vertex -> position
    order: list = []

    def extend() -> bool:
        i = len(order)
        if i == n:
            return True
        placed_mask = 0
        for v in order:
            placed_mask |= 1 << v
        forced = set()
        for v in order:
            pending = masks[v] & ~placed_mask
            if pending and i - placed[v] >= limit:
                if i - placed[v] > limit or pending & (pending - 1):
                    return False  # already violated, or two vertices need one slot
                forced.add(pending.bit_length() - 1)
        if len(forced) > 1:
            return False  # distinct vertices compete for the next position
        candidates = (sorted(forced) if forced
                      else [v for v in range(n) if placed[v] < 0])
        for v in candidates:
            ok = True
            for w in range(n):
                if masks[v] >> w & 1 and placed[w] >= 0 and i - placed[w] > limit:
                    ok = False
                    break
            if ok:
                placed[v] = i
                order.append(v)
                if extend():
                    return True
                order.pop()
                placed[v] = -1
        return False

    return list(order) if extend() else None


# ---------------------------------------------------------------------------
# Pathwidth via optimal vertex separation (subset dynamic program).


def pathwidth(g: Graph, with_ordering: bool = False):
    _check_cap(g, WIDTH_CAP, "pathwidth")
    n = g.n
    masks = _adj_masks(g)
    full = (1 << n) - 1

    def boundary(s: int) -> int:
        count = 0
        for v in range(n):
            if s >> v & 1 and masks[v] & ~s:
                count += 1
        return count

    cost = [0] * (1 << n)
    back = [0] * (1 << n)
    for s in range(1, 1 << n):
        b = boundary(s)
        best, arg = None, -1
        t = s
        while t:
            v = (t & -t).bit_length() - 1
            t &= t - 1
            c = max(cost[s & ~(1 << v)], b)
            if best is None or c < best:
                best, arg = c, v
        cost[s] = best
        back[s] = arg
    if not with_ordering:
        return cost[full]
    order = []
    s = full
    while s:
        v = back[s]
        order.append(v)
        s &= ~(1 << v)
    return cost[full], tuple(reversed(order))


# ---------------------------------------------------------------------------
# Treewidth via optimal elimination ordering (subset dynamic program).


def treewidth(g: Graph, with_ordering: bool = False):
    _check_cap(g, WIDTH_CAP, "treewidth")
    n = g.n
    masks = _adj_masks(g)
    full = (1 << n) - 1

    def elim_degree(s: int, v: int) -> int:
        """Neighbors of v outside s reachable through paths inside s."""
        seen = 1 << v
        stack = [v]
        hits = 0
        while stack:
            u = stack.pop()
            t = masks[u] & ~seen
            while t:
                w = (t & -t).bit_length() - 1
                t &= t - 1
                seen |= 1 << w
                if s >> w & 1:
                    stack.append(w)
                else:
                    hits += 1
        return hits

    cost = [0] * (1 << n)
    back = [0] * (1 << n)
    for s in range(1, 1 << n):
        best, arg = None, -1
        t = s
        while t:
            v = (t & -t).bit_length() - 1
            t &= t - 1
            rest = s & ~(1 << v)
            c = max(cost[rest], elim_degree(rest, v))
            if best is None or c < best:
                best, arg = c, v
        cost[s] = best
        back[s] = arg
    if not with_ordering:
        return cost[full]
    order = []
    s = full
    while s:
        v = back[s]
        order.append(v)
        s &= ~(1 << v)
    return cost[full], tuple(reversed(order))


# ---------------------------------------------------------------------------
# Star chromatic number: proper coloring with no 2-colored path on 4 vertices.


def is_star_coloring(g: Graph, colors) -> bool:
    adj = adjacency(g)
    for u, v in g.edges:
        if colors[u] == colors[v]:
            return False
    for b, c in g.edges:
        for a in adj[b]:
            if a == c:
                continue
            for d in adj[c]:
                if d == b or d == a:
                    continue
                if colors[a] == colors[c] and colors[b] == colors[d]:
                    return False
    return True


def _star_conflict(adj, colors, v) -> bool:
    """Check violations introduced by coloring v (others may be uncolored)."""
    cv = colors[v]
    for u in adj[v]:
        if colors[u] == cv:
            return True
    # paths with v as an endpoint: v-a-b-c
    for a in adj[v]:
        if colors[a] < 0:
            continue
        for b in adj[a]:
            if b == v or colors[b] < 0 or colors[b] != cv:
                continue
            for c in adj[b]:
                if c in (v, a) or colors[c] < 0:
                    continue
                if colors[c] == colors[a]:
                    return True
    # paths with v in second position: a-v-b-c
    for a in adj[v]:
        if colors[a] < 0:
            continue
        for b in adj[v]:
            if b == a or colors[b] < 0 or colors[b] != colors[a]:
                continue
            for c in adj[b]:
                if c in (v, a) or colors[c] < 0:
                    continue
                if colors[c] == cv:
                    return True
    return False


def star_coloring_with(g: Graph, num_colors: int) -> Optional[tuple]:
    """First star coloring with at most num_colors colors (1-based), or None."""
    _check_cap(g, STAR_CAP, "star coloring")
    adj = adjacency(g)
    order = sorted(range(g.n), key=lambda v: (-len(adj[v]), v))
    colors = [-1] * g.n

    def extend(i, used):
        if i == g.n:
            return True
        v = order[i]
        for c in range(1, min(used + 1, num_colors) + 1):
            colors[v] = c
            if not _star_conflict(adj, colors, v):
                if extend(i + 1, max(used, c)):
                    return True
            colors[v] = -1
        return False

    return tuple(colors) if extend(0, 0) else None


def star_chromatic_number(g: Graph, with_coloring: bool = False):
    _check_cap(g, STAR_CAP, "star chromatic number")
    for c in range(1, g.n + 1):
        coloring = star_coloring_with(g, c)
        if coloring is not None:
            return (c, coloring) if with_coloring else c
    raise AssertionError("n colors always suffice")


# ---------------------------------------------------------------------------
# Pattern searches


@dataclass(frozen=True)
class PatternWitness:
    pattern_kind: str
    a_tuples: tuple          # tuple of vertex tuples
    b_tuples: tuple = ()     # half-graph: vertex tuples; independence: (subset, tuple)


def _relation(cg: ColoredGraph, phi: Formula, xvars, yvars):
    memo: dict = {}

    def rel(t1, t2) -> bool:
        key = (t1, t2)
        if key not in memo:
            assignment = dict(zip(xvars, t1))
            assignment.update(zip(yvars, t2))
            memo[key] = evaluate(cg, phi, assignment)
        return memo[key]

    return rel


def _split_vars(phi: Formula, xvars, yvars):
    xvars = tuple(xvars)
    yvars = tuple(yvars)
    fv = free_vars(phi)
    if fv - set(xvars) - set(yvars):
        raise ValueError(f"free variables {sorted(fv)} not covered by "
                         f"{xvars} + {yvars}")
    return xvars, yvars


def half_graph_pattern_max(cg: ColoredGraph, phi: Formula, cap: int,
                           xvars=("x",), yvars=("y",), distinct: bool = False):
    """Largest n <= cap with sequences a_1..a_n, b_1..b_n realizing
    phi(a_i, b_j) iff i <= j; returns (n, witness or None)."""
    xvars, yvars = _split_vars(phi, xvars, yvars)
    rel = _relation(cg, phi, xvars, yvars)
    n = cg.graph.n
    kx, ky = len(xvars), len(yvars)
    best = [0, None]

    def all_tuples(k):
        return itertools.product(range(n), repeat=k)

    def used(tup, acc):
        return distinct and any(v in acc for v in tup)

    def extend(avec, bvec, taken):
        depth = len(avec)
        if depth > best[0]:
            best[0] = depth
            best[1] = PatternWitness("half-graph", tuple(avec), tuple(bvec))
        if depth == cap:
            return
        for a in all_tuples(kx):
            if used(a, taken):
                continue
            if any(rel(a, bvec[j]) for j in range(depth)):
                continue  # phi(a_k, b_j) must fail for j < k
            for b in all_tuples(ky):
                if used(b, taken) or (distinct and set(a) & set(b)):
                    continue
                if not rel(a, b):
                    continue  # phi(a_k, b_k) must hold
                if all(rel(avec[i], b) for i in range(depth)):
                    grown = taken | set(a) | set(b) if distinct else taken
                    extend(avec + [a], bvec + [b], grown)

    extend([], [], frozenset())
    return best[0], best[1]


def verify_half_graph_witness(cg: ColoredGraph, phi: Formula, w: PatternWitness,
                              xvars=("x",), yvars=("y",)) -> bool:
    rel = _relation(cg, phi, xvars, yvars)
    n = len(w.a_tuples)
    return all(rel(w.a_tuples[i], w.b_tuples[j]) == (i <= j)
               for i in range(n) for j in range(n))


def order_property(cg: ColoredGraph, phi: Formula, n: int, budget: int,
                   xvars=("x",), yvars=("y",), distinct: bool = False,
                   check_diagonal: bool = False) -> Optional[PatternWitness]:
    """Search for tuples a_1..a_n with phi(a_i, a_j) iff i < j (i != j).

    Both tuple slots range over the same vertex tuples; check_diagonal
    additionally requires phi(a_i, a_i) to fail.
    """
    xvars, yvars = _split_vars(phi, xvars, yvars)
    if len(xvars) != len(yvars):
        raise ValueError("order property needs equal tuple arities")
    k = len(xvars)
    nv = cg.graph.n
    if nv ** (k * n) > budget:
        raise BudgetExceededError(nv ** (k * n), budget)
    rel = _relation(cg, phi, xvars, yvars)

    def extend(chosen):
        if len(chosen) == n:
            return tuple(chosen)
        for cand in itertools.product(range(nv), repeat=k):
            if distinct and any(v in t for t in chosen for v in cand):
                continue
            if check_diagonal and rel(cand, cand):
                continue
            if all(rel(prev, cand) and not rel(cand, prev) for prev in chosen):
                result = extend(chosen + [cand])
                if result is not None:
                    return result
        return None

    found = extend([])
    return PatternWitness("order", found) if found is not None else None


def verify_order_witness(cg: ColoredGraph, phi: Formula, w: PatternWitness,
                         xvars=("x",), yvars=("y",),
                         check_diagonal: bool = False) -> bool:
    rel = _relation(cg, phi, xvars, yvars)
    tuples = w.a_tuples
    for i, ti in enumerate(tuples):
        for j, tj in enumerate(tuples):
            if i == j and not check_diagonal:
                continue
            if rel(ti, tj) != (i < j):
                return False
    return True


def independence_property(cg: ColoredGraph, phi: Formula, n: int, budget: int,
                          xvars=("x",), yvars=("y",),
                          distinct: bool = False) -> Optional[PatternWitness]:
    """Search for a_1..a_n and b_J per subset J with phi(a_i, b_J) iff i in J."""
    xvars, yvars = _split_vars(phi, xvars, yvars)
    kx, ky = len(xvars), len(yvars)
    nv = cg.graph.n
    space = nv ** (kx * n) * (2 ** n) * nv ** ky
    if space > budget:
        raise BudgetExceededError(space, budget)
    rel = _relation(cg, phi, xvars, yvars)

    def find_b(avec, pattern):
        """First b with phi(a_i, b) iff pattern[i], for all chosen a_i."""
        for b in itertools.product(range(nv), repeat=ky):
            if distinct and any(v in t for t in avec for v in b):
                continue
            if all(rel(a, b) == want for a, want in zip(avec, pattern)):
                return b
        return None

    def extend(avec):
        m = len(avec)
        if m == n:
            bs = []
            for bits in range(2 ** n):
                pattern = [bits >> i & 1 == 1 for i in range(n)]
                b = find_b(avec, pattern)
                if b is None:
                    return None
                bs.append((frozenset(i for i in range(n) if pattern[i]), b))
            return PatternWitness("independence", tuple(avec), tuple(bs))
        for cand in itertools.product(range(nv), repeat=kx):
            if distinct and any(v in t for t in avec for v in cand):
                continue
            prefix = avec + [cand]
            # necessary condition: every trace on the prefix is realizable
            if all(find_b(prefix, [bits >> i & 1 == 1 for i in range(m + 1)])
                   is not None for bits in range(2 ** (m + 1))):
                result = extend(prefix)
                if result is not None:
                    return result
        return None

    return extend([])


def verify_independence_witness(cg: ColoredGraph, phi: Formula, w: PatternWitness,
                                xvars=("x",), yvars=("y",)) -> bool:
    rel = _relation(cg, phi, xvars, yvars)
    for subset, b in w.b_tuples:
        for i, a in enumerate(w.a_tuples):
            if rel(a, b) != (i in subset):
                return False
    return True
