"""Finite simple graphs, colored expansions, generators, and the text format.

Vertices are dense integer indices 0..n-1.  Edges are stored once as ordered
pairs (u, v) with u < v, so two graphs are labeled-equal iff the dataclasses
compare equal.  Unary predicates ("colors") are named vertex subsets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from .errors import SizeLimitError, vertex_cap

ISO_CAP = 10

Edge = "tuple[int, int]"


def edge(u: int, v: int) -> tuple[int, int]:
    if u == v:
        raise ValueError(f"loop edge at vertex {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative vertex count")
        for e in self.edges:
            u, v = e
            if not (0 <= u < v < self.n):
                raise ValueError(f"bad edge {e} for n={self.n}")

    @classmethod
    def from_edges(cls, n: int, pairs: Iterable) -> "Graph":
        return cls(n, frozenset(edge(u, v) for u, v in pairs))

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return False
        return edge(u, v) in self.edges

    def degree(self, v: int) -> int:
        return len(adjacency(self)[v])

    def __repr__(self):
        return f"Graph(n={self.n}, edges={sorted(self.edges)})"


@dataclass(frozen=True)
class ColoredGraph:
    """A graph together with named unary predicates (vertex subsets)."""

    graph: Graph
    predicates: dict = field(default_factory=dict)

    def __post_init__(self):
        norm = {}
        for name, members in self.predicates.items():
            members = frozenset(members)
            for v in members:
                if not 0 <= v < self.graph.n:
                    raise ValueError(f"predicate {name} contains invalid vertex {v}")
            norm[name] = members
        object.__setattr__(self, "predicates", norm)

    @classmethod
    def bare(cls, g: Graph) -> "ColoredGraph":
        return cls(g, {})

    def pred(self, name: str) -> frozenset:
        """Predicate members; absent names are the empty set."""
        return self.predicates.get(name, frozenset())

    def with_predicate(self, name: str, members: Iterable) -> "ColoredGraph":
        if name in self.predicates:
            raise ValueError(f"predicate {name} already present")
        preds = dict(self.predicates)
        preds[name] = frozenset(members)
        return ColoredGraph(self.graph, preds)

    def __repr__(self):
        preds = {k: sorted(v) for k, v in sorted(self.predicates.items())}
        return f"ColoredGraph({self.graph!r}, {preds})"


@dataclass(frozen=True)
class Subgraph:
    """A labeled subgraph: vertex and edge subsets of some host graph."""

    vertices: frozenset
    edges: frozenset

    def __post_init__(self):
        vs = frozenset(self.vertices)
        es = frozenset(edge(u, v) for u, v in self.edges)
        for u, v in es:
            if u not in vs or v not in vs:
                raise ValueError(f"edge ({u},{v}) leaves the vertex subset")
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", es)

    def is_subgraph_of(self, g: Graph) -> bool:
        return (all(0 <= v < g.n for v in self.vertices)
                and all(e in g.edges for e in self.edges))

    def to_graph(self) -> tuple[Graph, tuple]:
        """Relabel to dense indices; returns (graph, origin) with origin[i] = host index."""
        origin = tuple(sorted(self.vertices))
        pos = {v: i for i, v in enumerate(origin)}
        return Graph.from_edges(len(origin), ((pos[u], pos[v]) for u, v in self.edges)), origin

    @classmethod
    def full(cls, g: Graph) -> "Subgraph":
        return cls(frozenset(range(g.n)), g.edges)


@lru_cache(maxsize=None)
def adjacency(g: Graph) -> tuple:
    nbrs = [[] for _ in range(g.n)]
    for u, v in g.edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    return tuple(tuple(sorted(a)) for a in nbrs)


@lru_cache(maxsize=None)
def distance_matrix(g: Graph) -> tuple:
    """All-pairs BFS distances; -1 marks unreachable pairs."""
    adj = adjacency(g)
    rows = []
    for s in range(g.n):
        dist = [-1] * g.n
        dist[s] = 0
        frontier = [s]
        d = 0
        while frontier:
            d += 1
            nxt = []
            for u in frontier:
                for w in adj[u]:
                    if dist[w] < 0:
                        dist[w] = d
                        nxt.append(w)
            frontier = nxt
        rows.append(tuple(dist))
    return tuple(rows)


def distance(g: Graph, u: int, v: int) -> int:
    return distance_matrix(g)[u][v]


def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    return all(d >= 0 for d in distance_matrix(g)[0])


def diameter(g: Graph) -> int:
    """Largest finite distance (per connected component)."""
    return max((d for row in distance_matrix(g) for d in row), default=0)


# ---------------------------------------------------------------------------
# Generators


def path(n: int) -> Graph:
    if n < 1:
        raise ValueError("path needs n >= 1")
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete needs n >= 1")
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def edgeless(n: int) -> Graph:
    if n < 1:
        raise ValueError("edgeless needs n >= 1")
    return Graph(n, frozenset())


def star(n: int) -> Graph:
    """K_{1,n}: center 0 with n leaves."""
    if n < 1:
        raise ValueError("star needs n >= 1 leaves")
    return Graph.from_edges(n + 1, ((0, i) for i in range(1, n + 1)))


def grid(w: int, h: int) -> Graph:
    if w < 1 or h < 1:
        raise ValueError("grid needs w, h >= 1")

    def idx(x, y):
        return y * w + x

    pairs = []
    for y in range(h):
        for x in range(w):
            if x + 1 < w:
                pairs.append((idx(x, y), idx(x + 1, y)))
            if y + 1 < h:
                pairs.append((idx(x, y), idx(x, y + 1)))
    return Graph.from_edges(w * h, pairs)


def complete_binary_tree(depth: int) -> Graph:
    """Rooted binary tree with 2^(depth+1)-1 vertices (depth >= 1)."""
    if depth < 1:
        raise ValueError("complete_binary_tree needs depth >= 1")
    n = 2 ** (depth + 1) - 1
    return Graph.from_edges(n, ((v, (v - 1) // 2) for v in range(1, n)))


def half_graph(n: int) -> Graph:
    """H_n on a_1..a_n (indices 0..n-1) and b_1..b_n (indices n..2n-1), a_i ~ b_j iff i <= j."""
    if n < 1:
        raise ValueError("half_graph needs n >= 1")
    pairs = [(i, n + j) for i in range(n) for j in range(n) if i <= j]
    return Graph.from_edges(2 * n, pairs)


def powerset_graph(n: int) -> Graph:
    """Bipartite graph on n left vertices and 2^n subset vertices; i ~ J iff i in J."""
    if n < 1:
        raise ValueError("powerset_graph needs n >= 1")
    pairs = []
    for j in range(2 ** n):
        for i in range(n):
            if j >> i & 1:
                pairs.append((i, n + j))
    return Graph.from_edges(n + 2 ** n, pairs)


# ---------------------------------------------------------------------------
# Operations


def disjoint_union(g: Graph, h: Graph) -> Graph:
    shifted = ((u + g.n, v + g.n) for u, v in h.edges)
    return Graph(g.n + h.n, frozenset(g.edges) | frozenset(shifted))


def complete_join(g: Graph, h: Graph) -> Graph:
    base = disjoint_union(g, h)
    cross = ((u, g.n + v) for u in range(g.n) for v in range(h.n))
    return Graph(base.n, base.edges | frozenset(cross))


def lexicographic_product(g: Graph, h: Graph) -> Graph:
    """Vertex (u, i) maps to index u * h.n + i."""
    def idx(u, i):
        return u * h.n + i

    pairs = []
    for u, up in g.edges:
        for i in range(h.n):
            for j in range(h.n):
                pairs.append((idx(u, i), idx(up, j)))
    for u in range(g.n):
        for i, j in h.edges:
            pairs.append((idx(u, i), idx(u, j)))
    return Graph.from_edges(g.n * h.n, pairs)


def power(g: Graph, k: int) -> Graph:
    if k < 1:
        raise ValueError("power needs k >= 1")
    dm = distance_matrix(g)
    pairs = [(u, v) for u in range(g.n) for v in range(u + 1, g.n)
             if 0 < dm[u][v] <= k]
    return Graph.from_edges(g.n, pairs)


def copy_operation(cg: ColoredGraph, k: int) -> ColoredGraph:
    """k disjoint copies with corresponding vertices made mutually adjacent.

    Copy i (1-based) occupies indices (i-1)*n .. i*n-1 and is marked by a
    fresh predicate copy_i so that interpretations can address single copies.
    """
    if k < 1:
        raise ValueError("copy_operation needs k >= 1")
    g = cg.graph
    pairs = []
    for i in range(k):
        off = i * g.n
        pairs.extend((u + off, v + off) for u, v in g.edges)
    for v in range(g.n):
        pairs.extend(itertools.combinations([i * g.n + v for i in range(k)], 2))
    preds = {}
    for name, members in cg.predicates.items():
        preds[name] = frozenset(i * g.n + v for i in range(k) for v in members)
    for i in range(1, k + 1):
        name = f"copy_{i}"
        if name in preds:
            raise ValueError(f"predicate {name} collides with copy marker")
        preds[name] = frozenset(range((i - 1) * g.n, i * g.n))
    return ColoredGraph(Graph.from_edges(k * g.n, pairs), preds)


@dataclass(frozen=True)
class Ball:
    graph: Graph
    origin: tuple  # origin[i] = index in the host graph


def ball(g: Graph, centers: Iterable, r: int) -> Ball:
    """Induced subgraph on all vertices within distance r of some center."""
    centers = sorted(set(centers))
    if not centers:
        raise ValueError("ball needs a nonempty center set")
    dm = distance_matrix(g)
    keep = sorted(v for v in range(g.n)
                  if any(0 <= dm[c][v] <= r for c in centers))
    pos = {v: i for i, v in enumerate(keep)}
    sub = Graph.from_edges(len(keep), ((pos[u], pos[v]) for u, v in g.edges
                                       if u in pos and v in pos))
    return Ball(sub, tuple(keep))


def colored_ball(cg: ColoredGraph, centers: Iterable, r: int) -> tuple[ColoredGraph, tuple]:
    b = ball(cg.graph, centers, r)
    pos = {v: i for i, v in enumerate(b.origin)}
    preds = {name: frozenset(pos[v] for v in members if v in pos)
             for name, members in cg.predicates.items()}
    return ColoredGraph(b.graph, preds), b.origin


def loc_r(gs: Iterable, r: int) -> list:
    """All radius-r balls of the given graphs, deduplicated up to isomorphism.

    Balls larger than the isomorphism cap are deduplicated by labeled
    equality only.
    """
    reps: list[Graph] = []
    for g in gs:
        for v in range(g.n):
            b = ball(g, [v], r).graph
            if not any(_same_ball(b, seen) for seen in reps):
                reps.append(b)
    reps.sort(key=graph_sort_key)
    return reps


def _same_ball(a: Graph, b: Graph) -> bool:
    if a.n <= ISO_CAP and b.n <= ISO_CAP:
        return are_isomorphic(a, b)
    return a == b


def graph_sort_key(g: Graph):
    degs = tuple(sorted(len(a) for a in adjacency(g)))
    return (g.n, len(g.edges), degs, tuple(sorted(g.edges)))


def enumerate_subgraphs(g: Graph, limit: int | None = None) -> Iterator[Subgraph]:
    """Stream all labeled subgraphs (vertex subset + edge subset), smallest first.

    Deterministic: vertex subsets by ascending bitmask, then edge subsets of
    the induced edges by ascending bitmask.
    """
    count = 0
    all_edges = sorted(g.edges)
    for vmask in range(2 ** g.n):
        verts = frozenset(v for v in range(g.n) if vmask >> v & 1)
        avail = [e for e in all_edges if e[0] in verts and e[1] in verts]
        for emask in range(2 ** len(avail)):
            if limit is not None and count >= limit:
                return
            yield Subgraph(verts, frozenset(e for i, e in enumerate(avail)
                                            if emask >> i & 1))
            count += 1


# ---------------------------------------------------------------------------
# Isomorphism (exact, desk scale)


def _refined_colors(g: Graph) -> tuple:
    adj = adjacency(g)
    colors = [len(adj[v]) for v in range(g.n)]
    for _ in range(g.n):
        sig = [(colors[v], tuple(sorted(colors[w] for w in adj[v])))
               for v in range(g.n)]
        relabel = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [relabel[s] for s in sig]
        if new == colors:
            break
        colors = new
    return tuple(colors)


def are_isomorphic(g: Graph, h: Graph) -> bool:
    """Exact isomorphism by backtracking; refuses graphs above the size cap."""
    cap = vertex_cap(ISO_CAP)
    if g.n > cap or h.n > cap:
        raise SizeLimitError("isomorphism check", max(g.n, h.n), cap)
    if g.n != h.n or len(g.edges) != len(h.edges):
        return False
    cg, ch = _refined_colors(g), _refined_colors(h)
    if sorted(cg) != sorted(ch):
        return False
    adj_g, adj_h = adjacency(g), adjacency(h)
    order = sorted(range(g.n), key=lambda v: (-len(adj_g[v]), v))
    mapping = [-1] * g.n
    used = [False] * h.n

    def extend(i):
        if i == g.n:
            return True
        u = order[i]
        for w in range(h.n):
            if used[w] or ch[w] != cg[u]:
                continue
            ok = True
            for x in adj_g[u]:
                m = mapping[x]
                if m >= 0 and m not in adj_h[w]:
                    ok = False
                    break
            if ok:
                for x in range(g.n):
                    m = mapping[x]
                    if m >= 0 and x not in adj_g[u] and m in adj_h[w]:
                        ok = False
                        break
            if ok:
                mapping[u] = w
                used[w] = True
                if extend(i + 1):
                    return True
                mapping[u] = -1
                used[w] = False
        return False

    return extend(0)


# ---------------------------------------------------------------------------
# Corpus helpers


def all_labeled_graphs(n: int) -> Iterator[Graph]:
    slots = list(itertools.combinations(range(n), 2))
    for mask in range(2 ** len(slots)):
        yield Graph(n, frozenset(e for i, e in enumerate(slots) if mask >> i & 1))


@lru_cache(maxsize=None)
def nonisomorphic_graphs(n: int) -> tuple:
    """All isomorphism types on exactly n vertices, sorted deterministically."""
    buckets: dict = {}
    for g in all_labeled_graphs(n):
        key = graph_sort_key(g)[:3]
        reps = buckets.setdefault(key, [])
        if not any(are_isomorphic(g, r) for r in reps):
            reps.append(g)
    out = [g for reps in buckets.values() for g in reps]
    out.sort(key=graph_sort_key)
    return tuple(out)


def graphs_up_to(n: int, connected: bool = False) -> list:
    out = []
    for k in range(1, n + 1):
        for g in nonisomorphic_graphs(k):
            if not connected or is_connected(g):
                out.append(g)
    return out


def random_graph(n: int, p: float, rng) -> Graph:
    pairs = [e for e in itertools.combinations(range(n), 2) if rng.random() < p]
    return Graph.from_edges(n, pairs)


# ---------------------------------------------------------------------------
# Text format: `n <count>`, `e <u> <v>`, `color <name> <v...>`, `#` comments


def graph_to_text(item) -> str:
    if isinstance(item, Graph):
        item = ColoredGraph.bare(item)
    lines = [f"n {item.graph.n}"]
    for u, v in sorted(item.graph.edges):
        lines.append(f"e {u} {v}")
    for name in sorted(item.predicates):
        members = " ".join(str(v) for v in sorted(item.predicates[name]))
        lines.append(f"color {name} {members}".rstrip())
    return "\n".join(lines) + "\n"


def graph_from_text(text: str) -> ColoredGraph:
    n = None
    pairs = []
    preds: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        kind = fields[0]
        if kind == "n":
            if n is not None:
                raise ValueError(f"line {lineno}: duplicate n record")
            n = int(fields[1])
        elif kind == "e":
            pairs.append((int(fields[1]), int(fields[2])))
        elif kind == "color":
            name = fields[1]
            if name in preds:
                raise ValueError(f"line {lineno}: duplicate color {name}")
            preds[name] = frozenset(int(v) for v in fields[2:])
        else:
            raise ValueError(f"line {lineno}: unknown record {kind!r}")
    if n is None:
        raise ValueError("missing n record")
    return ColoredGraph(Graph.from_edges(n, pairs), preds)
