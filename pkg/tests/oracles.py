"""Independent brute-force oracles used to freeze expected test values.

These deliberately avoid the package's optimized search paths: distances via
Floyd-Warshall, widths via full enumeration over orderings, colorings via
exhaustive products.  Only usable on very small graphs.
"""

import itertools

INF = float("inf")


def fw_distances(g):
    n = g.n
    d = [[0 if i == j else INF for j in range(n)] for i in range(n)]
    for u, v in g.edges:
        d[u][v] = d[v][u] = 1
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if d[i][k] + d[k][j] < d[i][j]:
                    d[i][j] = d[i][k] + d[k][j]
    return d


def brute_bandwidth(g):
    if not g.edges:
        return 0
    best = g.n - 1
    for perm in itertools.permutations(range(g.n)):
        pos = {v: i for i, v in enumerate(perm)}
        width = max(abs(pos[u] - pos[v]) for u, v in g.edges)
        best = min(best, width)
    return best


def brute_pathwidth(g):
    n = g.n
    nbr = [set() for _ in range(n)]
    for u, v in g.edges:
        nbr[u].add(v)
        nbr[v].add(u)
    best = n
    for perm in itertools.permutations(range(n)):
        worst = 0
        placed = set()
        for v in perm:
            placed.add(v)
            boundary = sum(1 for u in placed if nbr[u] - placed)
            worst = max(worst, boundary)
        best = min(best, worst)
    return best


def brute_treewidth(g):
    n = g.n
    best = n - 1 if n > 1 else 0
    base = {frozenset(e) for e in g.edges}
    for perm in itertools.permutations(range(n)):
        edges = set(base)
        width = 0
        alive = set(range(n))
        for v in perm:
            nbrs = [u for u in alive if u != v and frozenset((u, v)) in edges]
            width = max(width, len(nbrs))
            for a, b in itertools.combinations(nbrs, 2):
                edges.add(frozenset((a, b)))
            alive.discard(v)
        best = min(best, width)
    return best


def is_star_coloring_naive(g, colors):
    for u, v in g.edges:
        if colors[u] == colors[v]:
            return False
    edgeset = {frozenset(e) for e in g.edges}
    for quad in itertools.permutations(range(g.n), 4):
        a, b, c, d = quad
        if (frozenset((a, b)) in edgeset and frozenset((b, c)) in edgeset
                and frozenset((c, d)) in edgeset):
            if len({colors[a], colors[b], colors[c], colors[d]}) == 2:
                return False
    return True


def brute_star_chromatic(g):
    for count in range(1, g.n + 1):
        for colors in itertools.product(range(count), repeat=g.n):
            if is_star_coloring_naive(g, colors):
                return count
    raise AssertionError


def brute_chromatic(g):
    for count in range(1, g.n + 1):
        for colors in itertools.product(range(count), repeat=g.n):
            if all(colors[u] != colors[v] for u, v in g.edges):
                return count
    raise AssertionError


def perm_isomorphic(g, h):
    if g.n != h.n or len(g.edges) != len(h.edges):
        return False
    target = {frozenset(e) for e in h.edges}
    for perm in itertools.permutations(range(g.n)):
        if {frozenset((perm[u], perm[v])) for u, v in g.edges} == target:
            return True
    return False
