"""Independent brute-force references used to derive expected values."""

import itertools

import networkx as nx


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def brute_k_paths(g, k):
    """Every simple path on k vertices, found with networkx, smaller endpoint first."""
    h = to_nx(g)
    found = set()
    if k == 1:
        return {(v,) for v in h}
    for s, t in itertools.combinations(range(g.n), 2):
        for p in nx.all_simple_paths(h, s, t, cutoff=k - 1):
            if len(p) == k:
                found.add(tuple(p))
    return found


def brute_is_cover(paths, cover):
    return all(any(v in cover for v in p) for p in paths)


def brute_covers(g, k, size):
    paths = brute_k_paths(g, k)
    return [frozenset(c) for c in itertools.combinations(range(g.n), size)
            if brute_is_cover(paths, set(c))]


def brute_min_cover(g, k):
    paths = brute_k_paths(g, k)
    for s in range(g.n + 1):
        for c in itertools.combinations(range(g.n), s):
            if brute_is_cover(paths, set(c)):
                return s
    return g.n


def brute_states_bfs(g, k, start, goal, move_ok):
    """BFS over equal-size covers; move_ok(x, y) says whether x -> y is a legal move."""
    paths = brute_k_paths(g, k)
    start, goal = frozenset(start), frozenset(goal)
    frontier, seen, d = [start], {start}, 0
    while frontier:
        if goal in seen:
            return d
        nxt = []
        for st in frontier:
            for x in st:
                for y in range(g.n):
                    if y in st or not move_ok(x, y):
                        continue
                    new = (st - {x}) | {y}
                    if new not in seen and brute_is_cover(paths, new):
                        seen.add(new)
                        nxt.append(new)
        frontier, d = nxt, d + 1
    return d if goal in seen else None
