"""Simple undirected graphs, shape recognition and k-path covering checks."""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence


class GraphError(ValueError):
    """Raised when a graph cannot be constructed from the given data."""


@dataclass(frozen=True)
class Graph:
    n: int
    adjacency: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int], ...]
    # derived data (shape, vertex orders, tree partitions), filled lazily
    cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        a, b = (u, v) if len(self.adjacency[u]) <= len(self.adjacency[v]) else (v, u)
        return b in self.adjacency[a]

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={len(self.edges)})"


def build_from_edges(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    if n < 1:
        raise GraphError(f"graph needs at least one vertex, got n={n}")
    adj: list[set[int]] = [set() for _ in range(n)]
    canon = []
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u},{v}) references a vertex outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        if v in adj[u]:
            raise GraphError(f"duplicate edge ({min(u, v)},{max(u, v)})")
        adj[u].add(v)
        adj[v].add(u)
        canon.append((min(u, v), max(u, v)))
    return Graph(n, tuple(tuple(sorted(a)) for a in adj), tuple(sorted(canon)))


def build_path(n: int) -> Graph:
    if n < 1:
        raise GraphError(f"graph needs at least one vertex, got n={n}")
    adj = tuple((i - 1, i + 1) for i in range(n))
    adj = ((1,) if n > 1 else (),) + adj[1:-1] + (((n - 2,),) if n > 1 else ())
    g = Graph(n, adj, tuple((i, i + 1) for i in range(n - 1)))
    g.cache["shape"] = GraphShape(ShapeKind.PATH, tuple(range(n)))
    return g


def build_cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"a cycle needs at least 3 vertices, got n={n}")
    adj = ((1, n - 1),) + tuple((i - 1, i + 1) for i in range(1, n - 1)) + ((0, n - 2),)
    edges = tuple((i, i + 1) for i in range(n - 1)) + ((0, n - 1),)
    g = Graph(n, adj, tuple(sorted(edges)))
    g.cache["shape"] = GraphShape(ShapeKind.CYCLE, tuple(range(n)))
    return g


class ShapeKind(enum.Enum):
    PATH = "path"
    CYCLE = "cycle"
    TREE = "tree"
    GENERAL = "general"


@dataclass(frozen=True)
class GraphShape:
    kind: ShapeKind
    order: Optional[tuple[int, ...]] = None  # vertex sequence for paths and cycles


def _is_connected(g: Graph) -> bool:
    seen = bytearray(g.n)
    seen[0] = 1
    stack = [0]
    count = 1
    while stack:
        v = stack.pop()
        for w in g.adjacency[v]:
            if not seen[w]:
                seen[w] = 1
                count += 1
                stack.append(w)
    return count == g.n


def _walk(g: Graph, start: int) -> tuple[int, ...]:
    # follows a max-degree-2 component from `start`, preferring the smaller neighbor
    order = [start]
    prev, cur = -1, start
    while True:
        nxt = [w for w in g.adjacency[cur] if w != prev]
        if not nxt or (len(order) > 1 and nxt[0] == start):
            break
        prev, cur = cur, nxt[0]
        if cur == start:
            break
        order.append(cur)
    return tuple(order)


def classify(g: Graph) -> GraphShape:
    """Recognize paths, cycles and trees. Everything else is GENERAL.

    A single vertex is reported as the one-vertex path.
    """
    shape = g.cache.get("shape")
    if shape is None:
        shape = g.cache["shape"] = _classify(g)
    return shape


def _classify(g: Graph) -> GraphShape:
    n, m = g.n, len(g.edges)
    if not _is_connected(g):
        return GraphShape(ShapeKind.GENERAL)
    maxdeg = max(len(a) for a in g.adjacency)
    if m == n - 1:
        if maxdeg <= 2:
            start = min(v for v in range(n) if len(g.adjacency[v]) <= 1)
            return GraphShape(ShapeKind.PATH, _walk(g, start))
        return GraphShape(ShapeKind.TREE)
    if m == n and maxdeg == 2 and all(len(a) == 2 for a in g.adjacency):
        return GraphShape(ShapeKind.CYCLE, _walk(g, 0))
    return GraphShape(ShapeKind.GENERAL)


def dist(g: Graph, u: int, v: int) -> Optional[int]:
    """Hop distance between u and v, or None when they are disconnected."""
    for x in (u, v):
        if not 0 <= x < g.n:
            raise GraphError(f"vertex {x} out of range 0..{g.n - 1}")
    if u == v:
        return 0
    depth = {u: 0}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for w in g.adjacency[x]:
            if w not in depth:
                if w == v:
                    return depth[x] + 1
                depth[w] = depth[x] + 1
                queue.append(w)
    return None


def _canonical(path: list[int]) -> tuple[int, ...]:
    return tuple(path) if path[0] < path[-1] else tuple(reversed(path))


def enumerate_k_paths(g: Graph, k: int) -> list[tuple[int, ...]]:
    """All simple paths on exactly k vertices, each once, smaller endpoint first."""
    if k < 2:
        raise ValueError("k must be at least 2")
    found = []
    adj = g.adjacency

    def extend(path: list[int], on: set[int]) -> None:
        if len(path) == k:
            if path[0] < path[-1]:
                found.append(tuple(path))
            return
        for w in adj[path[-1]]:
            if w not in on:
                path.append(w)
                on.add(w)
                extend(path, on)
                on.discard(path.pop())

    for s in range(g.n):
        extend([s], {s})
    found.sort()
    return found


def find_uncovered_path(
    g: Graph, k: int, cover: Iterable[int], within: Optional[Iterable[int]] = None
) -> Optional[tuple[int, ...]]:
    """Return some k-path of g avoiding `cover`, or None if `cover` is a k-PVC.

    Depth-capped DFS with early exit. `within` restricts the search to a
    vertex subset (used for local re-checks after a single token moves).
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    blocked = cover if isinstance(cover, (set, frozenset)) else set(cover)
    adj = g.adjacency
    if within is None:
        starts: Iterable[int] = range(g.n)
        allowed = None
    else:
        allowed = set(within)
        starts = sorted(allowed)
    for s in starts:
        if s in blocked:
            continue
        path = [s]
        on = {s}
        stack = [iter(adj[s])]
        while stack:
            for w in stack[-1]:
                if w in blocked or w in on or (allowed is not None and w not in allowed):
                    continue
                path.append(w)
                if len(path) == k:
                    return _canonical(path)
                on.add(w)
                stack.append(iter(adj[w]))
                break
            else:
                stack.pop()
                on.discard(path.pop())
    return None


def is_kpvc(g: Graph, k: int, cover: Iterable[int]) -> bool:
    return find_uncovered_path(g, k, cover) is None


def psi_k_closed_form(shape: ShapeKind | GraphShape, n: int, k: int) -> int:
    """Minimum k-path vertex cover size of the path or cycle on n vertices."""
    kind = shape.kind if isinstance(shape, GraphShape) else shape
    if kind is ShapeKind.PATH:
        return n // k
    if kind is ShapeKind.CYCLE:
        # below k vertices a cycle has no k-path at all
        return 0 if n < k else -(-n // k)
    raise ValueError(f"no closed form for {kind.value} graphs")
