"""Brute-force reconfiguration graphs for small instances.

States are bitmasks over vertex ids. The cover test here runs against the
explicit list of k-paths, independently of the DFS check in `graph`.
"""

from __future__ import annotations

import os
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Iterator, Optional

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path

from .graph import Graph, enumerate_k_paths
from .reconfig import ReconfSequence, Rule, RuleKind, Step

DEFAULT_BUDGET = 2_000_000
BUDGET_ENV = "KPVCR_STATE_BUDGET"


class BudgetExceeded(RuntimeError):
    pass


def state_budget(budget: Optional[int] = None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get(BUDGET_ENV)
    return int(env) if env else DEFAULT_BUDGET


def to_mask(vs: Iterable[int]) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def from_mask(m: int) -> frozenset:
    out = []
    v = 0
    while m:
        if m & 1:
            out.append(v)
        m >>= 1
        v += 1
    return frozenset(out)


def _subsets(n: int, s: int) -> Iterator[int]:
    # all s-subsets of range(n) as masks, in colex order (Gosper's hack)
    if s == 0:
        yield 0
        return
    m = (1 << s) - 1
    limit = 1 << n
    while m < limit:
        yield m
        low = m & -m
        ripple = m + low
        m = (((ripple ^ m) >> 2) // low) | ripple


def _path_masks(g: Graph, k: int) -> list[int]:
    return [to_mask(p) for p in enumerate_k_paths(g, k)]


def _cover_masks(g: Graph, k: int, lo: int, hi: int, budget: Optional[int]) -> list[int]:
    lo, hi = max(lo, 0), min(hi, g.n)
    need = sum(comb(g.n, s) for s in range(lo, hi + 1))
    cap = state_budget(budget)
    if need > cap:
        raise BudgetExceeded(f"{need} candidate subsets exceed the state budget of {cap}")
    paths = _path_masks(g, k)
    out = []
    for s in range(lo, hi + 1):
        for m in _subsets(g.n, s):
            for p in paths:
                if not p & m:
                    break
            else:
                out.append(m)
    return out


def enumerate_covers(g: Graph, k: int, size_min: int, size_max: int,
                     budget: Optional[int] = None) -> list[frozenset]:
    """All k-PVCs with size in [size_min, size_max], by size then colex order."""
    return [from_mask(m) for m in _cover_masks(g, k, size_min, size_max, budget)]


def oracle_min_cover_size(g: Graph, k: int, budget: Optional[int] = None) -> int:
    paths = _path_masks(g, k)
    cap = state_budget(budget)
    seen = 0
    for s in range(g.n + 1):
        seen += comb(g.n, s)
        if seen > cap:
            raise BudgetExceeded(f"more than {cap} candidate subsets examined")
        for m in _subsets(g.n, s):
            if all(p & m for p in paths):
                return s
    return g.n


def _neighbors(mask: int, n: int, adj, rule: Rule, index: dict) -> list[int]:
    out = []
    if rule.kind is RuleKind.TAR:
        for v in range(n):
            t = mask ^ (1 << v)
            j = index.get(t)
            if j is not None:
                out.append(j)
        return out
    for x in range(n):
        if not mask >> x & 1:
            continue
        base = mask ^ (1 << x)
        targets = adj[x] if rule.kind is RuleKind.TS else range(n)
        for y in targets:
            if base >> y & 1 or y == x:
                continue
            j = index.get(base | (1 << y))
            if j is not None:
                out.append(j)
    return out


def _neighbor_chunk(args):
    masks, n, adj, rule, index = args
    return [_neighbors(m, n, adj, rule, index) for m in masks]


@dataclass
class ReconfGraph:
    n: int
    rule: Rule
    masks: list[int]
    adjacency: list[list[int]]
    index: dict = field(repr=False, default_factory=dict)

    @property
    def states(self) -> list[frozenset]:
        return [from_mask(m) for m in self.masks]

    def __len__(self) -> int:
        return len(self.masks)

    def state(self, i: int) -> frozenset:
        return from_mask(self.masks[i])

    def find(self, cover: Iterable[int]) -> Optional[int]:
        return self.index.get(to_mask(cover))

    def edges(self) -> Iterator[tuple[int, int]]:
        for a, nb in enumerate(self.adjacency):
            for b in nb:
                if a < b:
                    yield a, b

    def bfs(self, src: int) -> tuple[list[int], list[int]]:
        """Hop distances (-1 when unreachable) and BFS parents from `src`."""
        dist = [-1] * len(self.masks)
        parent = [-1] * len(self.masks)
        dist[src] = 0
        queue = deque([src])
        while queue:
            a = queue.popleft()
            for b in self.adjacency[a]:
                if dist[b] < 0:
                    dist[b] = dist[a] + 1
                    parent[b] = a
                    queue.append(b)
        return dist, parent

    def sparse(self) -> csr_matrix:
        rows, cols = [], []
        for a, nb in enumerate(self.adjacency):
            rows.extend([a] * len(nb))
            cols.extend(nb)
        size = len(self.masks)
        data = np.ones(len(rows), dtype=np.int8)
        return csr_matrix((data, (rows, cols)), shape=(size, size))

    def distance_matrix(self) -> np.ndarray:
        """All-pairs hop distances; unreachable pairs are -1."""
        d = shortest_path(self.sparse(), directed=False, unweighted=True)
        d[np.isinf(d)] = -1
        return d.astype(np.int64)

    def components(self) -> np.ndarray:
        _, labels = connected_components(self.sparse(), directed=False)
        return labels

    def export(self, fh) -> None:
        fh.write(f"# states {len(self.masks)} rule {self.rule}\n")
        for i, m in enumerate(self.masks):
            fh.write(f"{i}: {' '.join(map(str, sorted(from_mask(m))))}\n")
        fh.write("# edges\n")
        for a, b in self.edges():
            fh.write(f"{a} {b}\n")


def build_reconf_graph(g: Graph, k: int, rule: Rule, size: Optional[int] = None,
                       budget: Optional[int] = None, jobs: int = 1) -> ReconfGraph:
    """States are all covers of `size` tokens (TS/TJ) or at most `rule.cap` tokens (TAR)."""
    if rule.kind is RuleKind.TAR:
        lo, hi = 0, rule.cap
    else:
        if size is None:
            raise ValueError("TS/TJ reconfiguration graphs need a token count")
        lo = hi = size
    masks = _cover_masks(g, k, lo, hi, budget)
    index = {m: i for i, m in enumerate(masks)}
    if jobs > 1 and len(masks) > 1000:
        step = -(-len(masks) // jobs)
        chunks = [(masks[i:i + step], g.n, g.adjacency, rule, index)
                  for i in range(0, len(masks), step)]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            adjacency = [nb for part in ex.map(_neighbor_chunk, chunks) for nb in part]
    else:
        adjacency = [_neighbors(m, g.n, g.adjacency, rule, index) for m in masks]
    return ReconfGraph(g.n, rule, masks, adjacency, index)


@dataclass(frozen=True)
class OracleAnswer:
    reachable: bool
    shortest: Optional[int] = None


def _endpoint_graph(g, k, rule, I, J, budget, jobs):
    I, J = frozenset(I), frozenset(J)
    if rule.kind is not RuleKind.TAR and len(I) != len(J):
        return None
    if rule.kind is RuleKind.TAR and max(len(I), len(J)) > rule.cap:
        return None
    rg = build_reconf_graph(g, k, rule, size=len(I), budget=budget, jobs=jobs)
    a, b = rg.find(I), rg.find(J)
    if a is None or b is None:
        raise ValueError("endpoints must be k-path vertex covers")
    return rg, a, b


def oracle_reachable(g: Graph, k: int, rule: Rule, I, J, budget: Optional[int] = None,
                     jobs: int = 1) -> OracleAnswer:
    found = _endpoint_graph(g, k, rule, I, J, budget, jobs)
    if found is None:
        return OracleAnswer(False)
    rg, a, b = found
    d = rg.bfs(a)[0][b]
    return OracleAnswer(d >= 0, d if d >= 0 else None)


def _step_between(rule: Rule, before: int, after: int) -> Step:
    gone, new = before & ~after, after & ~before
    if rule.kind is RuleKind.TAR:
        return Step.add(new.bit_length() - 1) if new else Step.remove(gone.bit_length() - 1)
    x, y = gone.bit_length() - 1, new.bit_length() - 1
    return Step.slide(x, y) if rule.kind is RuleKind.TS else Step.jump(x, y)


def oracle_sequence(g: Graph, k: int, rule: Rule, I, J, budget: Optional[int] = None,
                    jobs: int = 1) -> Optional[ReconfSequence]:
    """A shortest reconfiguration sequence from I to J, or None."""
    found = _endpoint_graph(g, k, rule, I, J, budget, jobs)
    if found is None:
        return None
    rg, a, b = found
    dist, parent = rg.bfs(a)
    if dist[b] < 0:
        return None
    chain = [b]
    while chain[-1] != a:
        chain.append(parent[chain[-1]])
    chain.reverse()
    steps = [_step_between(rule, rg.masks[p], rg.masks[q]) for p, q in zip(chain, chain[1:])]
    return ReconfSequence(frozenset(I), steps)
