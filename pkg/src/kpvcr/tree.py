"""Trees: partition into minimal k-path-bearing subtrees, TJ and TAR solvers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .graph import Graph, GraphError, is_kpvc
from .reconfig import (ReconfSequence, Reason, SolveOutcome, Step, concat, require_covers,
                       reverse, solve_tar)


@dataclass(frozen=True)
class TreePartition:
    root: int
    parts: tuple[frozenset, ...]
    anchors: tuple[int, ...]  # anchors[i] covers every k-path inside parts[i]
    part_of: tuple[int, ...]  # part index per vertex, -1 when there are no parts

    @property
    def size(self) -> int:
        return len(self.parts)


def _rooted(t: Graph, r: int) -> tuple[list[int], list[int]]:
    # iterative post-order (children in id order) and parent array
    parent = [-1] * t.n
    post = []
    seen = bytearray(t.n)
    seen[r] = 1
    stack = [(r, iter(t.adjacency[r]))]
    while stack:
        v, it = stack[-1]
        for w in it:
            if not seen[w]:
                seen[w] = 1
                parent[w] = v
                stack.append((w, iter(t.adjacency[w])))
                break
        else:
            stack.pop()
            post.append(v)
    if len(post) != t.n or len(t.edges) != t.n - 1:
        raise GraphError("graph is not a tree")
    return post, parent


def partition_tree(t: Graph, k: int, r: int = 0) -> TreePartition:
    """Peel off subtrees T_v that contain a k-path while T_v - v does not.

    One bottom-up pass: `height[v]` is the vertex count of the longest
    downward path from v in what remains of its subtree. A vertex whose two
    tallest child branches plus itself reach k closes a part. Vertices left
    over near the root join the last part found.
    """
    key = ("partition", k, r)
    hit = t.cache.get(key)
    if hit is None:
        hit = t.cache[key] = _partition(t, k, r)
    return hit


def _partition(t: Graph, k: int, r: int) -> TreePartition:
    if k < 2:
        raise ValueError("k must be at least 2")
    if not 0 <= r < t.n:
        raise GraphError(f"root {r} out of range")
    post, parent = _rooted(t, r)
    height = [0] * t.n
    cut = bytearray(t.n)
    anchors = []
    for v in post:
        h1 = h2 = 0
        for w in t.adjacency[v]:
            if w == parent[v]:
                continue
            h = height[w]
            if h > h1:
                h1, h2 = h, h1
            elif h > h2:
                h2 = h
        if 1 + h1 + h2 >= k:
            cut[v] = 1
            anchors.append(v)
            height[v] = 0
        else:
            height[v] = 1 + h1
    if not anchors:
        return TreePartition(r, (), (), tuple([-1] * t.n))
    index = {a: i for i, a in enumerate(anchors)}
    part_of = [0] * t.n
    last = len(anchors) - 1
    for v in reversed(post):  # parents before children
        if cut[v]:
            part_of[v] = index[v]
        elif parent[v] < 0:
            part_of[v] = last
        else:
            part_of[v] = part_of[parent[v]]
    members = [[] for _ in anchors]
    for v in range(t.n):
        members[part_of[v]].append(v)
    return TreePartition(r, tuple(frozenset(m) for m in members), tuple(anchors), tuple(part_of))


def min_cover_tree(t: Graph, k: int, r: int = 0) -> frozenset:
    return frozenset(partition_tree(t, k, r).anchors)


def _canonical_target(part: TreePartition, I: frozenset) -> frozenset:
    target = set(part.anchors)
    for v in sorted(I):
        if len(target) >= len(I):
            break
        target.add(v)
    return frozenset(target)


def _towards(part: TreePartition, X: frozenset, target: frozenset) -> ReconfSequence:
    steps = []
    cur = set(X)
    donors: dict[int, int] = {}
    for v in sorted(X):
        donors.setdefault(part.part_of[v], v)
    for i, a in enumerate(part.anchors):
        if a not in cur:
            x = donors[i]
            steps.append(Step.jump(x, a))
            cur.discard(x)
            cur.add(a)
    out = sorted(cur - target)
    into = sorted(target - cur)
    steps.extend(Step.jump(x, y) for x, y in zip(out, into))
    return ReconfSequence(X, steps)


def solve_tree_tj(t: Graph, k: int, I: Iterable[int], J: Iterable[int], root: int = 0,
                  check: bool = True) -> SolveOutcome:
    I, J = frozenset(I), frozenset(J)
    if check:
        require_covers(t, k, I=I, J=J)
    if len(I) != len(J):
        return SolveOutcome.no(Reason.SIZE_MISMATCH)
    if I == J:
        return SolveOutcome.yes(ReconfSequence(I), trivial=True)
    part = partition_tree(t, k, root)
    target = _canonical_target(part, I)
    return SolveOutcome.yes(concat(_towards(part, I, target), reverse(_towards(part, J, target))))


def removable_token(g: Graph, k: int, X: frozenset) -> Optional[int]:
    """Smallest token whose removal leaves a k-PVC."""
    for x in sorted(X):
        if is_kpvc(g, k, X - {x}):
            return x
    return None


def solve_tree_tar(t: Graph, k: int, I: Iterable[int], J: Iterable[int], u: int,
                   root: int = 0, check: bool = True, witness: bool = True) -> SolveOutcome:
    I, J = frozenset(I), frozenset(J)
    if check:
        require_covers(t, k, I=I, J=J)
    psi = partition_tree(t, k, root).size
    return solve_tar(
        t, k, I, J, u, psi,
        tj_solver=lambda a, b: solve_tree_tj(t, k, a, b, root, check=False),
        removable=lambda X: removable_token(t, k, X),
        witness=witness,
    )
