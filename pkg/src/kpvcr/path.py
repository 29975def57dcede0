"""Paths: shortest TJ and TS sequences, TAR decision."""

from __future__ import annotations

from typing import Iterable, Optional

from .graph import Graph, GraphError, ShapeKind, classify
from .reconfig import (ReconfSequence, Reason, SolveOutcome, Step, concat, require_covers,
                       reverse, solve_tar)


def path_order(p: Graph) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(vertex at each position, position of each vertex) along the path."""
    hit = p.cache.get("path_order")
    if hit is not None:
        return hit
    shape = classify(p)
    if shape.kind is not ShapeKind.PATH:
        raise GraphError("graph is not a path")
    order = shape.order
    pos = [0] * p.n
    for i, v in enumerate(order):
        pos[v] = i
    hit = p.cache["path_order"] = (order, tuple(pos))
    return hit


def _prepare(p, k, I, J, check):
    I, J = frozenset(I), frozenset(J)
    if check:
        require_covers(p, k, I=I, J=J)
    return I, J


def solve_path_tj(p: Graph, k: int, I: Iterable[int], J: Iterable[int],
                  check: bool = True) -> SolveOutcome:
    """Shortest TJ sequence: match the rightmost differing tokens pairwise."""
    I, J = _prepare(p, k, I, J, check)
    if len(I) != len(J):
        return SolveOutcome.no(Reason.SIZE_MISMATCH)
    if I == J:
        return SolveOutcome.yes(ReconfSequence(I), trivial=True)
    order, pos = path_order(p)
    only_i = sorted(pos[v] for v in I - J)
    only_j = sorted(pos[v] for v in J - I)
    from_i, from_j = [], []
    while only_i:
        a, b = only_i.pop(), only_j.pop()
        if a > b:
            from_i.append(Step.jump(order[a], order[b]))
        else:
            from_j.append(Step.jump(order[b], order[a]))
    return SolveOutcome.yes(concat(ReconfSequence(I, from_i),
                                   reverse(ReconfSequence(J, from_j))))


def _advance(tokens: list[int], rank: int, goal: int, order, steps: list) -> None:
    # slide tokens[rank] right to `goal`, shifting any contiguous run ahead of it
    n = len(order)
    while tokens[rank] < goal:
        last = rank
        while last + 1 < len(tokens) and tokens[last + 1] == tokens[last] + 1:
            last += 1
        if tokens[last] + 1 >= n:
            raise ValueError("push runs off the end of the path")
        for r in range(last, rank - 1, -1):
            steps.append(Step.slide(order[tokens[r]], order[tokens[r] + 1]))
            tokens[r] += 1


def push(p: Graph, k: int, cover: Iterable[int], i: int, j: int) -> ReconfSequence:
    """TS sequence taking the token on vertex i to vertex j further along the path.

    Tokens in the way are pushed one step ahead first. Refused unless
    i < j <= i + k and the gap left behind the token stays under k.
    """
    order, pos = path_order(p)
    cover = frozenset(cover)
    if i not in cover:
        raise ValueError(f"no token on vertex {i}")
    if not 0 <= j < p.n:
        raise ValueError(f"target {j} out of range")
    a, b = pos[i], pos[j]
    if not a < b <= a + k:
        raise ValueError("push needs the target strictly ahead and at most k steps away")
    tokens = sorted(pos[v] for v in cover)
    rank = tokens.index(a)
    behind = tokens[rank - 1] if rank > 0 else -1
    if b - behind > k:
        raise ValueError("push would leave k uncovered vertices behind the token")
    steps: list[Step] = []
    _advance(tokens, rank, b, order, steps)
    return ReconfSequence(cover, steps)


def solve_path_ts(p: Graph, k: int, I: Iterable[int], J: Iterable[int],
                  check: bool = True) -> SolveOutcome:
    """Shortest TS sequence: the p-th token of I meets the p-th token of J."""
    I, J = _prepare(p, k, I, J, check)
    if len(I) != len(J):
        return SolveOutcome.no(Reason.SIZE_MISMATCH)
    if I == J:
        return SolveOutcome.yes(ReconfSequence(I), trivial=True)
    order, pos = path_order(p)
    a_tok = sorted(pos[v] for v in I)
    b_tok = sorted(pos[v] for v in J)
    from_i: list[Step] = []
    from_j: list[Step] = []
    for rank in range(len(a_tok)):
        a, b = a_tok[rank], b_tok[rank]
        if a < b:
            _advance(a_tok, rank, b, order, from_i)
        elif b < a:
            _advance(b_tok, rank, a, order, from_j)
    return SolveOutcome.yes(concat(ReconfSequence(I, from_i),
                                   reverse(ReconfSequence(J, from_j))))


def ts_distance(p: Graph, I: Iterable[int], J: Iterable[int]) -> int:
    """Sum of distances between rank-matched tokens."""
    _, pos = path_order(p)
    a = sorted(pos[v] for v in I)
    b = sorted(pos[v] for v in J)
    return sum(abs(x - y) for x, y in zip(a, b))


def path_removable(p: Graph, k: int, X: Iterable[int]) -> Optional[int]:
    """First token (along the path) whose removal keeps a k-PVC, by gap arithmetic."""
    order, pos = path_order(p)
    toks = sorted(pos[v] for v in X)
    s, n = len(toks), p.n
    if s == 0:
        return None
    if s == 1:
        return order[toks[0]] if n <= k - 1 else None
    for t in range(s):
        if t == 0:
            ok = toks[1] <= k - 1
        elif t == s - 1:
            ok = n - 1 - toks[s - 2] <= k - 1
        else:
            ok = toks[t + 1] - toks[t - 1] <= k
        if ok:
            return order[toks[t]]
    return None


def solve_path_tar(p: Graph, k: int, I: Iterable[int], J: Iterable[int], u: int,
                   check: bool = True, witness: bool = True) -> SolveOutcome:
    I, J = _prepare(p, k, I, J, check)
    return solve_tar(
        p, k, I, J, u, p.n // k,
        tj_solver=lambda a, b: solve_path_tj(p, k, a, b, check=False),
        removable=lambda X: path_removable(p, k, X),
        witness=witness,
    )
