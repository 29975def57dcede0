"""Cycles: movable tokens, rotation, cutting into a path, TS/TJ and TAR solvers."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Optional, Union

from .graph import Graph, GraphError, ShapeKind, build_cycle, build_path, classify
from .instance import Instance
from .path import solve_path_tj, solve_path_ts
from .reconfig import (ReconfSequence, Reason, Rule, RuleKind, SolveOutcome, Step, concat,
                       require_covers, solve_tar)


class Direction(enum.IntEnum):
    CW = 1  # increasing cycle position
    CCW = -1


def cycle_order(c: Graph) -> tuple[tuple[int, ...], tuple[int, ...]]:
    hit = c.cache.get("cycle_order")
    if hit is not None:
        return hit
    shape = classify(c)
    if shape.kind is not ShapeKind.CYCLE:
        raise GraphError("graph is not a cycle")
    order = shape.order
    pos = [0] * c.n
    for i, v in enumerate(order):
        pos[v] = i
    hit = c.cache["cycle_order"] = (order, tuple(pos))
    return hit


def frozen_size(n: int, k: int, size: int) -> bool:
    """True when no token of a size-`size` cover of C_n can move at all."""
    return n > k and n % k == 0 and size == n // k


def _gap_ok(gap: int, n: int, k: int) -> bool:
    # a run of `gap` empty vertices is harmless below k, or when C_n has no k-path
    return gap <= k - 1 or n < k


def _movable_at(toks: list[int], n: int, k: int, t: int, d: int) -> bool:
    s = len(toks)
    if s == 0 or s == n:
        return False
    if s == 1:
        return True
    after = (toks[(t + 1) % s] - toks[t] - 1) % n
    before = (toks[t] - toks[t - 1] - 1) % n
    ahead, behind = (after, before) if d == 1 else (before, after)
    return ahead >= 1 and _gap_ok(behind + 1, n, k)


def _movable(toks: list[int], n: int, k: int) -> Optional[tuple[int, Direction]]:
    for t in range(len(toks)):
        for d in Direction:
            if _movable_at(toks, n, k, t, d):
                return t, d
    return None


def find_movable_token(c: Graph, k: int, cover: Iterable[int]) -> Optional[tuple[int, Direction]]:
    """A token and a direction whose one-step slide keeps a k-PVC, or None."""
    order, pos = cycle_order(c)
    toks = sorted(pos[v] for v in cover)
    found = _movable(toks, c.n, k)
    if found is None:
        return None
    return order[toks[found[0]]], found[1]


def _rotation(toks: list[int], n: int, start: int, d: int) -> list[tuple[int, int]]:
    """Slides (by position) moving every token one step in direction d.

    The start token goes first, then each later run of adjacent tokens
    front to back, and finally the tokens queued directly behind the start.
    """
    s = len(toks)
    behind = []
    t = start
    while len(behind) < s - 1:
        prev = (t - d) % s
        if (toks[t] - toks[prev]) * d % n != 1:
            break
        behind.append(prev)
        t = prev
    skip = set(behind)
    runs: list[list[int]] = []
    for i in range(1, s):
        t = (start + d * i) % s
        if t in skip:
            continue
        if runs and (toks[t] - toks[runs[-1][-1]]) * d % n == 1:
            runs[-1].append(t)
        else:
            runs.append([t])
    ordered = [start] + [t for r in runs for t in reversed(r)] + behind
    return [(toks[t], (toks[t] + d) % n) for t in ordered]


def rotate(c: Graph, k: int, cover: Iterable[int], start: int,
           d: Direction) -> ReconfSequence:
    """TS sequence shifting every token one step in direction d."""
    order, pos = cycle_order(c)
    cover = frozenset(cover)
    if start not in cover:
        raise ValueError(f"no token on vertex {start}")
    toks = sorted(pos[v] for v in cover)
    t = toks.index(pos[start])
    if not _movable_at(toks, c.n, k, t, int(d)):
        raise ValueError(f"token on {start} cannot move {Direction(d).name}")
    moves = _rotation(toks, c.n, t, int(d))
    return ReconfSequence(cover, [Step.slide(order[a], order[b]) for a, b in moves])


@dataclass(frozen=True)
class CutInstance:
    path: Graph
    I: frozenset
    J: frozenset
    shared: int
    to_cycle: tuple[int, ...]  # path vertex -> cycle vertex

    def lift(self, seq: ReconfSequence) -> ReconfSequence:
        f = self.to_cycle.__getitem__
        start = frozenset(f(v) for v in seq.start) | {self.shared}
        return ReconfSequence(start, [st.relabel(f) for st in seq.steps])


def cut_cycle(c: Graph, k: int, I: Iterable[int], J: Iterable[int], v: int) -> CutInstance:
    """Delete the shared token v: the rest of the cycle is a path on n-1 vertices."""
    I, J = frozenset(I), frozenset(J)
    if v not in I or v not in J:
        raise ValueError(f"vertex {v} is not in both covers")
    order, pos = cycle_order(c)
    n = c.n
    to_cycle = tuple(order[(pos[v] + 1 + i) % n] for i in range(n - 1))
    back = {w: i for i, w in enumerate(to_cycle)}
    return CutInstance(build_path(n - 1), frozenset(back[w] for w in I - {v}),
                       frozenset(back[w] for w in J - {v}), v, to_cycle)


def _kind(rule: Union[Rule, RuleKind, str]) -> RuleKind:
    if isinstance(rule, Rule):
        return rule.kind
    return RuleKind(rule) if isinstance(rule, str) else rule


def solve_cycle(c: Graph, k: int, I: Iterable[int], J: Iterable[int],
                rule: Union[Rule, RuleKind, str] = RuleKind.TJ,
                check: bool = True) -> SolveOutcome:
    """Rotate I until it meets J, then cut the cycle at a shared token and solve on the path."""
    kind = _kind(rule)
    if kind is RuleKind.TAR:
        raise ValueError("use solve_cycle_tar for TAR")
    I, J = frozenset(I), frozenset(J)
    if check:
        require_covers(c, k, I=I, J=J)
    if len(I) != len(J):
        return SolveOutcome.no(Reason.SIZE_MISMATCH)
    if I == J:
        return SolveOutcome.yes(ReconfSequence(I), trivial=True)
    order, pos = cycle_order(c)
    n = c.n
    toks = sorted(pos[v] for v in I)
    found = _movable(toks, n, k)
    assert (found is None) == frozen_size(n, k, len(I)), "movability disagrees with arithmetic"
    if found is None:
        return SolveOutcome.no(Reason.FROZEN)

    t, d = found
    lead = toks[t]
    move = Step.slide if kind is RuleKind.TS else Step.jump
    steps: list[Step] = []
    target = {pos[v] for v in J}
    rounds = 0
    while target.isdisjoint(toks):
        rounds += 1
        assert rounds <= n, "rotation failed to meet the target"
        for a, b in _rotation(toks, n, toks.index(lead), d):
            steps.append(move(order[a], order[b]))
        toks = sorted((p + d) % n for p in toks)
        lead = (lead + d) % n
    prefix = ReconfSequence(I, steps)
    mid = prefix.final
    v = min(mid & J)
    cut = cut_cycle(c, k, mid, J, v)
    solver = solve_path_ts if kind is RuleKind.TS else solve_path_tj
    out = solver(cut.path, k, cut.I, cut.J, check=False)
    assert out.reconfigurable
    return SolveOutcome.yes(concat(prefix, cut.lift(out.sequence)))


def cycle_removable(c: Graph, k: int, X: Iterable[int]) -> Optional[int]:
    """First token (by cycle position) whose removal keeps a k-PVC."""
    order, pos = cycle_order(c)
    toks = sorted(pos[v] for v in X)
    s, n = len(toks), c.n
    if s == 0:
        return None
    if s == 1:
        return order[toks[0]] if n < k else None
    for t in range(s):
        # empty vertices between the two neighbours once toks[t] is gone
        merged = (toks[(t + 1) % s] - toks[t - 1] - 1) % n if s > 2 else n - 1
        if _gap_ok(merged, n, k):
            return order[toks[t]]
    return None


def solve_cycle_tar(c: Graph, k: int, I: Iterable[int], J: Iterable[int], u: int,
                    check: bool = True, witness: bool = True) -> SolveOutcome:
    I, J = frozenset(I), frozenset(J)
    if check:
        require_covers(c, k, I=I, J=J)
    n = c.n
    psi = 0 if n < k else -(-n // k)
    return solve_tar(
        c, k, I, J, u, psi,
        tj_solver=lambda a, b: solve_cycle(c, k, a, b, RuleKind.TJ, check=False),
        removable=lambda X: cycle_removable(c, k, X),
        frozen=lambda size: frozen_size(n, k, size),
        witness=witness,
    )


def detour_family(k: int) -> Instance:
    """C_{3k-1} with three evenly placed tokens against a near-mirror placement.

    For k >= 4 a shortest TJ sequence is longer than |I Δ J| / 2; at k = 3
    the two coincide.
    """
    if k < 3:
        raise ValueError("the family is defined for k >= 3")
    n = 3 * k - 1
    return Instance(build_cycle(n), k, frozenset({0, k, 2 * k}),
                    frozenset({3 * k - 2, 2 * k - 2, k - 2}), Rule.tj())
