"""Reconfiguration rules, steps, sequences and their verification."""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .graph import Graph, find_uncovered_path


class RuleKind(enum.Enum):
    TS = "ts"
    TJ = "tj"
    TAR = "tar"


@dataclass(frozen=True)
class Rule:
    kind: RuleKind
    cap: Optional[int] = None

    def __post_init__(self):
        if (self.kind is RuleKind.TAR) != (self.cap is not None):
            raise ValueError("a capacity is given exactly for TAR rules")
        if self.cap is not None and self.cap < 0:
            raise ValueError(f"capacity must be non-negative, got {self.cap}")

    @classmethod
    def ts(cls) -> "Rule":
        return cls(RuleKind.TS)

    @classmethod
    def tj(cls) -> "Rule":
        return cls(RuleKind.TJ)

    @classmethod
    def tar(cls, u: int) -> "Rule":
        return cls(RuleKind.TAR, u)

    def __str__(self) -> str:
        return f"tar({self.cap})" if self.cap is not None else self.kind.value


SLIDE, JUMP, ADD, REMOVE = "slide", "jump", "add", "remove"


@dataclass(frozen=True)
class Step:
    kind: str
    a: int
    b: Optional[int] = None

    @classmethod
    def slide(cls, x: int, y: int) -> "Step":
        return cls(SLIDE, x, y)

    @classmethod
    def jump(cls, x: int, y: int) -> "Step":
        return cls(JUMP, x, y)

    @classmethod
    def add(cls, v: int) -> "Step":
        return cls(ADD, v)

    @classmethod
    def remove(cls, v: int) -> "Step":
        return cls(REMOVE, v)

    @property
    def moves(self) -> bool:
        return self.kind in (SLIDE, JUMP)

    def inverse(self) -> "Step":
        if self.kind == ADD:
            return Step(REMOVE, self.a)
        if self.kind == REMOVE:
            return Step(ADD, self.a)
        return Step(self.kind, self.b, self.a)

    def relabel(self, f: Callable[[int], int]) -> "Step":
        return Step(self.kind, f(self.a), None if self.b is None else f(self.b))

    def __str__(self) -> str:
        return f"{self.kind} {self.a}" if self.b is None else f"{self.kind} {self.a} {self.b}"


def apply_step(state: set, step: Step) -> None:
    """Apply `step` to `state` in place, without any legality check."""
    if step.kind == ADD:
        state.add(step.a)
    elif step.kind == REMOVE:
        state.discard(step.a)
    else:
        state.discard(step.a)
        state.add(step.b)


@dataclass(frozen=True)
class ReconfSequence:
    start: frozenset
    steps: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "start", frozenset(self.start))
        object.__setattr__(self, "steps", tuple(self.steps))

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def length(self) -> int:
        return len(self.steps)

    def states(self) -> Iterator[frozenset]:
        """Yield all length+1 token sets in order."""
        cur = set(self.start)
        yield frozenset(cur)
        for st in self.steps:
            apply_step(cur, st)
            yield frozenset(cur)

    @property
    def final(self) -> frozenset:
        cur = set(self.start)
        for st in self.steps:
            apply_step(cur, st)
        return frozenset(cur)

    def dumps(self) -> str:
        lines = ["start: " + " ".join(map(str, sorted(self.start)))]
        lines.extend(str(st) for st in self.steps)
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "ReconfSequence":
        start = None
        steps = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("start:"):
                if start is not None:
                    raise ValueError(f"line {lineno}: duplicate start line")
                try:
                    start = [int(t) for t in line[len("start:"):].split()]
                except ValueError:
                    raise ValueError(f"line {lineno}: non-integer vertex in start line") from None
                continue
            if start is None:
                raise ValueError(f"line {lineno}: step before the start line")
            parts = line.split()
            kind, args = parts[0], parts[1:]
            arity = {SLIDE: 2, JUMP: 2, ADD: 1, REMOVE: 1}.get(kind)
            if arity is None:
                raise ValueError(f"line {lineno}: unknown step '{kind}'")
            if len(args) != arity:
                raise ValueError(f"line {lineno}: '{kind}' takes {arity} vertex argument(s)")
            try:
                vs = [int(a) for a in args]
            except ValueError:
                raise ValueError(f"line {lineno}: non-integer vertex") from None
            steps.append(Step(kind, *vs))
        if start is None:
            raise ValueError("missing 'start:' line")
        return cls(frozenset(start), steps)


def reverse(seq: ReconfSequence) -> ReconfSequence:
    return ReconfSequence(seq.final, [st.inverse() for st in reversed(seq.steps)])


def concat(first: ReconfSequence, second: ReconfSequence) -> ReconfSequence:
    if first.final != second.start:
        raise ValueError("cannot concatenate: final state of the first sequence differs "
                         "from the start of the second")
    return ReconfSequence(first.start, first.steps + second.steps)


class Reason(enum.Enum):
    SIZE_MISMATCH = "SizeMismatch"
    FROZEN = "FrozenMinimumCycle"
    CAPACITY = "CapacityBlocked"
    NO_REMOVABLE = "NoRemovableToken"
    UNREACHABLE = "Unreachable"  # oracle verdict, no structural explanation


@dataclass
class SolveOutcome:
    reconfigurable: bool
    sequence: Optional[ReconfSequence] = None
    reason: Optional[Reason] = None
    trivial: bool = False  # I == J

    @classmethod
    def yes(cls, seq: Optional[ReconfSequence], trivial: bool = False) -> "SolveOutcome":
        return cls(True, seq, None, trivial)

    @classmethod
    def no(cls, reason: Reason) -> "SolveOutcome":
        return cls(False, None, reason)

    def __bool__(self) -> bool:
        return self.reconfigurable


class InvalidCoverError(ValueError):
    def __init__(self, name: str, witness: tuple[int, ...]):
        self.name = name
        self.witness = witness
        super().__init__(f"{name} is not a k-path vertex cover: path {list(witness)} is uncovered")


def require_covers(g: Graph, k: int, **covers: Iterable[int]) -> None:
    for name, c in covers.items():
        bad = [v for v in c if not 0 <= v < g.n]
        if bad:
            raise ValueError(f"{name} contains vertices outside 0..{g.n - 1}: {bad}")
        w = find_uncovered_path(g, k, c)
        if w is not None:
            raise InvalidCoverError(name, w)


@dataclass
class Verdict:
    ok: bool
    step: Optional[int] = None  # 1-based index of the first failing step, 0 for the start state
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _ball(g: Graph, k: int, blocked: set, x: int) -> list[int]:
    # vertices reachable from x within k-1 hops in g - blocked
    depth = {x: 0}
    queue = deque([x])
    while queue:
        v = queue.popleft()
        if depth[v] == k - 1:
            continue
        for w in g.adjacency[v]:
            if w not in depth and w not in blocked:
                depth[w] = depth[v] + 1
                queue.append(w)
    return list(depth)


def verify(g: Graph, k: int, rule: Rule, seq: ReconfSequence,
           target: Optional[Iterable[int]] = None) -> Verdict:
    """Check that `seq` is a reconfiguration sequence under `rule` ending at `target`.

    The start state gets a full cover check; after every step that vacates
    a vertex x only the k-paths through x can become uncovered, so the
    search is restricted to the (k-1)-ball around x.
    """
    state = set(seq.start)
    bad = [v for v in state if not 0 <= v < g.n]
    if bad:
        return Verdict(False, 0, f"start state has vertices outside the graph: {sorted(bad)}")
    cap = rule.cap
    if cap is not None and len(state) > cap:
        return Verdict(False, 0, f"capacity exceeded at step 0 ({len(state)} > {cap})")
    w = find_uncovered_path(g, k, state)
    if w is not None:
        return Verdict(False, 0, f"start state leaves k-path {list(w)} uncovered")
    for i, st in enumerate(seq.steps, 1):
        if rule.kind is RuleKind.TAR:
            if st.moves:
                return Verdict(False, i, f"step {i} '{st}' is not an addition or removal")
        elif not st.moves:
            return Verdict(False, i, f"step {i} '{st}' is not a token move")
        vacated = None
        if st.kind == ADD:
            if not 0 <= st.a < g.n or st.a in state:
                return Verdict(False, i, f"step {i} '{st}': vertex invalid or already occupied")
            if len(state) + 1 > cap:
                return Verdict(False, i, f"capacity exceeded at step {i} ({len(state) + 1} > {cap})")
            state.add(st.a)
        elif st.kind == REMOVE:
            if st.a not in state:
                return Verdict(False, i, f"step {i} '{st}': no token on {st.a}")
            state.discard(st.a)
            vacated = st.a
        else:
            x, y = st.a, st.b
            if x not in state:
                return Verdict(False, i, f"step {i} '{st}': no token on {x}")
            if not 0 <= y < g.n or y in state:
                return Verdict(False, i, f"step {i} '{st}': target {y} invalid or occupied")
            if (st.kind == SLIDE or rule.kind is RuleKind.TS) and not g.has_edge(x, y):
                return Verdict(False, i, f"step {i} '{st}': non-adjacent slide")
            state.discard(x)
            state.add(y)
            vacated = x
        if vacated is not None:
            ball = _ball(g, k, state, vacated)
            w = find_uncovered_path(g, k, state, within=ball) if len(ball) >= k else None
            if w is not None:
                return Verdict(False, i, f"step {i} '{st}' leaves k-path {list(w)} uncovered")
    if target is not None and state != set(target):
        return Verdict(False, len(seq.steps), "final state differs from the target")
    return Verdict(True)


def tj_to_tar(g: Graph, k: int, seq: ReconfSequence) -> ReconfSequence:
    """Expand every move x->y into add(y), remove(x)."""
    v = verify(g, k, Rule.tj(), seq)
    if not v:
        raise ValueError(f"input is not a TJ sequence: {v.message}")
    steps = []
    for st in seq.steps:
        steps.append(Step.add(st.b))
        steps.append(Step.remove(st.a))
    return ReconfSequence(seq.start, steps)


def tar_to_tj(g: Graph, k: int, seq: ReconfSequence) -> ReconfSequence:
    """Collapse a TAR(s+1) sequence between two size-s covers into a TJ sequence.

    Rewrites the sequence until no state drops below s: the first removal
    that reaches s-1 is paired with the next addition, either cancelling a
    remove/add of the same vertex or hoisting the addition in front. The
    result alternates add/remove and each pair becomes one jump.
    """
    s = len(seq.start)
    end = seq.final
    if len(end) != s:
        raise ValueError(f"endpoints have different sizes ({s} and {len(end)})")
    v = verify(g, k, Rule.tar(s + 1), seq)
    if not v:
        raise ValueError(f"input is not a TAR({s + 1}) sequence: {v.message}")

    ops = list(seq.steps)
    while True:
        size = s
        low = None
        for i, st in enumerate(ops):
            size += 1 if st.kind == ADD else -1
            if size < s:
                low = i
                break
        if low is None:
            break
        j = next(t for t in range(low + 1, len(ops)) if ops[t].kind == ADD)
        y = ops[j].a
        cancel = None
        for t in range(low, j):
            if ops[t].a == y:
                cancel = t
        if cancel is not None:
            del ops[j]
            del ops[cancel]
        else:
            ops.insert(low, ops.pop(j))

    steps = []
    for t in range(0, len(ops), 2):
        add, rem = ops[t], ops[t + 1]
        assert add.kind == ADD and rem.kind == REMOVE
        if add.a != rem.a:
            steps.append(Step.jump(rem.a, add.a))
    return ReconfSequence(seq.start, steps)


def pad_to(g: Graph, cover: frozenset, size: int) -> list[Step]:
    """Additions bringing `cover` up to `size` tokens, smallest free ids first."""
    steps = []
    need = size - len(cover)
    v = 0
    while need > 0:
        if v not in cover:
            steps.append(Step.add(v))
            need -= 1
        v += 1
    return steps


def solve_tar(
    g: Graph, k: int, I: frozenset, J: frozenset, u: int, psi: int,
    tj_solver: Callable[[frozenset, frozenset], SolveOutcome],
    removable: Callable[[frozenset], Optional[int]],
    frozen: Callable[[int], bool] = lambda size: False,
    witness: bool = True,
) -> SolveOutcome:
    """TAR(u) decision shared by the path, cycle and tree solvers.

    `psi` is the minimum cover size, `removable(X)` returns a token of X
    whose removal keeps a cover (or None), `frozen(w)` tells whether the
    size-w covers are pairwise TJ-unreachable (only minimum covers of
    C_n with k | n, n > k), and `tj_solver` must succeed on any two
    non-frozen covers of equal size.
    """
    s = max(len(I), len(J))
    if u < s:
        return SolveOutcome.no(Reason.CAPACITY)
    if I == J:
        return SolveOutcome.yes(ReconfSequence(I), trivial=True)
    if u <= psi:
        return SolveOutcome.no(Reason.CAPACITY)

    if u >= s + 1:
        w = s
        if frozen(w):
            if u < s + 2:
                return SolveOutcome.no(Reason.FROZEN)
            w = s + 1
        pre_i = pad_to(g, I, w)
        pre_j = pad_to(g, J, w)
    else:
        w = s - 1
        pre = []
        for X in (I, J):
            if len(X) == s:
                x = removable(X)
                if x is None:
                    return SolveOutcome.no(Reason.NO_REMOVABLE)
                pre.append([Step.remove(x)])
            else:
                pre.append(pad_to(g, X, w))
        pre_i, pre_j = pre
        if frozen(w):
            a = ReconfSequence(I, pre_i).final
            b = ReconfSequence(J, pre_j).final
            if a != b:
                return SolveOutcome.no(Reason.FROZEN)
    if not witness:
        return SolveOutcome.yes(None)

    head = ReconfSequence(I, pre_i)
    tail = ReconfSequence(J, pre_j)
    a, b = head.final, tail.final
    core = ReconfSequence(a)
    if a != b:
        out = tj_solver(a, b)
        assert out.reconfigurable, "TJ core must be reconfigurable"
        core = tj_to_tar(g, k, out.sequence)
    return SolveOutcome.yes(concat(concat(head, core), reverse(tail)))
