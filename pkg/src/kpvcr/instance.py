"""Line-oriented instance files.

    k 3
    n 6
    edge 0 1
    ...
    I: 0 3
    J: 1 4
    rule: tar
    u: 3

`#` starts a comment. A graph file is the same without the cover and rule lines.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .graph import Graph, GraphError, build_from_edges
from .reconfig import Rule, RuleKind, require_covers


class ParseError(ValueError):
    def __init__(self, line: int, col: int, msg: str):
        self.line, self.col = line, col
        super().__init__(f"line {line}, col {col}: {msg}")


@dataclass(frozen=True)
class Instance:
    graph: Graph
    k: int
    I: frozenset
    J: frozenset
    rule: Rule


def _ints(tokens, lineno, text):
    out = []
    for tok in tokens:
        try:
            out.append(int(tok))
        except ValueError:
            raise ParseError(lineno, text.index(tok) + 1, f"expected an integer, got '{tok}'") from None
    return out


def _fields(text: str, need_covers: bool):
    vals: dict = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        parts = line.split()
        key = parts[0]
        col = line.index(key) + 1
        if key in ("k", "n"):
            if len(parts) != 2:
                raise ParseError(lineno, col, f"'{key}' takes one integer")
            if key in vals:
                raise ParseError(lineno, col, f"duplicate '{key}' line")
            vals[key] = _ints(parts[1:], lineno, line)[0]
        elif key == "edge":
            if len(parts) != 3:
                raise ParseError(lineno, col, "'edge' takes two vertex ids")
            edges.append((lineno, _ints(parts[1:], lineno, line)))
        elif key in ("I:", "J:"):
            if key in vals:
                raise ParseError(lineno, col, f"duplicate '{key}' line")
            vals[key] = (lineno, _ints(parts[1:], lineno, line))
        elif key == "rule:":
            if len(parts) != 2 or parts[1] not in ("ts", "tj", "tar"):
                raise ParseError(lineno, col, "rule must be one of ts, tj, tar")
            vals[key] = parts[1]
        elif key == "u:":
            if len(parts) != 2:
                raise ParseError(lineno, col, "'u:' takes one integer")
            vals[key] = _ints(parts[1:], lineno, line)[0]
        else:
            raise ParseError(lineno, col, f"unknown directive '{key}'")
    need = ["n"] + (["k", "I:", "J:", "rule:"] if need_covers else [])
    for key in need:
        if key not in vals:
            raise ParseError(0, 0, f"missing '{key}' line")
    return vals, edges


def _graph(vals, edges) -> Graph:
    n = vals["n"]
    for lineno, (u, v) in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(lineno, 1, f"edge ({u},{v}) references a vertex outside 0..{n - 1}")
    try:
        return build_from_edges(n, [e for _, e in edges])
    except GraphError as exc:
        raise ParseError(0, 0, str(exc)) from None


def parse_graph(text: str) -> tuple[Graph, Optional[int]]:
    """Graph plus the optional `k` line."""
    vals, edges = _fields(text, need_covers=False)
    return _graph(vals, edges), vals.get("k")


def parse_instance(text: str, check: bool = True) -> Instance:
    vals, edges = _fields(text, need_covers=True)
    g = _graph(vals, edges)
    k = vals["k"]
    if k < 2:
        raise ParseError(0, 0, "k must be at least 2")
    kind = RuleKind(vals["rule:"])
    if kind is RuleKind.TAR:
        if "u:" not in vals:
            raise ParseError(0, 0, "rule 'tar' needs a 'u:' line")
        rule = Rule.tar(vals["u:"])
    else:
        if "u:" in vals:
            raise ParseError(0, 0, "'u:' is only allowed with rule 'tar'")
        rule = Rule(kind)
    covers = {}
    for key in ("I:", "J:"):
        lineno, ids = vals[key]
        bad = [v for v in ids if not 0 <= v < g.n]
        if bad:
            raise ParseError(lineno, 1, f"{key[0]} has vertices outside 0..{g.n - 1}: {bad}")
        if len(set(ids)) != len(ids):
            raise ParseError(lineno, 1, f"{key[0]} lists a vertex twice")
        covers[key[0]] = frozenset(ids)
    if check:
        require_covers(g, k, **covers)
    return Instance(g, k, covers["I"], covers["J"], rule)


def emit_graph(g: Graph, k: Optional[int] = None) -> str:
    lines = [] if k is None else [f"k {k}"]
    lines.append(f"n {g.n}")
    lines.extend(f"edge {u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def emit_instance(inst: Instance) -> str:
    out = emit_graph(inst.graph, inst.k)
    out += "I: " + " ".join(map(str, sorted(inst.I))) + "\n"
    out += "J: " + " ".join(map(str, sorted(inst.J))) + "\n"
    out += f"rule: {inst.rule.kind.value}\n"
    if inst.rule.cap is not None:
        out += f"u: {inst.rule.cap}\n"
    return out
