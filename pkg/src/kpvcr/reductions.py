"""Hardness constructions: pendant-path transform and NCL AND/OR gadgets."""

from __future__ import annotations

import enum
import itertools
from collections import deque
from dataclasses import dataclass
from typing import Optional

from .graph import Graph, build_from_edges
from .oracle import build_reconf_graph
from .reconfig import Rule, RuleKind


@dataclass(frozen=True)
class PendantTransform:
    base: Graph
    k: int
    result: Graph
    pendant_map: tuple[tuple[int, ...], ...]  # base vertex -> its new path, nearest first


def pendant_transform(g: Graph, k: int) -> PendantTransform:
    """Hang a path of (k-1)//2 new vertices off every vertex."""
    if k < 2:
        raise ValueError("k must be at least 2")
    m = (k - 1) // 2
    edges = list(g.edges)
    pendants = []
    for x in range(g.n):
        path = tuple(g.n + x * m + i for i in range(m))
        prev = x
        for v in path:
            edges.append((prev, v))
            prev = v
        pendants.append(path)
    return PendantTransform(g, k, build_from_edges(g.n * (1 + m), edges), tuple(pendants))


class GadgetKind(enum.Enum):
    AND = "and"
    OR = "or"


WEIGHTS = {GadgetKind.AND: (1, 1, 2), GadgetKind.OR: (2, 2, 2)}


@dataclass(frozen=True)
class Port:
    vertices: tuple[int, ...]  # the connecting path, attachment side first
    inward: int  # center next to the main part
    outward: int


@dataclass(frozen=True)
class NclGadget:
    kind: GadgetKind
    k: int
    graph: Graph
    main: tuple[int, ...]
    ports: tuple[Port, Port, Port]
    weights: tuple[int, int, int]


def build_gadget(kind: GadgetKind | str, k: int) -> NclGadget:
    """Main part (P_k for AND, C_{k+1} for OR) plus three P_{2k-2} connecting parts.

    Each connecting part is joined to the main part at its inward center.
    """
    kind = GadgetKind(kind)
    if k < 3:
        raise ValueError("gadgets are built for k >= 3")
    size = k if kind is GadgetKind.AND else k + 1
    main = tuple(range(size))
    edges = [(i, i + 1) for i in range(size - 1)]
    if kind is GadgetKind.OR:
        edges.append((size - 1, 0))
        attach = (0, 1, 2)
    else:
        attach = (k - 1, k - 1, 0)  # two weight-1 ports at one end, the weight-2 port at the other
    ports = []
    plen = 2 * k - 2
    for p, a in enumerate(attach):
        vs = tuple(size + p * plen + i for i in range(plen))
        edges.extend((vs[i], vs[i + 1]) for i in range(plen - 1))
        inward, outward = vs[k - 2], vs[k - 1]
        edges.append((a, inward))
        ports.append(Port(vs, inward, outward))
    g = build_from_edges(size + 3 * plen, edges)
    return NclGadget(kind, k, g, main, tuple(ports), WEIGHTS[kind])


Orientation = tuple[bool, bool, bool]  # True = edge points into the vertex


def orientation_valid(kind: GadgetKind | str, o: Orientation) -> bool:
    w = WEIGHTS[GadgetKind(kind)]
    return sum(wi for wi, inward in zip(w, o) if inward) >= 2


def valid_orientations(kind: GadgetKind | str) -> list[Orientation]:
    return [o for o in itertools.product((True, False), repeat=3) if orientation_valid(kind, o)]


def orientation_graph(kind: GadgetKind | str) -> tuple[list[Orientation], set]:
    """Valid orientations and the single-edge flips between them."""
    nodes = valid_orientations(kind)
    ok = set(nodes)
    edges = set()
    for o in nodes:
        for i in range(3):
            f = tuple(not x if j == i else x for j, x in enumerate(o))
            if f in ok:
                edges.add(frozenset((o, f)))
    return nodes, edges


def port_signature(gadget: NclGadget, cover) -> tuple:
    """Per port: True (inward center only), False (outward only), or the raw token tuple."""
    sig = []
    for port in gadget.ports:
        used = tuple(v for v in port.vertices if v in cover)
        if used == (port.inward,):
            sig.append(True)
        elif used == (port.outward,):
            sig.append(False)
        else:
            sig.append(used)
    return tuple(sig)


@dataclass
class GadgetQuotient:
    classes: dict  # signature -> list of cover indices
    edges: set  # frozenset pairs of signatures
    internally_connected: dict  # signature -> bool
    states: list

    @property
    def nodes(self) -> list:
        return list(self.classes)


def gadget_reconf_graph(gadget: NclGadget, token_budget: int, rule: Rule | RuleKind | str = RuleKind.TJ,
                        budget: Optional[int] = None) -> GadgetQuotient:
    """Covers with exactly `token_budget` tokens, merged by port signature."""
    if isinstance(rule, str):
        rule = RuleKind(rule)
    if isinstance(rule, RuleKind):
        rule = Rule(rule)
    if rule.kind is RuleKind.TAR:
        raise ValueError("gadget quotients are defined for TS and TJ")
    rg = build_reconf_graph(gadget.graph, gadget.k, rule, size=token_budget, budget=budget)
    states = rg.states
    sig = [port_signature(gadget, s) for s in states]
    classes: dict = {}
    for i, s in enumerate(sig):
        classes.setdefault(s, []).append(i)
    connected = {}
    for s, members in classes.items():
        inside = set(members)
        seen = {members[0]}
        queue = deque([members[0]])
        while queue:
            a = queue.popleft()
            for b in rg.adjacency[a]:
                if b in inside and b not in seen:
                    seen.add(b)
                    queue.append(b)
        connected[s] = len(seen) == len(members)
    edges = set()
    for a, b in rg.edges():
        if sig[a] != sig[b]:
            edges.add(frozenset((sig[a], sig[b])))
    return GadgetQuotient(classes, edges, connected, states)
