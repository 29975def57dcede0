"""Acceptance criteria 1-12.

Each test tags itself with its criterion number; conftest prints one
PASS/FAIL line per criterion after the run. Expected values come from the
exhaustive oracle in `kpvcr.oracle` or from the brute-force helpers.
"""

import gc
import itertools
import random
import time

import networkx as nx
import pytest

from kpvcr.cli import _bench_instance
from kpvcr.cycle import frozen_size, detour_family, solve_cycle, solve_cycle_tar
from kpvcr.graph import build_cycle, build_from_edges, build_path, is_kpvc
from kpvcr.oracle import build_reconf_graph, enumerate_covers, oracle_min_cover_size, oracle_reachable
from kpvcr.path import solve_path_tar, solve_path_tj, solve_path_ts, ts_distance
from kpvcr.reconfig import ReconfSequence, Rule, Step, tar_to_tj, tj_to_tar, verify
from kpvcr.reductions import (build_gadget, gadget_reconf_graph, orientation_graph,
                              pendant_transform)
from kpvcr.tree import partition_tree, solve_tree_tj

from helpers import brute_covers, brute_min_cover

KS = (2, 3, 4)
MAX_REPORTED = 5


def _psi_cycle(n, k):
    return 0 if n < k else -(-n // k)


def _trees(max_n):
    yield build_from_edges(1, [])
    for n in range(2, max_n + 1):
        for t in nx.nonisomorphic_trees(n):
            yield build_from_edges(n, sorted(t.edges()))


def _equal_size_sweep(g, k, rule, lo, solve, check_length=None):
    """Compare solve() against the oracle on every equal-size cover pair.

    Returns (pairs checked, list of failure descriptions).
    """
    bad, pairs = [], 0
    for s in range(lo, g.n + 1):
        rg = build_reconf_graph(g, k, rule, size=s)
        dist = rg.distance_matrix()
        states = rg.states
        for a, I in enumerate(states):
            for b, J in enumerate(states):
                pairs += 1
                d = int(dist[a, b])
                out = solve(g, k, I, J)
                if out.reconfigurable != (d >= 0):
                    bad.append(f"n={g.n} k={k} {sorted(I)}->{sorted(J)}: solver {out.reconfigurable}, oracle d={d}")
                elif out.reconfigurable:
                    seq = out.sequence
                    if not verify(g, k, rule, seq, J):
                        bad.append(f"n={g.n} k={k} {sorted(I)}->{sorted(J)}: witness fails verify")
                    elif check_length is not None:
                        msg = check_length(g, I, J, seq.length, d)
                        if msg:
                            bad.append(f"n={g.n} k={k} {sorted(I)}->{sorted(J)}: {msg}")
    return pairs, bad


def _report(bad, pairs):
    assert not bad, f"{len(bad)} failures out of {pairs} pairs, first: {bad[:MAX_REPORTED]}"


def test_c01_path_tj_shortest(record_property):
    record_property("criterion", "1")

    def lengths(g, I, J, got, d):
        want = len(I ^ J) // 2
        if not got == want == d:
            return f"length {got}, |IΔJ|/2 = {want}, oracle {d}"

    pairs, bad = 0, []
    for n in range(1, 13):
        g = build_path(n)
        for k in KS:
            p, b = _equal_size_sweep(g, k, Rule.tj(), n // k,
                                     lambda g, k, I, J: solve_path_tj(g, k, I, J, check=False), lengths)
            pairs, bad = pairs + p, bad + b
    _report(bad, pairs)


def test_c02_path_ts_shortest(record_property):
    record_property("criterion", "2")

    def lengths(g, I, J, got, d):
        want = ts_distance(g, I, J)
        if not got == want == d:
            return f"length {got}, rank-matched distance {want}, oracle {d}"

    pairs, bad = 0, []
    for n in range(1, 13):
        g = build_path(n)
        for k in KS:
            p, b = _equal_size_sweep(g, k, Rule.ts(), n // k,
                                     lambda g, k, I, J: solve_path_ts(g, k, I, J, check=False), lengths)
            pairs, bad = pairs + p, bad + b
    _report(bad, pairs)


def test_c03_tj_tar_round_trip(record_property):
    record_property("criterion", "3")
    rng = random.Random(20240611)
    family = [(build_path(n), k) for n in range(2, 13) for k in KS]
    family += [(build_cycle(n), k) for n in range(3, 13) for k in KS]
    sampled, bad = 0, []
    while sampled < 200:
        g, k = rng.choice(family)
        lo = g.n // k if g.n - 1 == len(g.edges) else _psi_cycle(g.n, k)
        s = rng.randint(lo, g.n)
        rg = build_reconf_graph(g, k, Rule.tj(), size=s)
        cur = rng.randrange(len(rg))
        start = rg.state(cur)
        steps = []
        for _ in range(rng.randint(1, 8)):
            nbrs = rg.adjacency[cur]
            if not nbrs:
                break
            nxt = rng.choice(sorted(nbrs))
            (x,), (y,) = rg.state(cur) - rg.state(nxt), rg.state(nxt) - rg.state(cur)
            steps.append(Step.jump(x, y))
            cur = nxt
        if not steps:
            continue
        seq = ReconfSequence(start, steps)
        assert verify(g, k, Rule.tj(), seq)
        sampled += 1
        ell = seq.length
        tar = tj_to_tar(g, k, seq)
        if tar.length != 2 * ell or not verify(g, k, Rule.tar(s + 1), tar, seq.final):
            bad.append(f"n={g.n} k={k}: TAR image length {tar.length}, expected {2 * ell}")
            continue
        back = tar_to_tj(g, k, tar)
        if (back.start, back.final, back.length) != (seq.start, seq.final, ell):
            bad.append(f"n={g.n} k={k}: round trip gave length {back.length}, expected {ell}")
    _report(bad, sampled)


def test_c04_tree_tj(record_property):
    record_property("criterion", "4")
    pairs, bad = 0, []
    for g in _trees(10):
        for k in (2, 3):
            sizes = []
            for s in range(g.n + 1):
                rg = build_reconf_graph(g, k, Rule.tj(), size=s)
                if not len(rg):
                    continue
                sizes.append(rg.states[0])
                comp = rg.components()
                states = rg.states
                for a, I in enumerate(states):
                    for b, J in enumerate(states):
                        pairs += 1
                        out = solve_tree_tj(g, k, I, J, check=False)
                        if out.reconfigurable != (comp[a] == comp[b]):
                            bad.append(f"{g.edges} k={k} {sorted(I)}->{sorted(J)}: verdict")
                        elif out and not verify(g, k, Rule.tj(), out.sequence, J):
                            bad.append(f"{g.edges} k={k} {sorted(I)}->{sorted(J)}: witness")
            # TJ keeps the size, so one representative per pair of sizes suffices
            for I, J in itertools.permutations(sizes, 2):
                pairs += 1
                if solve_tree_tj(g, k, I, J, check=False).reconfigurable:
                    bad.append(f"{g.edges} k={k} sizes {len(I)}, {len(J)}: claimed reachable")
    _report(bad, pairs)


def test_c05_tree_partition(record_property):
    record_property("criterion", "5")
    checked, bad = 0, []
    for g in _trees(10):
        for k in (2, 3):
            part = partition_tree(g, k, 0)
            for p, a in zip(part.parts, part.anchors):
                inside = build_from_edges(g.n, [e for e in g.edges if e[0] in p and e[1] in p])
                if a not in p or not is_kpvc(inside, k, {a}):
                    bad.append(f"{g.edges} k={k}: anchor {a} does not cover part {sorted(p)}")
            for c in enumerate_covers(g, k, 0, g.n):
                checked += 1
                missed = [sorted(p) for p in part.parts if not c & p]
                if missed:
                    bad.append(f"{g.edges} k={k}: cover {sorted(c)} misses parts {missed}")
    _report(bad, checked)


def _cycle_solver(rule):
    return lambda g, k, I, J: solve_cycle(g, k, I, J, rule, check=False)


def test_c06a_cycle_matches_oracle(record_property):
    record_property("criterion", "6a")
    pairs, bad = 0, []
    for n in range(3, 13):
        g = build_cycle(n)
        for k in KS:
            for rule in (Rule.ts(), Rule.tj()):
                p, b = _equal_size_sweep(g, k, rule, _psi_cycle(n, k), _cycle_solver(rule))
                pairs, bad = pairs + p, bad + [f"{rule}: {x}" for x in b]
    _report(bad, pairs)


def test_c06b_frozen_clause(record_property):
    """Literal clause: |I| = ceil(n/k), k | n and I != J must be a No-instance."""
    record_property("criterion", "6b")
    pairs, bad = 0, []
    for n in range(3, 13):
        g = build_cycle(n)
        for k in KS:
            if n % k:
                continue
            s = -(-n // k)
            covers = enumerate_covers(g, k, s, s)
            for rule in (Rule.ts(), Rule.tj()):
                for I, J in itertools.permutations(covers, 2):
                    pairs += 1
                    if solve_cycle(g, k, I, J, rule, check=False).reconfigurable:
                        reach = oracle_reachable(g, k, rule, I, J).reachable
                        bad.append(f"C_{n} k={k} {rule} {sorted(I)}->{sorted(J)}: solver Yes, oracle {reach}")
    _report(bad, pairs)


def _tar_sweep(g, k, psi, solve):
    rng = random.Random(g.n * 100 + k)
    pairs, sampled, bad = 0, 0, []
    for u in range(psi, g.n + 1):
        rule = Rule.tar(u)
        rg = build_reconf_graph(g, k, rule)
        comp = rg.components()
        states = rg.states
        for a, I in enumerate(states):
            for b, J in enumerate(states):
                pairs += 1
                out = solve(g, k, I, J, u, witness=False)
                if out.reconfigurable != (comp[a] == comp[b]):
                    bad.append(f"n={g.n} k={k} u={u} {sorted(I)}->{sorted(J)}: solver {out.reconfigurable}")
                elif out.reconfigurable and rng.random() < 0.1:
                    sampled += 1
                    seq = solve(g, k, I, J, u, witness=True).sequence
                    if not verify(g, k, rule, seq, J):
                        bad.append(f"n={g.n} k={k} u={u} {sorted(I)}->{sorted(J)}: witness")
    return pairs, sampled, bad


def test_c07_tar_paths_and_cycles(record_property):
    record_property("criterion", "7")
    pairs, sampled, bad = 0, 0, []
    for n in range(1, 11):
        for k in KS:
            runs = [(build_path(n), n // k, lambda *a, **kw: solve_path_tar(*a, check=False, **kw))]
            if n >= 3:
                runs.append((build_cycle(n), _psi_cycle(n, k),
                             lambda *a, **kw: solve_cycle_tar(*a, check=False, **kw)))
            for g, psi, solve in runs:
                p, s, b = _tar_sweep(g, k, psi, solve)
                pairs, sampled, bad = pairs + p, sampled + s, bad + b
    assert sampled > 10000
    _report(bad, pairs)


def _explicit_detour_sequence(k):
    # I = {0, k, 2k} -> J = {3k-2, 2k-2, k-2} on C_{3k-1} in five jumps
    return ReconfSequence({0, k, 2 * k}, [
        Step.jump(2 * k, 2 * k - 1),
        Step.jump(k, k - 1),
        Step.jump(0, 3 * k - 2),
        Step.jump(2 * k - 1, 2 * k - 2),
        Step.jump(k - 1, k - 2),
    ])


def test_c08_detour_family(record_property):
    record_property("criterion", "8")
    problems = []
    seq = _explicit_detour_sequence(3)
    inst = detour_family(3)
    if not verify(inst.graph, 3, Rule.tj(), seq, inst.J):
        problems.append("explicit 5-step sequence for k=3 does not verify")
    for k in (3, 4):
        inst = detour_family(k)
        ans = oracle_reachable(inst.graph, k, Rule.tj(), inst.I, inst.J)
        if not ans.reachable:
            problems.append(f"k={k}: unreachable")
        elif not ans.shortest > len(inst.I ^ inst.J) // 2:
            problems.append(f"k={k}: oracle shortest {ans.shortest} is not > {len(inst.I ^ inst.J) // 2}")
    assert not problems, problems


def test_c09_or_gadget_count(record_property):
    record_property("criterion", "9")
    g = build_gadget("or", 3)
    assert len(enumerate_covers(g.graph, 3, 0, 5)) == 18


def test_c10_gadget_quotients(record_property):
    record_property("criterion", "10")
    for kind, budget in (("and", 4), ("or", 5)):
        gad = build_gadget(kind, 3)
        tj = gadget_reconf_graph(gad, budget, Rule.tj())
        ts = gadget_reconf_graph(gad, budget, Rule.ts())
        nodes, edges = orientation_graph(kind)
        q = nx.Graph(list(map(tuple, tj.edges)))
        q.add_nodes_from(tj.nodes)
        o = nx.Graph(list(map(tuple, edges)))
        o.add_nodes_from(nodes)
        assert len(nodes) == (5 if kind == "and" else 7)
        assert nx.is_isomorphic(q, o)
        assert set(tj.nodes) == set(nodes) and tj.edges == edges
        assert all(tj.internally_connected.values()) and all(ts.internally_connected.values())
        assert ts.edges <= tj.edges


def test_c11_pendant_transform(record_property):
    record_property("criterion", "11")
    checked, bad = 0, []
    for h in nx.graph_atlas_g():
        n = h.number_of_nodes()
        if n == 0 or not nx.is_connected(h):
            continue
        g = build_from_edges(n, sorted(tuple(sorted(e)) for e in h.edges()))
        gp = pendant_transform(g, 3).result
        vc = brute_min_cover(g, 2)
        pvc = oracle_min_cover_size(gp, 3)
        checked += 1
        if vc != pvc:
            bad.append(f"{g.edges}: min VC {vc}, min 3-PVC of transform {pvc}")
        for S in brute_covers(g, 2, vc):
            if not is_kpvc(gp, 3, S):
                bad.append(f"{g.edges}: min VC {sorted(S)} is not a 3-PVC of the transform")
    assert checked == 996
    _report(bad, checked)


def _best_time(fn, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        gc.collect()
        gc.disable()
        try:
            t = time.perf_counter()
            fn()
            best = min(best, time.perf_counter() - t)
        finally:
            gc.enable()
    return best


def test_c12_scaling(record_property):
    record_property("criterion", "12")
    sizes = (1_000, 10_000, 100_000)
    k = 3
    report = {}
    for name, shape, solver, bound in (
        ("path-tj", "path", solve_path_tj, lambda r: 15),
        ("cycle-tj", "cycle", lambda g, k, I, J, check: solve_cycle(g, k, I, J, "tj", check), lambda r: 15),
        ("path-ts", "path", solve_path_ts, lambda r: 1.5 * r * r),
    ):
        times = []
        for n in sizes:
            g, I, J = _bench_instance(shape, n, k)
            times.append(_best_time(lambda: solver(g, k, I, J, check=False)))
        report[name] = times
        for (n1, t1), (n2, t2) in zip(zip(sizes, times), zip(sizes[1:], times[1:])):
            assert t2 / t1 <= bound(n2 / n1), f"{name}: {n1}->{n2} ratio {t2 / t1:.1f} ({report})"
