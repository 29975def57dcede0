#!/usr/bin/env python3
"""Compare the polynomial solvers against the exhaustive oracle on small paths and cycles.

Prints one row per (shape, n, k, rule) with the number of cover pairs and
disagreements. Every Yes witness is run through verify.

    python3 scripts/sweep.py --max-n 9 --rules tj ts tar
"""

import argparse
import sys

from kpvcr.cycle import solve_cycle, solve_cycle_tar
from kpvcr.graph import build_cycle, build_path
from kpvcr.oracle import build_reconf_graph
from kpvcr.path import solve_path_tar, solve_path_tj, solve_path_ts
from kpvcr.reconfig import Rule, verify


def psi(shape, n, k):
    if shape == "path":
        return n // k
    return 0 if n < k else -(-n // k)


def solver_for(shape, rule):
    if shape == "path":
        if rule.kind.value == "tar":
            return lambda g, k, I, J: solve_path_tar(g, k, I, J, rule.cap, check=False)
        fn = solve_path_tj if rule.kind.value == "tj" else solve_path_ts
        return lambda g, k, I, J: fn(g, k, I, J, check=False)
    if rule.kind.value == "tar":
        return lambda g, k, I, J: solve_cycle_tar(g, k, I, J, rule.cap, check=False)
    return lambda g, k, I, J: solve_cycle(g, k, I, J, rule, check=False)


def sweep_one(shape, n, k, rule):
    g = build_path(n) if shape == "path" else build_cycle(n)
    solve = solver_for(shape, rule)
    sizes = [None] if rule.cap is not None else range(psi(shape, n, k), n + 1)
    pairs = bad = 0
    for s in sizes:
        rg = build_reconf_graph(g, k, rule, size=s)
        comp = rg.components()
        states = rg.states
        for a, I in enumerate(states):
            for b, J in enumerate(states):
                pairs += 1
                out = solve(g, k, I, J)
                if out.reconfigurable != (comp[a] == comp[b]):
                    bad += 1
                elif out and not verify(g, k, rule, out.sequence, J):
                    bad += 1
    return pairs, bad


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=8)
    ap.add_argument("--ks", type=int, nargs="+", default=[2, 3, 4])
    ap.add_argument("--shapes", nargs="+", default=["path", "cycle"], choices=["path", "cycle"])
    ap.add_argument("--rules", nargs="+", default=["tj", "ts", "tar"], choices=["tj", "ts", "tar"])
    args = ap.parse_args(argv)

    total_bad = 0
    print(f"{'shape':6} {'n':>3} {'k':>2} {'rule':>7} {'pairs':>9} {'bad':>5}")
    for shape in args.shapes:
        lo = 1 if shape == "path" else 3
        for n in range(lo, args.max_n + 1):
            for k in args.ks:
                rules = []
                for r in args.rules:
                    if r == "tar":
                        rules.extend(Rule.tar(u) for u in range(psi(shape, n, k), n + 1))
                    else:
                        rules.append(Rule.tj() if r == "tj" else Rule.ts())
                for rule in rules:
                    pairs, bad = sweep_one(shape, n, k, rule)
                    total_bad += bad
                    print(f"{shape:6} {n:>3} {k:>2} {str(rule):>7} {pairs:>9} {bad:>5}")
    print("all agree" if not total_bad else f"{total_bad} disagreements")
    return 1 if total_bad else 0


if __name__ == "__main__":
    sys.exit(main())
