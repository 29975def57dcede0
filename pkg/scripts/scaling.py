#!/usr/bin/env python3
"""Time the path and cycle solvers on growing instances and print growth ratios.

    python3 scripts/scaling.py --sizes 1000 10000 100000 --repeats 3
"""

import argparse
import gc
import time

from kpvcr.cli import _bench_instance
from kpvcr.cycle import solve_cycle
from kpvcr.path import solve_path_tj, solve_path_ts

SOLVERS = {
    "path-tj": ("path", solve_path_tj),
    "path-ts": ("path", solve_path_ts),
    "cycle-tj": ("cycle", lambda g, k, I, J, check: solve_cycle(g, k, I, J, "tj", check)),
}


def best_of(fn, repeats):
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


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[1000, 10000, 100000])
    ap.add_argument("--k", type=int, default=3)
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--solvers", nargs="+", default=list(SOLVERS), choices=list(SOLVERS))
    args = ap.parse_args(argv)

    print(f"{'solver':9} {'n':>8} {'best s':>10} {'ratio':>7}")
    for name in args.solvers:
        shape, fn = SOLVERS[name]
        prev = None
        for n in args.sizes:
            g, I, J = _bench_instance(shape, n, args.k)
            t = best_of(lambda: fn(g, args.k, I, J, check=False), args.repeats)
            ratio = f"{t / prev:7.1f}" if prev else f"{'-':>7}"
            print(f"{name:9} {n:>8} {t:>10.4f} {ratio}")
            prev = t


if __name__ == "__main__":
    main()
