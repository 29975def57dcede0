#!/usr/bin/env python3
"""Summarize the AND/OR gadget reconfiguration graphs against their orientation graphs.

    python3 scripts/gadgets.py --k 3 4
"""

import argparse

from kpvcr.oracle import oracle_min_cover_size
from kpvcr.reconfig import Rule
from kpvcr.reductions import build_gadget, gadget_reconf_graph, orientation_graph


def fmt(sig):
    return " ".join("in " if s is True else "out" if s is False else "?  " for s in sig)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", type=int, nargs="+", default=[3])
    args = ap.parse_args(argv)

    for k in args.k:
        for kind in ("and", "or"):
            gad = build_gadget(kind, k)
            budget = oracle_min_cover_size(gad.graph, k)
            tj = gadget_reconf_graph(gad, budget, Rule.tj())
            ts = gadget_reconf_graph(gad, budget, Rule.ts())
            nodes, edges = orientation_graph(kind)
            print(f"{kind.upper()} k={k}: {gad.graph.n} vertices, budget {budget}, "
                  f"{len(tj.states)} covers in {len(tj.classes)} classes")
            for sig, members in sorted(tj.classes.items(), key=lambda kv: str(kv[0])):
                conn = "connected" if tj.internally_connected[sig] else "SPLIT"
                print(f"  {fmt(sig)}  {len(members):>3} covers  {conn}")
            print(f"  TJ quotient edges {len(tj.edges)}, TS {len(ts.edges)}, "
                  f"orientation flips {len(edges)}; TJ matches flips: {tj.edges == edges and set(tj.nodes) == set(nodes)}")


if __name__ == "__main__":
    main()
