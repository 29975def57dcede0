"""Command-line front end: kpvcr {solve,verify,oracle,generate,bench}."""

from __future__ import annotations

import argparse
import sys
import time

from . import oracle as orc
from .cycle import detour_family, solve_cycle, solve_cycle_tar
from .graph import ShapeKind, build_cycle, build_path, classify
from .instance import Instance, ParseError, emit_graph, emit_instance, parse_graph, parse_instance
from .path import solve_path_tar, solve_path_tj, solve_path_ts
from .reconfig import InvalidCoverError, ReconfSequence, Reason, RuleKind, SolveOutcome, verify
from .reductions import build_gadget, pendant_transform
from .tree import solve_tree_tar, solve_tree_tj

EXIT_OK, EXIT_USAGE, EXIT_UNSUPPORTED, EXIT_BUDGET, EXIT_INVALID = 0, 1, 2, 3, 4


class Unsupported(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def solve_instance(inst: Instance) -> SolveOutcome:
    """Dispatch to the polynomial solver for the graph's shape."""
    g, k, I, J, rule = inst.graph, inst.k, inst.I, inst.J, inst.rule
    kind = classify(g).kind
    if kind is ShapeKind.PATH:
        if rule.kind is RuleKind.TJ:
            return solve_path_tj(g, k, I, J)
        if rule.kind is RuleKind.TS:
            return solve_path_ts(g, k, I, J)
        return solve_path_tar(g, k, I, J, rule.cap)
    if kind is ShapeKind.CYCLE:
        if rule.kind is RuleKind.TAR:
            return solve_cycle_tar(g, k, I, J, rule.cap)
        return solve_cycle(g, k, I, J, rule)
    if kind is ShapeKind.TREE:
        if rule.kind is RuleKind.TJ:
            return solve_tree_tj(g, k, I, J)
        if rule.kind is RuleKind.TAR:
            return solve_tree_tar(g, k, I, J, rule.cap)
        raise Unsupported("unsupported: open problem; use --oracle")
    raise Unsupported("unsupported: no polynomial solver for general graphs; use --oracle")


def oracle_outcome(inst: Instance, budget=None, jobs: int = 1) -> SolveOutcome:
    if inst.I == inst.J:
        return SolveOutcome.yes(ReconfSequence(inst.I), trivial=True)
    if inst.rule.kind is not RuleKind.TAR and len(inst.I) != len(inst.J):
        return SolveOutcome.no(Reason.SIZE_MISMATCH)
    seq = orc.oracle_sequence(inst.graph, inst.k, inst.rule, inst.I, inst.J, budget, jobs)
    return SolveOutcome.yes(seq) if seq is not None else SolveOutcome.no(Reason.UNREACHABLE)


def format_outcome(out: SolveOutcome) -> str:
    if not out.reconfigurable:
        return f"NO {out.reason.value}\n"
    head = "YES (trivial: I = J)" if out.trivial else "YES"
    return head + "\n" + out.sequence.dumps()


def cmd_solve(args) -> int:
    inst = parse_instance(_read(args.instance))
    if args.oracle:
        out = oracle_outcome(inst, args.budget, args.jobs)
    else:
        try:
            out = solve_instance(inst)
        except Unsupported as exc:
            print(exc, file=sys.stderr)
            return EXIT_UNSUPPORTED
    sys.stdout.write(format_outcome(out))
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = parse_instance(_read(args.instance))
    text = _read(args.sequence)
    lines = text.splitlines()
    if lines and lines[0].startswith("YES"):
        text = "\n".join(lines[1:])
    try:
        seq = ReconfSequence.loads(text)
    except ValueError as exc:
        raise ParseError(0, 0, f"sequence file: {exc}") from None
    if seq.start != inst.I:
        print("FAIL step 0: sequence does not start at I", file=sys.stderr)
        return EXIT_INVALID
    res = verify(inst.graph, inst.k, inst.rule, seq, inst.J)
    if res:
        print(f"OK {seq.length} steps")
        return EXIT_OK
    print(f"FAIL step {res.step}: {res.message}", file=sys.stderr)
    return EXIT_INVALID


def cmd_oracle(args) -> int:
    inst = parse_instance(_read(args.instance))
    ans = orc.oracle_reachable(inst.graph, inst.k, inst.rule, inst.I, inst.J, args.budget, args.jobs)
    if ans.reachable:
        print(f"reachable, shortest={ans.shortest}" if args.shortest else "reachable")
    else:
        print("unreachable")
    if args.export:
        size = None if inst.rule.kind is RuleKind.TAR else len(inst.I)
        rg = orc.build_reconf_graph(inst.graph, inst.k, inst.rule, size=size,
                                    budget=args.budget, jobs=args.jobs)
        with open(args.export, "w") as fh:
            rg.export(fh)
    return EXIT_OK


def cmd_generate(args) -> int:
    if args.kind in ("detour", "lemma11"):
        text = emit_instance(detour_family(args.k))
    elif args.kind in ("gadget-and", "gadget-or"):
        gad = build_gadget(args.kind.split("-")[1], args.k)
        text = emit_graph(gad.graph, args.k)
    else:
        g, _ = parse_graph(_read(args.input))
        text = emit_graph(pendant_transform(g, args.k).result, args.k)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _bench_instance(shape: str, n: int, k: int):
    # a minimum cover against its mirror image: every token has to move
    if shape == "path":
        g = build_path(n)
        I = frozenset(range(k - 1, n, k))
        J = frozenset(n - 1 - v for v in I)
    else:
        n -= n % k == 0  # keep clear of frozen minimum covers
        g = build_cycle(n)
        I = frozenset(range(0, n, k))
        J = frozenset((v + k // 2) % n for v in I)
    return g, I, J


def cmd_bench(args) -> int:
    solvers = {
        "path-tj": ("path", solve_path_tj),
        "path-ts": ("path", solve_path_ts),
        "cycle-tj": ("cycle", lambda g, k, I, J, check: solve_cycle(g, k, I, J, "tj", check)),
    }
    print(f"{'solver':10} {'n':>8} {'seconds':>10} {'length':>8}")
    for name in args.solvers:
        shape, fn = solvers[name]
        for n in args.sizes:
            g, I, J = _bench_instance(shape, n, args.k)
            t = time.perf_counter()
            out = fn(g, args.k, I, J, check=False)
            dt = time.perf_counter() - t
            print(f"{name:10} {n:>8} {dt:>10.4f} {out.sequence.length:>8}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kpvcr", description="k-path vertex cover reconfiguration")
    sub = p.add_subparsers(dest="cmd", required=True)

    def oracle_flags(sp):
        sp.add_argument("--budget", type=int, default=None,
                        help=f"state budget (default ${orc.BUDGET_ENV} or {orc.DEFAULT_BUDGET})")
        sp.add_argument("--jobs", type=int, default=1, help="worker processes for graph construction")

    sp = sub.add_parser("solve", help="decide an instance and print a witness sequence")
    sp.add_argument("instance", help="instance file, '-' for stdin")
    sp.add_argument("--oracle", action="store_true", help="use the exhaustive oracle")
    oracle_flags(sp)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("verify", help="check a sequence file against an instance")
    sp.add_argument("instance")
    sp.add_argument("sequence")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("oracle", help="reachability by exhaustive search")
    sp.add_argument("instance")
    sp.add_argument("--shortest", action="store_true", help="also print the shortest length")
    sp.add_argument("--export", metavar="PATH", help="write the reconfiguration graph edge list")
    oracle_flags(sp)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("generate", help="emit generated instances or graphs")
    sp.add_argument("kind", choices=["detour", "lemma11", "gadget-and", "gadget-or", "pendant"])
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--input", default="-", help="base graph for 'pendant' (default stdin)")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("bench", help="time the linear and quadratic solvers")
    sp.add_argument("--sizes", type=int, nargs="+", default=[1000, 10000, 100000])
    sp.add_argument("--k", type=int, default=3)
    sp.add_argument("--solvers", nargs="+", default=["path-tj", "cycle-tj", "path-ts"],
                    choices=["path-tj", "path-ts", "cycle-tj"])
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, InvalidCoverError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except orc.BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
