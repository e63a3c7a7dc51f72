"""Command-line front end: instance files, generators, solve/verify/bench.

Instance file format (ASCII, LF line endings):

    # optional comment lines start with '#'
    n W
    w p [u]     (n item lines; u defaults to 1)

Exit codes: 0 ok, 1 usage or parse failure, 2 verification mismatch,
3 oracle resource budget exceeded.

Generation is deterministic per seed via ``random.Random`` (CPython's
Mersenne Twister, stable across platforms and versions).
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .model import (BoundedInstance, BoundedItem, ValidationError,
                    canonical_sort)
from .oracles import OracleBudgetError, bellman_bounded, brute_force_01
from .reduction import expand_to_01, solve_bounded


class ParseError(ValueError):
    """Malformed instance file; message carries the 1-based line number."""


@dataclass(frozen=True)
class GenSpec:
    """Parameters of one random instance."""

    seed: int
    n: int
    w_max: int
    p_max: int
    u_max: int = 1
    capacity_fraction: Optional[float] = None  # of total weight, in (0, 1]
    capacity: Optional[int] = None             # explicit W, overrides fraction


def parse_instance(text: str) -> BoundedInstance:
    """Parse the instance file format; raises ParseError with line numbers."""
    rows: List[Tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rows.append((lineno, line))
    if not rows:
        raise ParseError("line 1: missing 'n W' header")
    head_no, head = rows[0]
    fields = head.split()
    if len(fields) != 2:
        raise ParseError(f"line {head_no}: header must be 'n W', got {head!r}")
    try:
        n, capacity = int(fields[0]), int(fields[1])
    except ValueError:
        raise ParseError(f"line {head_no}: header values must be integers")
    if n < 0 or capacity < 0:
        raise ParseError(f"line {head_no}: n and W must be non-negative")
    body = rows[1:]
    if len(body) != n:
        raise ParseError(
            f"line {head_no}: header declares {n} items but file has {len(body)}")
    items = []
    for lineno, line in body:
        fields = line.split()
        if len(fields) not in (2, 3):
            raise ParseError(f"line {lineno}: expected 'w p' or 'w p u'")
        try:
            vals = [int(f) for f in fields]
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer field in {line!r}")
        w, p = vals[0], vals[1]
        u = vals[2] if len(vals) == 3 else 1
        if w < 1 or p < 1 or u < 1:
            raise ParseError(f"line {lineno}: weight, profit, multiplicity "
                             f"must all be positive")
        items.append(BoundedItem(w, p, u))
    return BoundedInstance(tuple(items), capacity)


def emit_instance(instance: BoundedInstance) -> str:
    """Canonical text form; parse(emit(x)) == x."""
    lines = [f"{instance.n} {instance.capacity}"]
    for it in instance.items:
        if it.multiplicity == 1:
            lines.append(f"{it.weight} {it.profit}")
        else:
            lines.append(f"{it.weight} {it.profit} {it.multiplicity}")
    return "\n".join(lines) + "\n"


def gen(spec: GenSpec) -> str:
    """Deterministic random instance text for a GenSpec."""
    if spec.n < 0 or spec.w_max < 1 or spec.p_max < 1 or spec.u_max < 1:
        raise ValueError("GenSpec needs n >= 0 and positive bounds")
    if spec.capacity_fraction is not None and not (
            0 < spec.capacity_fraction <= 1):
        raise ValueError("capacity fraction must lie in (0, 1]")
    rng = random.Random(spec.seed)
    items = [(rng.randint(1, spec.w_max), rng.randint(1, spec.p_max),
              rng.randint(1, spec.u_max)) for _ in range(spec.n)]
    if spec.capacity is not None:
        capacity = spec.capacity
    else:
        fraction = spec.capacity_fraction if spec.capacity_fraction is not None else 0.5
        total = sum(w * u for w, _, u in items)
        capacity = int(total * fraction)
    inst = BoundedInstance(tuple(BoundedItem(w, p, u) for w, p, u in items),
                           capacity)
    return emit_instance(inst)


def _solve_with_algo(instance: BoundedInstance, algo: str,
                     stats: Optional[dict] = None,
                     delta_constant: Optional[int] = None) -> int:
    if algo in ("auto", "proximity"):
        return solve_bounded(instance, stats=stats, delta_constant=delta_constant)
    if algo == "bellman":
        return bellman_bounded(instance)
    if algo == "brute":
        expanded = expand_to_01(canonical_sort(instance))
        return brute_force_01(expanded)
    raise ValueError(f"unknown algorithm {algo!r}")


def _cmd_gen(args) -> int:
    spec = GenSpec(seed=args.seed, n=args.n, w_max=args.w_max, p_max=args.p_max,
                   u_max=args.u_max, capacity_fraction=args.fraction,
                   capacity=args.capacity)
    sys.stdout.write(gen(spec))
    return 0


def _cmd_solve(args) -> int:
    try:
        with open(args.file, "r", encoding="ascii") as fh:
            instance = parse_instance(fh.read())
    except OSError as exc:
        print(f"error: cannot read {args.file}: {exc}", file=sys.stderr)
        return 1
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    stats: dict = {}
    if args.delta_constant is not None and args.algo in ("auto", "proximity"):
        print("warning: delta-constant override makes the solver heuristic; "
              "cross-check results with 'verify'", file=sys.stderr)
    try:
        t0 = time.perf_counter()
        value = _solve_with_algo(instance, args.algo, stats=stats,
                                 delta_constant=args.delta_constant)
        elapsed = time.perf_counter() - t0
    except OracleBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    print(f"OPT {value}")
    if args.stats:
        print(f"stats: algo={args.algo} time={elapsed:.6f}s "
              f"k={stats.get('k')} sum_delta={stats.get('sum_delta')}",
              file=sys.stderr)
        phases = stats.get("phase_seconds") or []
        if phases:
            txt = " ".join(f"{s:.6f}" for s in phases)
            print(f"stats: phase_seconds {txt}", file=sys.stderr)
    return 0


def _cmd_verify(args) -> int:
    rng = random.Random(args.seed)
    for trial in range(args.trials):
        spec = GenSpec(seed=rng.randrange(1 << 62),
                       n=rng.randint(1, args.n_max),
                       w_max=rng.randint(1, args.w_max),
                       p_max=args.p_max, u_max=args.u_max,
                       capacity_fraction=rng.choice((0.25, 0.5, 0.9, 1.0)))
        text = gen(spec)
        instance = parse_instance(text)
        try:
            fast = solve_bounded(instance, delta_constant=args.delta_constant)
            slow = bellman_bounded(instance)
        except OracleBudgetError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 3
        if fast != slow:
            path = f"counterexample_{spec.seed}.txt"
            with open(path, "w", encoding="ascii") as fh:
                fh.write(text)
            print(f"MISMATCH trial={trial} seed={spec.seed} "
                  f"pipeline={fast} oracle={slow} file={path}")
            return 2
    print(f"OK {args.trials} trials")
    return 0


def _cmd_bench(args) -> int:
    print("seed,n,w_max,algo,micros,value")
    rng = random.Random(args.seed)
    for n in args.n:
        for w_max in args.w_max:
            seed = rng.randrange(1 << 62)
            spec = GenSpec(seed=seed, n=n, w_max=w_max, p_max=args.p_max,
                           u_max=args.u_max, capacity_fraction=0.5)
            instance = parse_instance(gen(spec))
            for algo in args.algos:
                try:
                    t0 = time.perf_counter_ns()
                    value = _solve_with_algo(instance, algo)
                    micros = (time.perf_counter_ns() - t0) // 1000
                except OracleBudgetError:
                    print(f"note: {algo} over budget for n={n} w_max={w_max}",
                          file=sys.stderr)
                    continue
                print(f"{seed},{n},{w_max},{algo},{micros},{value}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="proxknap",
        description="Exact 0-1 and Bounded Knapsack solver "
                    "(proximity partitioning pipeline)")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a random instance file")
    p_gen.add_argument("--seed", type=int, required=True)
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--w-max", type=int, required=True)
    p_gen.add_argument("--p-max", type=int, default=100)
    p_gen.add_argument("--u-max", type=int, default=1)
    p_gen.add_argument("--fraction", type=float, default=None,
                       help="capacity as a fraction of the total weight")
    p_gen.add_argument("--capacity", type=int, default=None,
                       help="explicit capacity (overrides --fraction)")
    p_gen.set_defaults(func=_cmd_gen)

    p_solve = sub.add_parser("solve", help="solve an instance file")
    p_solve.add_argument("file")
    p_solve.add_argument("--algo", choices=("auto", "proximity", "bellman", "brute"),
                         default="auto")
    p_solve.add_argument("--stats", action="store_true",
                         help="print part count, delta sum and phase timings "
                              "to stderr")
    p_solve.add_argument("--delta-constant", type=int, default=None,
                         help="experimental override of the proximity constant "
                              "(heuristic mode)")
    p_solve.set_defaults(func=_cmd_solve)

    p_verify = sub.add_parser("verify",
                              help="differential-test the pipeline against "
                                   "the Bellman oracle")
    p_verify.add_argument("--trials", type=int, default=100)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--n-max", type=int, default=30)
    p_verify.add_argument("--w-max", type=int, default=30)
    p_verify.add_argument("--p-max", type=int, default=100)
    p_verify.add_argument("--u-max", type=int, default=20)
    p_verify.add_argument("--delta-constant", type=int, default=None)
    p_verify.set_defaults(func=_cmd_verify)

    p_bench = sub.add_parser("bench", help="CSV timing grid on stdout")
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--n", type=int, nargs="+", required=True)
    p_bench.add_argument("--w-max", type=int, nargs="+", required=True)
    p_bench.add_argument("--p-max", type=int, default=1000)
    p_bench.add_argument("--u-max", type=int, default=1)
    p_bench.add_argument("--algos", nargs="+",
                         default=["auto", "bellman"],
                         choices=("auto", "proximity", "bellman", "brute"))
    p_bench.set_defaults(func=_cmd_bench)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return args.func(args)
    except (ParseError, ValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
