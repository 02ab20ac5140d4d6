"""Command-line front end.

Subcommands: ``gen`` (synthetic instances), ``solve`` (saddle-point bound +
rounding), ``baseline`` (combinatorial maximizers), ``check`` (property
suites).  Exit codes: 0 ok, 2 usage, 3 bad input, 4 capacity.  Set
``SUBMAX_LOG=info`` or ``debug`` for progress logging on stderr.
"""

from __future__ import annotations

import argparse
import dataclasses
import logging
import os
import sys
import time

import numpy as np

from . import io as sio
from .baselines import brute_force_max, double_greedy, local_search
from .core import CapacityError, DomainError, set_of
from .extensions import DifferenceInstance, solve_cardinality, solve_difference
from .instances import gen_instance
from .properties import SUITES, run_suites
from .solver import SolverConfig, solve

log = logging.getLogger("submax")


@dataclasses.dataclass
class ExperimentRecord:
    """One solver or baseline execution, for structured logging."""
    family: str
    n: int
    seed: int
    algo: str
    config: dict
    value: float
    subset_hex: str
    trace_path: str
    wall_s: float

    def __post_init__(self):
        if not np.isfinite(self.value):
            raise DomainError("experiment record with non-finite value")


def _setup_logging():
    level = os.environ.get("SUBMAX_LOG", "off").strip().lower()
    if level not in ("info", "debug"):
        log.addHandler(logging.NullHandler())
        return
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    log.addHandler(handler)
    log.setLevel(logging.INFO if level == "info" else logging.DEBUG)


def _fmt_set(mask):
    items = set_of(mask)
    return "{" + ", ".join(str(i) for i in items) + "}"


def build_parser():
    top = argparse.ArgumentParser(
        prog="submax",
        description="Tree and junction-tree upper bounds for submodular maximization.")
    sub = top.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a synthetic cut instance")
    g.add_argument("--family", required=True, choices=("tree", "grid", "random"))
    g.add_argument("--n", type=int, help="node count (tree, random)")
    g.add_argument("--rows", type=int, help="grid rows")
    g.add_argument("--cols", type=int, help="grid cols")
    g.add_argument("--p", type=float, default=0.5, help="edge probability (random)")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output", help="output path (default: derived name)")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", help="run the saddle-point bound on an instance")
    s.add_argument("instance", help="instance file")
    s.add_argument("--treewidth", type=int, default=1)
    s.add_argument("--max-outer", type=int, default=50)
    s.add_argument("--inner-steps", type=int, default=5000)
    s.add_argument("--tol", type=float, default=1e-6)
    s.add_argument("--theta", type=float, default=0.5)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--budget", type=int, default=None,
                   help="cardinality cap on the rounded set")
    s.add_argument("--trace", help="write per-iteration CSV here")
    s.set_defaults(func=cmd_solve)

    b = sub.add_parser("baseline", help="run a combinatorial baseline")
    b.add_argument("instance", help="instance file")
    b.add_argument("--algo", required=True,
                   choices=("brute", "dg-det", "dg-rand", "ls"))
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--runs", type=int, default=1,
                   help="repetitions for randomized algorithms")
    b.add_argument("--epsilon", type=float, default=0.01,
                   help="local search slack")
    b.set_defaults(func=cmd_baseline)

    c = sub.add_parser("check", help="run randomized property suites")
    c.add_argument("--props", default="all",
                   help="comma list (p1..p8) or 'all'")
    c.add_argument("--n", type=int, default=6, help="ground-set size, at most 8")
    c.add_argument("--trials", type=int, default=50)
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=cmd_check)

    return top


def cmd_gen(args, parser):
    fam = args.family
    if fam == "grid":
        if args.rows is None or args.cols is None:
            parser.error("--family grid requires --rows and --cols")
        params = {"rows": args.rows, "cols": args.cols}
        stem = f"grid_{args.rows}x{args.cols}_seed{args.seed}"
    elif fam == "tree":
        if args.n is None:
            parser.error("--family tree requires --n")
        params = {"n": args.n}
        stem = f"tree_n{args.n}_seed{args.seed}"
    else:
        if args.n is None:
            parser.error("--family random requires --n")
        params = {"n": args.n, "p": args.p}
        stem = f"random_n{args.n}_seed{args.seed}"
    inst = gen_instance(fam, params, seed=args.seed)
    path = args.output or (stem + ".json")
    sio.write_instance(inst, path)
    print(f"{path}: n={inst.n} edges={len(inst.edges)}")
    return 0


def _load(path):
    inst = sio.read_instance(path)
    log.info("loaded %s (n=%d)", path, inst.n)
    return inst


def cmd_solve(args, parser):
    inst = _load(args.instance)
    cfg = SolverConfig(treewidth=args.treewidth, max_outer=args.max_outer,
                       inner_steps=args.inner_steps, tol=args.tol,
                       theta=args.theta, seed=args.seed, budget=args.budget)
    t0 = time.perf_counter()
    if isinstance(inst, DifferenceInstance):
        if args.budget is not None:
            raise DomainError("cardinality budget is not supported for "
                              "difference instances")
        dual, best_set, state = solve_difference(inst, cfg)
        family = "difference"
    elif args.budget is not None:
        dual, best_set, state = solve_cardinality(inst, args.budget, cfg)
        family = type(inst).__name__
    else:
        dual, best_set, state = solve(inst, cfg)
        family = type(inst).__name__
    wall = time.perf_counter() - t0

    rec = ExperimentRecord(family=family, n=inst.n, seed=args.seed,
                           algo=f"saddle-k{cfg.treewidth}",
                           config=dataclasses.asdict(cfg),
                           value=state.best_primal, subset_hex=hex(best_set),
                           trace_path=args.trace or "", wall_s=wall)
    log.debug("record: %s", rec)

    print(f"dual_bound {state.dual_bound!r}")
    print(f"best_set {_fmt_set(best_set)} value {state.best_primal!r}")
    print(f"gap {state.dual_bound - state.best_primal!r}")
    print(f"iterations {state.outer_iters} stop {state.stop_reason}")
    if args.trace:
        sio.write_trace(state.trace, args.trace)
        print(f"trace {args.trace}")
    return 0


def cmd_baseline(args, parser):
    inst = _load(args.instance)
    if args.runs < 1:
        parser.error("--runs must be at least 1")
    t0 = time.perf_counter()
    if args.algo == "brute":
        val, best = brute_force_max(inst)
        print(f"brute {val!r} set {_fmt_set(best)}")
    elif args.algo == "dg-det":
        val, best = double_greedy(inst, mode="deterministic")
        print(f"dg-det {val!r} set {_fmt_set(best)}")
    elif args.algo == "ls":
        val, best = local_search(inst, epsilon=args.epsilon, seed=args.seed)
        print(f"ls {val!r} set {_fmt_set(best)}")
    else:
        vals = np.empty(args.runs, dtype=np.float64)
        for r in range(args.runs):
            vals[r], _ = double_greedy(inst, mode="randomized",
                                       seed=args.seed + r)
        mean = float(vals.mean())
        sd = float(vals.std(ddof=0))
        print(f"dg-rand {mean!r} +- {sd!r} over {args.runs} runs")
        val = mean
    log.info("baseline %s done in %.3fs", args.algo, time.perf_counter() - t0)
    if not np.isfinite(val):
        raise DomainError("baseline produced a non-finite value")
    return 0


def cmd_check(args, parser):
    if args.n < 2 or args.n > 8:
        parser.error("--n must be between 2 and 8")
    if args.props.strip().lower() == "all":
        names = list(SUITES)
    else:
        names = [p.strip().lower() for p in args.props.split(",") if p.strip()]
        unknown = [p for p in names if p not in SUITES]
        if unknown:
            parser.error(f"unknown properties: {', '.join(unknown)}")
    results = run_suites(names, n=args.n, trials=args.trials, seed=args.seed)
    failed = False
    for res in results:
        print(res.line())
        if not res.ok:
            failed = True
            for msg in res.failures:
                print(f"  {msg}")
    return 1 if failed else 0


def main(argv=None):
    _setup_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args, parser)
    except SystemExit as exc:  # argparse usage errors
        code = exc.code
        return int(code) if code is not None else 0
    except sio.ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def console_main():
    sys.exit(main())


if __name__ == "__main__":
    console_main()
