"""Command-line front end.

    sbrsat solve FILE [--strategy S] [--k N] [--seed N] [--schedule minisat|glucose]
                      [--timeout SEC] [--verify] [--drat FILE]
    sbrsat bench DIR --strategies LIST --timeout SEC --out results.csv [--jobs W]
    sbrsat gen DIR [--n 100] [--m 430] [--sat 500] [--unsat 500] [--seed 1]

Every option can also come from an ``SBRSAT_<OPTION>`` environment variable
(e.g. ``SBRSAT_STRATEGY=sbr``); explicit flags win.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from .bench import ModelCheckError, RunConfig, generate_corpus, run_batch, run_single
from .clausedb import SCHEDULES
from .dimacs import DimacsError
from .prng import DEFAULT_SEED
from .solver import SAT, UNSAT
from .strategies import CLI_NAMES, StrategyConfig

log = logging.getLogger("sbrsat")


def _env(name: str, default=None, type=str):
    value = os.environ.get(f"SBRSAT_{name.upper()}")
    if value is None:
        return default
    return type(value)


def _flag(value: str) -> bool:
    return value.lower() in ("1", "true", "yes", "on")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sbrsat", description=__doc__.split("\n\n")[0])
    parser.add_argument("-q", "--quiet", action="store_true", help="only print the result line")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one DIMACS file ('-' for stdin)")
    p.add_argument("file")
    p.add_argument("--strategy", choices=sorted(CLI_NAMES), default=_env("strategy", "sbr"))
    p.add_argument("--k", type=int, default=_env("k", None, int))
    p.add_argument("--seed", type=int, default=_env("seed", DEFAULT_SEED, int))
    p.add_argument("--schedule", choices=SCHEDULES, default=_env("schedule"))
    p.add_argument("--timeout", type=float, default=_env("timeout", None, float), help="CPU seconds")
    p.add_argument("--verify", action="store_true", default=_env("verify", False, _flag))
    p.add_argument("--drat", metavar="FILE", default=_env("drat"))
    p.add_argument("--no-minimize", action="store_true", default=_env("no_minimize", False, _flag))

    b = sub.add_parser("bench", help="run a directory of .cnf files under several configurations")
    b.add_argument("directory")
    b.add_argument(
        "--strategies",
        default=_env("strategies", "size,rand,fifo,sbr,sized,sizekd,reld,lbd,lbdd,glucose-sizekd,glucose-sbr"),
        help="comma-separated name[:k][@schedule] entries",
    )
    b.add_argument("--seed", type=int, default=_env("seed", DEFAULT_SEED, int))
    b.add_argument("--schedule", choices=SCHEDULES, default=_env("schedule"))
    b.add_argument("--timeout", type=float, default=_env("timeout", 60.0, float), help="CPU seconds per run")
    b.add_argument("--out", default=_env("out", "-"))
    b.add_argument("--jobs", type=int, default=_env("jobs", 1, int))

    g = sub.add_parser("gen", help="write a uf/uuf style random 3-CNF corpus")
    g.add_argument("directory")
    g.add_argument("--n", type=int, default=100)
    g.add_argument("--m", type=int, default=430)
    g.add_argument("--sat", type=int, default=500)
    g.add_argument("--unsat", type=int, default=500)
    g.add_argument("--seed", type=int, default=1)
    return parser


def _solve(args) -> int:
    config = RunConfig(
        StrategyConfig.parse(args.strategy if args.k is None else f"{args.strategy}:{args.k}", args.seed),
        args.schedule,
        args.timeout,
        args.verify,
        not args.no_minimize,
    )
    try:
        report = run_single(args.file, config, drat=args.drat)
    except (OSError, DimacsError) as exc:
        print(f"sbrsat: error: {exc}", file=sys.stderr)
        return 1
    except ModelCheckError as exc:
        print(f"sbrsat: error: {exc}", file=sys.stderr)
        return 2

    if not args.quiet:
        print(f"c config {config.label} seed={config.strategy.seed}")
        for name in ("conflicts", "decisions", "propagations", "restarts", "reductions", "clauses_deleted", "peak_learned"):
            print(f"c {name:<16} {getattr(report, name)}")
        print(f"c cpu_time         {report.cpu_time:.3f}")
    if report.answer == SAT:
        print("s SATISFIABLE")
        if not args.quiet:
            print("v " + " ".join(map(str, report.model)) + " 0")
    elif report.answer == UNSAT:
        print("s UNSATISFIABLE")
    else:
        print("s UNKNOWN")
    return report.exit_code


def _bench(args) -> int:
    try:
        configs = [RunConfig.parse(s.strip(), args.seed, args.schedule) for s in args.strategies.split(",") if s.strip()]
    except ValueError as exc:
        print(f"sbrsat: error: {exc}", file=sys.stderr)
        return 1
    text = run_batch(args.directory, configs, args.timeout, args.jobs)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.ERROR if args.quiet else logging.WARNING, format="c %(levelname)s %(message)s")
    if args.command == "solve":
        return _solve(args)
    if args.command == "bench":
        return _bench(args)
    paths = generate_corpus(args.directory, args.n, args.m, args.sat, args.unsat, args.seed)
    print(f"wrote {len(paths)} instances to {args.directory}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
