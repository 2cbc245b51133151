"""Command-line interface.

Verbs: ``sat`` (satisfiability of a concept w.r.t. a terminology file),
``classify`` (print the subsumption hierarchy), ``absorb`` (show the
absorption result), ``bench`` (CSV timing sweeps) and ``check`` (the
bounded-oracle property suite).
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional, Sequence

from .absorption import MODES, absorb, format_absorption
from .bench import BenchSpec, CheckBudget, CSV_HEADER, run_bench, run_check_suite, write_csv
from .classify import classify, format_hierarchy
from .syntax import parse_concept, parse_tbox
from .tableau import ReasonerConfig, check_sat

EXIT_SAT = 0
EXIT_UNSAT = 1
EXIT_EXHAUSTED = 2


def _load_tbox(path: str):
    with open(path) as fh:
        return parse_tbox(fh.read())


def _reasoner_config(args) -> ReasonerConfig:
    return ReasonerConfig(max_nodes=args.max_nodes,
                          timeout_ms=args.timeout_ms)


def _seed(default: int) -> int:
    env = os.environ.get("DLREASON_SEED")
    return int(env) if env else default


def _cmd_sat(args) -> int:
    t = _load_tbox(args.tbox)
    c = parse_concept(args.concept)
    res = check_sat(c, absorb(t, args.absorption), _reasoner_config(args))
    print(res.verdict)
    if args.stats:
        s = res.stats
        print("nodes,branches,clashes,blocked,unfold_firings,tg_insertions")
        print(f"{s.nodes},{s.branches},{s.clashes},{s.blocked},"
              f"{s.unfold_firings},{s.tg_insertions}")
    return {"sat": EXIT_SAT, "unsat": EXIT_UNSAT}.get(res.verdict, EXIT_EXHAUSTED)


def _cmd_classify(args) -> int:
    t = _load_tbox(args.tbox)
    result = classify(t, args.absorption, _reasoner_config(args))
    text = format_hierarchy(result.hierarchy)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_absorb(args) -> int:
    t = _load_tbox(args.tbox)
    a = absorb(t, args.mode)
    if args.print:
        sys.stdout.write(format_absorption(a))
    else:
        stats = a.stats()
        print(",".join(f"{k}={v}" for k, v in sorted(stats.items())))
    return 0


def _cmd_bench(args) -> int:
    spec = BenchSpec(
        generator=args.generator,
        sizes=tuple(int(s) for s in args.sizes.split(",")),
        modes=tuple(args.modes.split(",")),
        timeout_ms=args.timeout_ms,
        reps=args.reps,
        galen_defs=args.galen_defs,
        seed=_seed(args.seed),
    )
    rows = run_bench(spec, progress=lambda row: print(
        ",".join(str(row.get(k, "")) for k in CSV_HEADER), flush=True))
    if args.csv:
        write_csv(rows, args.csv)
    return 0


def _cmd_check(args) -> int:
    budget = CheckBudget(instances=args.instances,
                         max_domain=args.max_domain, seed=_seed(args.seed))
    report = run_check_suite(budget)
    sys.stdout.write(report.format())
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="dlreason",
        description="ALCI satisfiability and classification with TBox "
                    "absorption and lazy unfolding")
    sub = p.add_subparsers(dest="verb", required=True)

    sat = sub.add_parser("sat", help="decide concept satisfiability")
    sat.add_argument("--tbox", required=True)
    sat.add_argument("--concept", required=True)
    sat.add_argument("--absorption", choices=MODES, default="basic")
    sat.add_argument("--max-nodes", type=int, default=100_000)
    sat.add_argument("--timeout", dest="timeout_ms", type=int, default=600_000)
    sat.add_argument("--stats", action="store_true")
    sat.set_defaults(func=_cmd_sat)

    cls = sub.add_parser("classify", help="print the subsumption hierarchy")
    cls.add_argument("--tbox", required=True)
    cls.add_argument("--absorption", choices=MODES, default="basic")
    cls.add_argument("--max-nodes", type=int, default=100_000)
    cls.add_argument("--timeout", dest="timeout_ms", type=int, default=600_000)
    cls.add_argument("--out")
    cls.set_defaults(func=_cmd_classify)

    ab = sub.add_parser("absorb", help="show the absorption of a terminology")
    ab.add_argument("--tbox", required=True)
    ab.add_argument("--mode", choices=MODES, default="basic")
    ab.add_argument("--print", action="store_true")
    ab.set_defaults(func=_cmd_absorb)

    bench = sub.add_parser("bench", help="run a timing sweep, emit CSV")
    bench.add_argument("--generator", choices=("cyclic", "galen"),
                       required=True)
    bench.add_argument("--sizes", required=True,
                       help="comma-separated sweep sizes, e.g. 2,4,6")
    bench.add_argument("--modes", default="basic,enhanced")
    bench.add_argument("--timeout-ms", type=int, default=60_000)
    bench.add_argument("--reps", type=int, default=1)
    bench.add_argument("--galen-defs", type=int, default=30)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--csv")
    bench.set_defaults(func=_cmd_bench)

    chk = sub.add_parser("check", help="run the bounded-oracle check suite")
    chk.add_argument("--instances", type=int, default=60)
    chk.add_argument("--max-domain", type=int, default=3)
    chk.add_argument("--seed", type=int, default=0)
    chk.set_defaults(func=_cmd_check)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
