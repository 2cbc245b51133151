"""Compare the compiled and pure-Python finite-model kernels.

Times the three enumeration scans (model search, terminology
disagreement, monotonicity) over seeded random inputs on both backends
and prints one row per scan with the speedup factor.

Usage: python benchmarks/kernel_bench.py [--trials N] [--max-domain N]
"""

from __future__ import annotations

import argparse
import random
import time

from dlreason import kernel
from dlreason._kernel_pure import AX_EQ, AX_SUB
from dlreason.concepts import Sub
from dlreason.generators import random_concept, random_tbox


def _compile(c, atoms, roles):
    return kernel.compile_concept(c, {a: i for i, a in enumerate(atoms)},
                                  {r: i for i, r in enumerate(roles)})


def _axiom_progs(t, atoms, roles):
    return [(AX_SUB if isinstance(ax, Sub) else AX_EQ,
             _compile(ax.lhs, atoms, roles), _compile(ax.rhs, atoms, roles))
            for ax in t]


def build_workload(trials: int, seed: int = 0):
    rng = random.Random(seed)
    atoms, roles = ["A", "B"], ["R"]
    work = []
    for _ in range(trials):
        t1 = random_tbox(rng, atoms, roles, max_axioms=4, depth=2)
        t2 = random_tbox(rng, atoms, roles, max_axioms=4, depth=2)
        goal = _compile(random_concept(rng, atoms, roles, 2), atoms, roles)
        work.append((_axiom_progs(t1, atoms, roles),
                     _axiom_progs(t2, atoms, roles), goal))
    return work


def time_backend(backend, work, max_domain: int):
    t0 = time.perf_counter()
    for axioms, _, goal in work:
        backend.find_model(axioms, goal, 2, 1, max_domain)
    t_model = time.perf_counter() - t0
    t0 = time.perf_counter()
    for axioms, other, _ in work:
        backend.find_disagreement(axioms, other, 2, 1, max_domain)
    t_disagree = time.perf_counter() - t0
    t0 = time.perf_counter()
    for _, _, goal in work:
        backend.find_nonmonotone(goal, 0, 2, 1, max_domain)
    t_mono = time.perf_counter() - t0
    return {"find_model": t_model, "find_disagreement": t_disagree,
            "find_nonmonotone": t_mono}


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--trials", type=int, default=300)
    p.add_argument("--max-domain", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()

    work = build_workload(args.trials, args.seed)
    pure = time_backend(kernel.get_backend("pure"), work, args.max_domain)
    try:
        compiled_backend = kernel.get_backend("compiled")
    except ImportError:
        print("compiled backend unavailable; pure timings only")
        for name, t in pure.items():
            print(f"{name:20s} pure={t * 1000:8.1f} ms")
        return 0
    compiled = time_backend(compiled_backend, work, args.max_domain)

    print(f"{args.trials} trials, max domain {args.max_domain}, "
          f"active backend: {kernel.backend_name()}")
    print(f"{'scan':20s} {'pure':>10s} {'compiled':>10s} {'speedup':>8s}")
    for name in pure:
        ratio = pure[name] / compiled[name] if compiled[name] else float("inf")
        print(f"{name:20s} {pure[name] * 1000:8.1f}ms "
              f"{compiled[name] * 1000:8.1f}ms {ratio:7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
