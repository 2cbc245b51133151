"""Benchmark runner and bounded-oracle check suite.

``run_bench`` reproduces the qualitative experiments (classification
time against number of cyclical pairs, and against number of general
axioms) as plot-ready CSV rows. ``run_check_suite`` drives the
property suites that pit every optimised component against the
exhaustive finite-model oracle.
"""

from __future__ import annotations

import csv
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from . import semantics
from .absorption import absorb, reconstruct_axioms
from .classify import ClassificationTimeout, classify
from .concepts import (
    Atom,
    Concept,
    Eq,
    Exists,
    Forall,
    Not,
    Role,
    TBox,
    complement,
    concept_signature,
    mk_and,
    mk_or,
    nnf,
    syntactically_monotone,
    tbox,
)
from .generators import (
    gen_cyclic_pairs,
    gen_galen_like,
    random_concept,
    random_instance,
    random_signature,
)
from .semantics import (
    EnumerationBudgetError,
    LabeledStructure,
    eval_concept,
    monotone_bounded,
    repair_model_primitive,
    repair_model_stratified,
    sat_bruteforce,
    satisfies,
    stems_from,
)
from .tableau import ReasonerConfig, check_sat

CSV_HEADER = ("generator", "size", "mode", "rep", "wall_ms", "absorb_ms",
              "nodes", "branches", "tg_residual", "verdict")


class BenchError(RuntimeError):
    pass


@dataclass(frozen=True)
class BenchSpec:
    generator: str  # "cyclic" | "galen"
    sizes: tuple
    modes: tuple = ("basic", "enhanced")
    timeout_ms: int = 60_000
    reps: int = 1
    galen_defs: int = 30
    seed: int = 0

    def __post_init__(self):
        assert self.generator in ("cyclic", "galen")
        assert self.reps >= 1
        assert all(s >= 0 for s in self.sizes)


def _bench_tbox(spec: BenchSpec, size: int) -> TBox:
    if spec.generator == "cyclic":
        return gen_cyclic_pairs(size)
    return gen_galen_like(spec.galen_defs, size, spec.seed)


def _agreement_precheck(t: TBox, modes: Sequence[str]) -> None:
    """Verdicts of a few named concepts must agree across the requested
    modes before any timing row is emitted."""
    cfg = ReasonerConfig(max_nodes=2000, max_branches=20_000, timeout_ms=5000)
    names = sorted(t.signature.atoms)[:4]
    for name in names:
        verdicts = set()
        for mode in modes:
            res = check_sat(Atom(name), absorb(t, mode), cfg)
            if not res.exhausted:
                verdicts.add(res.verdict)
        if len(verdicts) > 1:
            raise BenchError(
                f"mode disagreement on {name}: {sorted(verdicts)}")


def run_bench(spec: BenchSpec, progress: Optional[Callable] = None) -> list:
    """Execute the sweep; one CSV row dict per (size, mode, repetition).

    Timed-out classifications are recorded as TIMEOUT rows and the sweep
    continues with the next configuration.
    """
    rows = []
    for size in spec.sizes:
        t = _bench_tbox(spec, size)
        _agreement_precheck(t, spec.modes)
        for mode in spec.modes:
            t0 = time.perf_counter()
            a = absorb(t, mode)
            absorb_ms = (time.perf_counter() - t0) * 1000.0
            for rep in range(spec.reps):
                row = {
                    "generator": spec.generator,
                    "size": size,
                    "mode": mode,
                    "rep": rep,
                    "absorb_ms": round(absorb_ms, 3),
                    "tg_residual": len(a.tg),
                }
                t0 = time.perf_counter()
                try:
                    result = classify(t, mode, absorption=a,
                                      overall_timeout_ms=spec.timeout_ms)
                except ClassificationTimeout:
                    row.update(wall_ms="TIMEOUT", nodes="", branches="",
                               verdict="timeout")
                else:
                    wall = (time.perf_counter() - t0) * 1000.0
                    row.update(wall_ms=round(wall, 3),
                               nodes=result.stats.nodes,
                               branches=result.stats.branches,
                               verdict="ok")
                rows.append(row)
                if progress is not None:
                    progress(row)
    return rows


def write_csv(rows: Sequence[dict], path: str) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=CSV_HEADER)
        w.writeheader()
        w.writerows(rows)


# ----------------------------------------------------------------------
# bounded-oracle check suite


@dataclass(frozen=True)
class CheckBudget:
    instances: int = 60
    max_domain: int = 3
    seed: int = 0


@dataclass
class PropertyResult:
    name: str
    instances: int = 0
    failures: list = field(default_factory=list)
    truncated: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures


@dataclass
class CheckReport:
    properties: list

    @property
    def ok(self) -> bool:
        return all(p.ok for p in self.properties)

    def format(self) -> str:
        lines = []
        for p in self.properties:
            state = "pass" if p.ok else "FAIL"
            extra = f", {p.truncated} truncated" if p.truncated else ""
            lines.append(f"{state}: {p.name} ({p.instances} instances{extra})")
            for f in p.failures[:5]:
                lines.append(f"    {f}")
        lines.append("OK" if self.ok else "VIOLATIONS FOUND")
        return "\n".join(lines) + "\n"


def check_absorption_equivalence(n: int, seed: int = 0, max_domain: int = 3,
                                 absorber: Callable = absorb) -> PropertyResult:
    """Reconstructing any absorption must give a terminology that agrees
    with the original on every bounded interpretation, in every mode."""
    from .generators import random_tbox

    res = PropertyResult("absorption reconstruct equivalence")
    rng = random.Random(f"equiv-{seed}")
    for i in range(n):
        atoms, roles = random_signature(rng)
        t = random_tbox(rng, atoms, roles)
        sig = t.signature
        res.instances += 1
        for mode in ("none", "basic", "enhanced"):
            try:
                t2 = reconstruct_axioms(absorber(t, mode))
                hit = semantics.tbox_disagreement(
                    t2, t, sig | t2.signature, max_domain)
            except EnumerationBudgetError:
                res.truncated += 1
                continue
            if hit is not None:
                res.failures.append(
                    f"instance {i} mode {mode}: disagreement at n={hit.n}")
    return res


def check_mode_agreement(n: int, seed: int = 0, max_domain: int = 3,
                         ) -> PropertyResult:
    """Verdict agreement across modes, model soundness against the
    oracle, and bounded completeness against brute-force search."""
    res = PropertyResult("mode agreement + oracle soundness/completeness")
    cfg = ReasonerConfig(max_nodes=4000, max_branches=60_000, timeout_ms=2500)
    for i in range(n):
        c, t = random_instance(seed * 1_000_003 + i)
        res.instances += 1
        verdicts = {}
        for mode in ("none", "basic", "enhanced"):
            r = check_sat(c, absorb(t, mode), cfg)
            if r.exhausted:
                res.truncated += 1
                continue
            verdicts[mode] = r
            if r.model is not None:
                if not satisfies(r.model, t):
                    res.failures.append(
                        f"instance {i} mode {mode}: extracted model violates t")
                if not eval_concept(r.model, c):
                    res.failures.append(
                        f"instance {i} mode {mode}: model misses the concept")
        kinds = {r.verdict for r in verdicts.values()}
        if len(kinds) > 1:
            res.failures.append(f"instance {i}: verdicts differ {sorted(kinds)}")
            continue
        try:
            found = sat_bruteforce(c, t, max_domain)
        except EnumerationBudgetError:
            res.truncated += 1
            continue
        if found is not None and any(r.is_unsat for r in verdicts.values()):
            res.failures.append(
                f"instance {i}: brute force found a model but got Unsat")
    return res


def check_monotonicity(n: int, seed: int = 0, max_domain: int = 3,
                       ) -> PropertyResult:
    """Syntactic monotonicity must imply bounded semantic monotonicity."""
    res = PropertyResult("syntactic implies semantic monotonicity")
    rng = random.Random(f"mono-{seed}")
    for i in range(n):
        atoms, roles = random_signature(rng)
        c = random_concept(rng, atoms, roles, depth=3)
        a = rng.choice(list(atoms))
        res.instances += 1
        if not syntactically_monotone(c, a):
            continue
        try:
            ok = monotone_bounded(c, a, concept_signature(c), max_domain)
        except EnumerationBudgetError:
            res.truncated += 1
            continue
        if not ok:
            res.failures.append(f"instance {i}: {c} not monotone in {a}")
    return res


# -- witness construction for the repair theorems ----------------------


def _random_edges(rng: random.Random, n: int, roles: Sequence[str]) -> dict:
    return {r: frozenset((i, j) for i in range(n) for j in range(n)
                         if rng.random() < 0.4)
            for r in roles}


def _pin_labels(i: semantics.FiniteInterpretation, atoms: Sequence[str]) -> dict:
    labels = {}
    for x in range(i.n):
        lab = set()
        for a in atoms:
            lab.add(Atom(a) if x in i.atoms.get(a, ()) else Not(Atom(a)))
        labels[x] = lab
    return labels


def _random_primitive_defs(rng: random.Random) -> tuple:
    """An acyclic definition list (in uses-order) over a small base."""
    base = ["P1", "P2"]
    roles = ["R"]
    pool = list(base)
    defs = []
    for k in range(rng.randint(1, 3)):
        name = f"D{k + 1}"
        rhs = random_concept(rng, pool, roles, depth=2)
        defs.append(Eq(Atom(name), rhs))
        pool.append(name)
    return defs, base, roles


def _monotone_concept(rng: random.Random, own: Sequence[str],
                      others: Sequence[str], roles: Sequence[str]) -> Concept:
    """A concept using ``own`` atoms only positively."""
    role = Role(rng.choice(list(roles)))
    rec = Atom(rng.choice(list(own)))
    guard = random_concept(rng, others, roles, depth=1)
    wrap = Exists(role, rec) if rng.random() < 0.5 else Forall(role, rec)
    if rng.random() < 0.5:
        return mk_or([guard, wrap])
    return mk_or([guard, mk_and([rec if rng.random() < 0.3 else guard, wrap])])


def _random_strata(rng: random.Random) -> tuple:
    base = ["P1", "P2"]
    roles = ["R"]
    strata = []
    occurring = list(base)
    for s in range(rng.randint(1, 2)):
        names = [f"M{s + 1}"] if rng.random() < 0.7 else [f"M{s + 1}", f"M{s + 1}b"]
        stratum = [Eq(Atom(a), _monotone_concept(rng, names, occurring, roles))
                   for a in names]
        strata.append(stratum)
        occurring.extend(names)
    return strata, base, roles


def _witness_from_model(i: semantics.FiniteInterpretation, defs,
                        base: Sequence[str]) -> LabeledStructure:
    """Canonical-style witness of a model: every atom pinned everywhere,
    triggered definition literals accompanied by their right-hand sides."""
    defined = [ax.lhs.name for ax in defs]
    labels = _pin_labels(i, list(base) + defined)
    # triggered definition literals carry the exact right-hand side the
    # unfolding table maps them to
    for ax in defs:
        ext = i.atoms.get(ax.lhs.name, frozenset())
        for x in range(i.n):
            labels[x].add(nnf(ax.rhs) if x in ext else complement(ax.rhs))
    return LabeledStructure(i.n, dict(i.roles),
                            {x: frozenset(v) for x, v in labels.items()})


def _base_structure(rng: random.Random, base: Sequence[str],
                    roles: Sequence[str]) -> LabeledStructure:
    """A witness pinning only undefined atoms; defined atoms stay free."""
    n = rng.randint(1, 3)
    edges = _random_edges(rng, n, roles)
    atoms = {a: frozenset(x for x in range(n) if rng.random() < 0.5)
             for a in base}
    i = semantics.FiniteInterpretation(n, atoms, edges)
    return LabeledStructure(n, edges, {
        x: frozenset(lab) for x, lab in _pin_labels(i, base).items()})


def check_repair(n_primitive: int, n_stratified: int, seed: int = 0,
                 ) -> PropertyResult:
    """Model repair for acyclic and stratified definition lists: the
    repaired interpretation stems from the witness and satisfies the
    definitions."""
    res = PropertyResult("model repair (acyclic + stratified)")
    rng = random.Random(f"repair-{seed}")
    for i in range(n_primitive):
        defs, base, roles = _random_primitive_defs(rng)
        w = _base_structure(rng, base, roles)
        res.instances += 1
        model = repair_model_primitive(w, defs)
        t = tbox(defs)
        if not stems_from(model, w):
            res.failures.append(f"primitive {i}: repair does not stem")
        if not satisfies(model, t):
            res.failures.append(f"primitive {i}: repair violates definitions")
        # second flavour: the fully pinned canonical witness of the model
        w2 = _witness_from_model(model, defs, base)
        model2 = repair_model_primitive(w2, defs)
        if not (stems_from(model2, w2) and satisfies(model2, t)):
            res.failures.append(f"primitive {i}: pinned repair failed")
    for i in range(n_stratified):
        strata, base, roles = _random_strata(rng)
        all_defs = [ax for s in strata for ax in s]
        w = _base_structure(rng, base, roles)
        res.instances += 1
        model = repair_model_stratified(w, strata)
        t = tbox(all_defs)
        if not stems_from(model, w):
            res.failures.append(f"stratified {i}: repair does not stem")
        if not satisfies(model, t):
            res.failures.append(f"stratified {i}: repair violates definitions")
        w2 = _witness_from_model(model, all_defs, base)
        model2 = repair_model_stratified(w2, strata)
        if not (stems_from(model2, w2) and satisfies(model2, t)):
            res.failures.append(f"stratified {i}: pinned repair failed")
    return res


def run_check_suite(budget: CheckBudget = CheckBudget(),
                    absorber: Callable = absorb) -> CheckReport:
    n = budget.instances
    return CheckReport([
        check_absorption_equivalence(n, budget.seed, budget.max_domain,
                                     absorber),
        check_mode_agreement(n, budget.seed, budget.max_domain),
        check_monotonicity(n, budget.seed, budget.max_domain),
        check_repair(max(1, n // 3), max(1, n // 3), budget.seed),
    ])
