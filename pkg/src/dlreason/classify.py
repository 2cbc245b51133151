"""Subsumption hierarchy over the named concepts of a terminology.

The strategy is deliberately plain: one coherence test per name, then
pairwise subsumption tests with transitivity pruning. Per-test cost is
what the benchmarks vary, so the classification loop itself stays free
of heuristics. ``top`` and ``bottom`` appear as virtual hierarchy
members, never as signature atoms.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .absorption import Absorption, absorb
from .concepts import Atom, Not, TBox, mk_and
from .tableau import DEFAULT_CONFIG, ReasonerConfig, Stats, check_sat

TOP_NAME = "top"
BOTTOM_NAME = "bottom"


class ClassificationTimeout(Exception):
    """The overall classification deadline expired."""


@dataclass(frozen=True)
class Hierarchy:
    """Quotient DAG of the subsumption preorder.

    ``classes`` are the equivalence classes (always including a top and
    a bottom class); ``direct_edges`` is the transitive reduction, as
    pairs of class indices (subsumee, subsumer). ``unknown`` lists name
    pairs whose test exhausted resources.
    """

    classes: tuple
    direct_edges: frozenset
    unknown: tuple = ()

    def class_of(self, name: str) -> frozenset:
        for cls in self.classes:
            if name in cls:
                return cls
        raise KeyError(name)

    def superclasses(self, name: str) -> list:
        idx = next(i for i, c in enumerate(self.classes) if name in c)
        return [self.classes[j] for (i, j) in sorted(self.direct_edges)
                if i == idx]


@dataclass
class ClassificationResult:
    hierarchy: Hierarchy
    stats: Stats = field(default_factory=Stats)
    tests: int = 0
    absorption: Optional[Absorption] = None


def _closure_reaches(succ: dict, x: str, y: str) -> bool:
    seen = {x}
    stack = [x]
    while stack:
        v = stack.pop()
        if v == y:
            return True
        for w in succ.get(v, ()):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return False


def subsumption_relation(names: Sequence[str], a: Absorption,
                         cfg: ReasonerConfig = DEFAULT_CONFIG,
                         prune: bool = True,
                         deadline: Optional[float] = None) -> tuple:
    """Decide ``x <= y`` for all ordered name pairs.

    Returns ``(rel, unsat, unknown, stats, tests)`` where ``rel`` maps a
    name to the set of names subsuming it. With ``prune`` enabled a test
    already implied by two confirmed subsumptions is skipped; the result
    is the same either way.
    """
    stats = Stats()
    tests = 0
    unknown: list = []
    unsat: set = set()

    def budget_cfg() -> ReasonerConfig:
        if deadline is None:
            return cfg
        remaining = deadline - time.monotonic()
        if remaining <= 0:
            raise ClassificationTimeout
        return ReasonerConfig(cfg.max_nodes, cfg.max_branches,
                              max(1, int(remaining * 1000)), cfg.blocking)

    for x in names:
        res = check_sat(Atom(x), a, budget_cfg())
        tests += 1
        stats = stats.merge(res.stats)
        if res.exhausted:
            unknown.append((x, BOTTOM_NAME))
        elif res.is_unsat:
            unsat.add(x)

    rel = {x: {x} for x in names}
    for x in unsat:
        rel[x] |= set(names)  # an incoherent name is below everything
    for x in names:
        for y in names:
            if x == y or y in rel[x]:
                continue
            if y in unsat:
                continue  # only an incoherent x can sit below one
            if prune and _closure_reaches(rel, x, y):
                rel[x].add(y)
                continue
            res = check_sat(mk_and([Atom(x), Not(Atom(y))]), a, budget_cfg())
            tests += 1
            stats = stats.merge(res.stats)
            if res.exhausted:
                unknown.append((x, y))
            elif res.is_unsat:
                rel[x].add(y)
    return rel, unsat, tuple(unknown), stats, tests


def _quotient(names: Sequence[str], rel: dict, unsat: set) -> Hierarchy:
    classes: list = []
    placed: set = set()
    bottom_members = {BOTTOM_NAME} | unsat
    for x in names:
        if x in placed or x in unsat:
            continue
        members = {y for y in names
                   if y not in unsat and y in rel[x] and x in rel[y]}
        placed |= members
        classes.append(frozenset(members))
    classes.sort(key=lambda c: sorted(c))
    classes = [frozenset(bottom_members)] + classes + [frozenset({TOP_NAME})]
    bot, top = 0, len(classes) - 1

    def below(i: int, j: int) -> bool:
        if i == j:
            return False
        if i == bot or j == top:
            return True
        if j == bot or i == top:
            return False
        x = sorted(classes[i])[0]
        y = sorted(classes[j])[0]
        return y in rel[x]

    edges = set()
    k = len(classes)
    for i in range(k):
        for j in range(k):
            if below(i, j) and not any(
                    below(i, m) and below(m, j) for m in range(k)):
                edges.add((i, j))
    return Hierarchy(tuple(classes), frozenset(edges))


def classify(t: TBox, mode: str = "basic",
             cfg: ReasonerConfig = DEFAULT_CONFIG,
             overall_timeout_ms: Optional[int] = None,
             absorption: Optional[Absorption] = None) -> ClassificationResult:
    """Absorb once, test subsumptions, and assemble the quotient DAG.

    Raises :class:`ClassificationTimeout` when the overall deadline (if
    any) expires; per-test resource exhaustion instead lands the pair in
    ``hierarchy.unknown``.
    """
    a = absorption if absorption is not None else absorb(t, mode)
    deadline = (time.monotonic() + overall_timeout_ms / 1000.0
                if overall_timeout_ms is not None else None)
    names = sorted(t.signature.atoms)
    rel, unsat, unknown, stats, tests = subsumption_relation(
        names, a, cfg, deadline=deadline)
    h = _quotient(names, rel, unsat)
    h = Hierarchy(h.classes, h.direct_edges, unknown)
    return ClassificationResult(h, stats, tests, a)


def format_hierarchy(h: Hierarchy) -> str:
    """One line per class, bottom-up topological order, stable."""
    succ = {i: sorted(j for (i2, j) in h.direct_edges if i2 == i)
            for i in range(len(h.classes))}
    indeg = {i: 0 for i in range(len(h.classes))}
    for i in succ:
        for j in succ[i]:
            indeg[j] += 1
    order: list = []
    ready = sorted((i for i in indeg if indeg[i] == 0),
                   key=lambda i: sorted(h.classes[i]))
    while ready:
        i = ready.pop(0)
        order.append(i)
        for j in succ[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                ready.append(j)
        ready.sort(key=lambda i: sorted(h.classes[i]))

    def fmt(cls: frozenset) -> str:
        return "{" + " ".join(sorted(cls)) + "}"

    lines = []
    for i in order:
        supers = " ".join(fmt(h.classes[j]) for j in succ[i]) or "-"
        lines.append(f"{fmt(h.classes[i])} <= {supers}")
    for (x, y) in h.unknown:
        lines.append(f"? {x} <= {y}")
    return "\n".join(lines) + "\n"
