"""Satisfiability by completion-graph construction.

The reasoner builds a tree of labelled nodes from a root carrying the
goal concept. Definitions are fired lazily from the unfolding table when
their guarding literal enters a label; residual clauses are injected
into every node at creation. Disjunctions branch with chronological
backtracking; ancestor blocking guarantees termination. Rule application
is fully deterministic, so identical inputs give identical statistics.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

from .absorption import Absorption, clause_concept, definition_strata
from .concepts import (
    BOTTOM,
    And,
    Atom,
    Concept,
    Exists,
    Forall,
    Not,
    Or,
    complement,
    mk_and,
    nnf,
    subconcepts,
)
from .semantics import (
    FiniteInterpretation,
    LabeledStructure,
    repair_model_stratified,
)

BLOCKING_EQUALITY = "equality"
BLOCKING_SUBSET = "subset"

VERDICT_SAT = "sat"
VERDICT_UNSAT = "unsat"
VERDICT_RESOURCE = "resource-exhausted"


@dataclass(frozen=True)
class ReasonerConfig:
    max_nodes: int = 100_000
    max_branches: int = 1_000_000
    timeout_ms: int = 600_000
    blocking: str = BLOCKING_EQUALITY

    def __post_init__(self):
        assert self.max_nodes > 0 and self.max_branches > 0 and self.timeout_ms > 0
        assert self.blocking in (BLOCKING_EQUALITY, BLOCKING_SUBSET)


DEFAULT_CONFIG = ReasonerConfig()


@dataclass
class Stats:
    nodes: int = 0
    branches: int = 0
    clashes: int = 0
    blocked: int = 0
    unfold_firings: int = 0
    tg_insertions: int = 0

    def merge(self, other: "Stats") -> "Stats":
        return Stats(*(a + b for a, b in zip(
            (self.nodes, self.branches, self.clashes, self.blocked,
             self.unfold_firings, self.tg_insertions),
            (other.nodes, other.branches, other.clashes, other.blocked,
             other.unfold_firings, other.tg_insertions))))


@dataclass
class CompletionNode:
    id: int
    label: set
    parent: Optional[tuple] = None  # (parent id, Role from parent to here)
    exists_done: set = field(default_factory=set)
    blocked_by: Optional[int] = None

    def copy(self) -> "CompletionNode":
        return CompletionNode(self.id, set(self.label), self.parent,
                              set(self.exists_done), self.blocked_by)


@dataclass
class CompletionGraph:
    nodes: list

    def copy(self) -> "CompletionGraph":
        return CompletionGraph([nd.copy() for nd in self.nodes])


@dataclass(frozen=True)
class SatResult:
    verdict: str
    stats: Stats
    model: Optional[FiniteInterpretation] = None

    @property
    def is_sat(self) -> bool:
        return self.verdict == VERDICT_SAT

    @property
    def is_unsat(self) -> bool:
        return self.verdict == VERDICT_UNSAT

    @property
    def exhausted(self) -> bool:
        return self.verdict == VERDICT_RESOURCE


class _Clash(Exception):
    pass


class _Limit(Exception):
    pass


def _absorption_roles(a: Absorption):
    """All role expressions occurring in the absorption, inversion-aware."""
    inverted = False
    names: set = set()
    concepts = [c for rhs in a.tu.entries.values() for c in rhs]
    concepts += [clause_concept(cl) for cl in a.tg]
    for c in concepts:
        for s in subconcepts(c):
            if isinstance(s, (Exists, Forall)):
                names.add(s.role.name)
                inverted = inverted or s.role.inverted
    return names, inverted


def _has_inverse(c: Concept, a: Absorption) -> bool:
    if any(isinstance(s, (Exists, Forall)) and s.role.inverted
           for s in subconcepts(c)):
        return True
    return _absorption_roles(a)[1]


class _Search:
    def __init__(self, c: Concept, a: Absorption, cfg: ReasonerConfig):
        self.a = a
        self.cfg = cfg
        self.stats = Stats()
        self.deadline = time.monotonic() + cfg.timeout_ms / 1000.0
        self.tg = tuple(sorted((nnf(clause_concept(cl)) for cl in a.tg), key=str))
        self.goal = nnf(c)
        # backtracking frames: (snapshot, node id, remaining disjuncts)
        self.trail: list = []

    # -- label growth ---------------------------------------------------

    def _add(self, nd: CompletionNode, c: Concept) -> bool:
        """Add a concept to a label; True if it was new. Raises on clash."""
        if c in nd.label:
            return False
        if c == BOTTOM:
            raise _Clash
        if isinstance(c, Atom) and Not(c) in nd.label:
            raise _Clash
        if isinstance(c, Not) and c.arg in nd.label:
            raise _Clash
        nd.label.add(c)
        return True

    def _new_node(self, g: CompletionGraph, label, parent) -> CompletionNode:
        self.stats.nodes += 1
        if self.stats.nodes > self.cfg.max_nodes:
            raise _Limit
        nd = CompletionNode(len(g.nodes), set(), parent)
        g.nodes.append(nd)
        for c in label:
            self._add(nd, c)
        for c in self.tg:
            self.stats.tg_insertions += 1
            self._add(nd, c)
        return nd

    # -- deterministic rules -------------------------------------------

    def _saturate(self, g: CompletionGraph) -> None:
        """Apply conjunction, lazy unfolding and value restrictions to a
        fixpoint; raises on clash."""
        changed = True
        while changed:
            changed = False
            for nd in g.nodes:
                for c in sorted(nd.label, key=str):
                    if isinstance(c, And):
                        for arg in c.args:
                            changed |= self._add(nd, arg)
                    elif isinstance(c, (Atom, Not)):
                        key = (("pos", c.name) if isinstance(c, Atom)
                               else ("neg", c.arg.name))
                        rhs = self.a.tu.entries.get(key)
                        if rhs:
                            fired = False
                            for d in rhs:
                                fired |= self._add(nd, nnf(d))
                            if fired:
                                self.stats.unfold_firings += 1
                                changed = True
                    elif isinstance(c, Forall):
                        changed |= self._propagate(g, nd, c)

    def _propagate(self, g: CompletionGraph, nd: CompletionNode,
                   c: Forall) -> bool:
        """Push a value restriction's filler across matching edges, in
        both directions of each edge."""
        changed = False
        if nd.parent is not None:
            pid, role = nd.parent
            # the edge (parent, nd) carries `role`; seen from nd that is
            # the inverse direction
            if role.inverse() == c.role:
                changed |= self._add(g.nodes[pid], c.filler)
        for other in g.nodes:
            if other.parent is not None and other.parent[0] == nd.id:
                if other.parent[1] == c.role:
                    changed |= self._add(other, c.filler)
        return changed

    # -- blocking -------------------------------------------------------

    def _blocker(self, g: CompletionGraph, nd: CompletionNode) -> Optional[int]:
        anc = nd.parent
        while anc is not None:
            node = g.nodes[anc[0]]
            if self.cfg.blocking == BLOCKING_EQUALITY:
                if node.label == nd.label:
                    return node.id
            elif nd.label <= node.label:
                return node.id
            anc = node.parent
        return None

    # -- search ---------------------------------------------------------

    def _check_limits(self) -> None:
        if time.monotonic() > self.deadline:
            raise _Limit
        if self.stats.branches > self.cfg.max_branches:
            raise _Limit

    def _pick_or(self, g: CompletionGraph):
        for nd in g.nodes:
            for c in sorted(nd.label, key=str):
                if isinstance(c, Or) and not any(d in nd.label for d in c.args):
                    return nd, c
        return None

    def _pick_exists(self, g: CompletionGraph):
        for nd in g.nodes:
            pending = [c for c in nd.label
                       if isinstance(c, Exists) and c not in nd.exists_done]
            if not pending:
                continue
            blocker = self._blocker(g, nd)
            if blocker is not None:
                if nd.blocked_by is None:
                    self.stats.blocked += 1
                nd.blocked_by = blocker
                continue
            nd.blocked_by = None
            return nd, min(pending, key=str)
        return None

    def _backtrack(self, g: CompletionGraph) -> Optional[CompletionGraph]:
        self.stats.clashes += 1
        while self.trail:
            snapshot, node_id, alts = self.trail[-1]
            if not alts:
                self.trail.pop()
                continue
            d = alts.pop(0)
            if alts:
                g = snapshot.copy()
            else:
                g = snapshot
                self.trail.pop()
            try:
                self._add(g.nodes[node_id], d)
            except _Clash:
                self.stats.clashes += 1
                continue
            return g
        return None

    def run(self) -> tuple:
        g = CompletionGraph([])
        try:
            self._new_node(g, [self.goal], None)
        except _Clash:
            self.stats.clashes += 1
            return VERDICT_UNSAT, g
        while True:
            self._check_limits()
            try:
                self._saturate(g)
            except _Clash:
                g = self._backtrack(g)
                if g is None:
                    return VERDICT_UNSAT, g
                continue
            pick = self._pick_or(g)
            if pick is not None:
                nd, c = pick
                self.stats.branches += 1
                alts = list(c.args)
                first, rest = alts[0], alts[1:]
                snapshot = g.copy() if rest else None
                if rest:
                    self.trail.append((snapshot, nd.id, rest))
                try:
                    self._add(nd, first)
                except _Clash:
                    g = self._backtrack(g)
                    if g is None:
                        return VERDICT_UNSAT, g
                continue
            pick = self._pick_exists(g)
            if pick is not None:
                nd, c = pick
                nd.exists_done.add(c)
                try:
                    self._new_node(g, [nnf(c.filler)], (nd.id, c.role))
                except _Clash:
                    g = self._backtrack(g)
                    if g is None:
                        return VERDICT_UNSAT, g
                continue
            return VERDICT_SAT, g


def extract_model(g: CompletionGraph, a: Absorption,
                  has_inverse: bool) -> Optional[FiniteInterpretation]:
    """Fold a clash-free, fully expanded graph into a finite model.

    Blocked nodes (and their subtrees) are dropped; the edge into a
    blocked node is redirected to its blocker. This unravelling shortcut
    is only sound without inverse roles, so with inverse roles present
    a model is returned only when nothing is blocked.

    The surviving labelled structure is an unfolded witness, so lazily
    unfolded definitions may disagree with the raw atom labels on
    elements that never mention them; the extensions of defined atoms
    are therefore recomputed by model repair before returning.
    """
    if has_inverse and any(nd.blocked_by is not None for nd in g.nodes):
        return None
    # drop blocked nodes with their whole subtrees (ids are in creation
    # order, so parents precede children)
    dropped: set = set()
    for nd in g.nodes:
        pid = nd.parent[0] if nd.parent else None
        if nd.blocked_by is not None or pid in dropped:
            dropped.add(nd.id)
    survivors = [nd for nd in g.nodes if nd.id not in dropped]
    index = {nd.id: k for k, nd in enumerate(survivors)}

    def target(i: int) -> Optional[int]:
        nd = g.nodes[i]
        if nd.id in index:
            return index[nd.id]
        if nd.blocked_by is not None:
            return index.get(nd.blocked_by)
        return None

    roles: dict = {}
    for nd in g.nodes:
        if nd.parent is None or (nd.id in dropped and nd.blocked_by is None):
            continue
        pid, role = nd.parent
        src = index.get(pid)
        dst = target(nd.id)
        if src is None or dst is None:
            continue
        pair = (dst, src) if role.inverted else (src, dst)
        roles.setdefault(role.name, set()).add(pair)
    witness = LabeledStructure(
        len(survivors),
        {r: frozenset(v) for r, v in roles.items()},
        {index[nd.id]: frozenset(nd.label) for nd in survivors})
    return repair_model_stratified(witness, definition_strata(a))


def check_sat(c: Concept, a: Absorption,
              cfg: ReasonerConfig = DEFAULT_CONFIG) -> SatResult:
    """Decide satisfiability of ``c`` w.r.t. the absorbed terminology."""
    has_inverse = _has_inverse(c, a)
    if cfg.blocking == BLOCKING_SUBSET and has_inverse:
        raise ValueError("subset blocking requires an inverse-role-free input")
    search = _Search(c, a, cfg)
    try:
        verdict, g = search.run()
    except _Limit:
        return SatResult(VERDICT_RESOURCE, search.stats)
    if verdict != VERDICT_SAT:
        return SatResult(verdict, search.stats)
    # refresh blocking status on the final graph: only nodes that still
    # rely on a blocker for their unexpanded successors count as blocked
    for nd in g.nodes:
        pending = any(isinstance(x, Exists) and x not in nd.exists_done
                      for x in nd.label)
        nd.blocked_by = search._blocker(g, nd) if pending else None
    return SatResult(VERDICT_SAT, search.stats, extract_model(g, a, has_inverse))


def subsumes(c: Concept, d: Concept, a: Absorption,
             cfg: ReasonerConfig = DEFAULT_CONFIG) -> Optional[bool]:
    """True iff ``c`` subsumes ``d`` w.r.t. the absorbed terminology:
    ``d and not c`` must be unsatisfiable. None when resources ran out."""
    res = check_sat(mk_and([d, complement(c)]), a, cfg)
    if res.exhausted:
        return None
    return res.is_unsat
