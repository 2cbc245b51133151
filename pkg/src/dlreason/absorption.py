"""Rewrite a terminology into a lazily-unfoldable part and a residual
general part.

Phase 1 distributes axioms into an acyclic (or, in enhanced mode,
stratified) definition set, a set of atomic inclusions, and a residual
set. Phase 2 tries to turn each residual axiom, viewed as a clause, into
a further atomic inclusion. The result keeps full provenance so that the
original terminology can be reconstructed and compared against the
rewrite by the bounded-model oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .concepts import (
    BOTTOM,
    Atom,
    Axiom,
    Concept,
    Eq,
    Not,
    Or,
    Sub,
    TBox,
    complement,
    concept_atoms,
    mk_or,
    nnf,
    tbox,
)

MODE_NONE = "none"
MODE_BASIC = "basic"
MODE_ENHANCED = "enhanced"
MODES = (MODE_NONE, MODE_BASIC, MODE_ENHANCED)

DEFAULT_CLAUSE_FUEL = 10_000

DISP_TPRIM = "Tprim"
DISP_TINC = "Tinc"
DISP_ABSORBED = "AbsorbedIntoTinc"
DISP_RESIDUAL = "ResidualTg"
DISP_SPLIT = "SplitThenProcessed"


@dataclass(frozen=True)
class Clause:
    """A universal axiom ``top <= disjunct-1 or ... or disjunct-k``.

    Disjuncts are a non-empty set of NNF concepts; an unsatisfiable
    clause is represented as ``{bottom}``.
    """

    disjuncts: frozenset

    def __post_init__(self):
        assert self.disjuncts

    def sorted_disjuncts(self) -> tuple:
        return tuple(sorted(self.disjuncts, key=str))


def make_clause(parts: Iterable[Concept]) -> Clause:
    """Normalise into clause form: NNF every part, flatten top-level
    disjunctions, drop ``bottom``."""
    flat: set = set()
    for p in parts:
        p = nnf(p)
        for d in (p.args if isinstance(p, Or) else (p,)):
            if d != BOTTOM:
                flat.add(d)
    return Clause(frozenset(flat) if flat else frozenset({BOTTOM}))


def clause_concept(cl: Clause) -> Concept:
    """The clause's disjunction as a single concept, deterministically
    ordered. This exact concept is what gets injected into node labels."""
    return mk_or(cl.sorted_disjuncts())


def axiom_clauses(ax: Axiom) -> list:
    """The clause encoding(s) of an axiom: one per implication direction."""
    out = [make_clause([Not(ax.lhs), ax.rhs])]
    if isinstance(ax, Eq):
        out.append(make_clause([Not(ax.rhs), ax.lhs]))
    return out


@dataclass(frozen=True)
class UnfoldTable:
    """Literal-indexed unfolding entries.

    Keys are ``("pos", name)`` or ``("neg", name)``; values are the
    right-hand sides fired conjunctively when the literal appears.
    Definitional atoms carry exactly one defining concept ``D`` housed
    as ``pos -> (D,)`` and ``neg -> (complement(D),)``.
    """

    entries: dict = field(default_factory=dict)
    origin: dict = field(default_factory=dict)

    def rhs(self, polarity: str, name: str) -> tuple:
        return self.entries.get((polarity, name), ())


@dataclass(frozen=True)
class LogEntry:
    axiom: Axiom
    disposition: str
    detail: str = ""


@dataclass(frozen=True)
class Absorption:
    tu: UnfoldTable
    tg: tuple
    strata: Optional[tuple] = None
    log: tuple = ()

    def stats(self) -> dict:
        disjunctions = sum(
            1
            for rhs_list in self.tu.entries.values()
            for d in rhs_list
            if isinstance(nnf(d), Or)
        )
        return {
            "tg_residual": len(self.tg),
            "tu_entries": len(self.tu.entries),
            "tu_disjunctive_rhs": disjunctions,
        }


EMPTY_ABSORPTION = Absorption(UnfoldTable({}, {}), ())


def _definition_map(defs: Sequence[Eq]) -> Optional[dict]:
    out: dict = {}
    for ax in defs:
        if not isinstance(ax, Eq) or not isinstance(ax.lhs, Atom):
            return None
        if ax.lhs.name in out:
            return None
        out[ax.lhs.name] = ax.rhs
    return out


def _uses_edges(def_map: dict) -> dict:
    return {a: concept_atoms(d) & set(def_map) for a, d in def_map.items()}


def is_primitive(defs: Sequence[Eq]) -> bool:
    """Atomic-lhs equalities, each atom defined once, acyclic uses
    relation (a self-use counts as a cycle)."""
    def_map = _definition_map(defs)
    if def_map is None:
        return False
    edges = _uses_edges(def_map)
    state: dict = {}  # 1 = on stack, 2 = done

    def dfs(a: str) -> bool:
        state[a] = 1
        for b in edges[a]:
            s = state.get(b)
            if s == 1 or (s is None and not dfs(b)):
                return False
        state[a] = 2
        return True

    return all(state.get(a) == 2 or dfs(a) for a in def_map)


def _sccs(edges: dict) -> list:
    """Tarjan strongly connected components, emitted dependencies-first."""
    index: dict = {}
    low: dict = {}
    on_stack: set = set()
    stack: list = []
    out: list = []
    counter = [0]

    def strongconnect(v: str) -> None:
        index[v] = low[v] = counter[0]
        counter[0] += 1
        stack.append(v)
        on_stack.add(v)
        for w_ in sorted(edges[v]):
            if w_ not in index:
                strongconnect(w_)
                low[v] = min(low[v], low[w_])
            elif w_ in on_stack:
                low[v] = min(low[v], index[w_])
        if low[v] == index[v]:
            comp = []
            while True:
                w_ = stack.pop()
                on_stack.discard(w_)
                comp.append(w_)
                if w_ == v:
                    break
            out.append(sorted(comp))

    for v in sorted(edges):
        if v not in index:
            strongconnect(v)
    return out


def stratify(defs: Sequence[Eq]) -> Optional[list]:
    """Arrange atomic definitions into strata, dependencies first.

    Each stratum is one strongly connected component of the uses
    relation; it is accepted only if every member's definition is
    syntactically monotone in every atom the stratum defines. Returns
    None when no such arrangement exists. Acyclic inputs always
    stratify.
    """
    from .concepts import syntactically_monotone

    def_map = _definition_map(defs)
    if def_map is None:
        return None
    edges = _uses_edges(def_map)
    strata = []
    for comp in _sccs(edges):
        cyclic = len(comp) > 1 or comp[0] in edges[comp[0]]
        if cyclic:
            for a in comp:
                for b in comp:
                    if not syntactically_monotone(def_map[a], b):
                        return None
        strata.append([Eq(Atom(a), def_map[a]) for a in comp])
    return strata


@dataclass
class _Distribution:
    tprim: list = field(default_factory=list)
    tinc: list = field(default_factory=list)
    residual: list = field(default_factory=list)  # (Sub axiom, origin index)
    dispositions: dict = field(default_factory=dict)  # origin index -> disposition


def distribute(t: TBox, mode: str) -> _Distribution:
    """Phase 1: route axioms in terminology order.

    Atomic inclusions whose atom is undefined in the definition set go
    to the inclusion list; atomic equalities are accepted as definitions
    while the definition set stays acyclic (basic) or stratified
    (enhanced); everything else is split into residual inclusions.
    """
    if mode not in (MODE_BASIC, MODE_ENHANCED):
        raise ValueError(f"distribute expects basic or enhanced mode, got {mode!r}")
    accept = is_primitive if mode == MODE_BASIC else (
        lambda defs: stratify(defs) is not None)
    d = _Distribution()
    prim_defined: set = set()
    inc_defined: set = set()
    for idx, ax in enumerate(t):
        if isinstance(ax, Sub) and isinstance(ax.lhs, Atom):
            if ax.lhs.name not in prim_defined:
                d.tinc.append(ax)
                inc_defined.add(ax.lhs.name)
                d.dispositions[idx] = DISP_TINC
            else:
                d.residual.append((ax, idx))
                d.dispositions[idx] = DISP_RESIDUAL
        elif isinstance(ax, Eq) and isinstance(ax.lhs, Atom):
            name = ax.lhs.name
            if (name not in prim_defined and name not in inc_defined
                    and accept(d.tprim + [ax])):
                d.tprim.append(ax)
                prim_defined.add(name)
                d.dispositions[idx] = DISP_TPRIM
            else:
                d.residual.append((Sub(ax.lhs, ax.rhs), idx))
                d.residual.append((Sub(ax.rhs, ax.lhs), idx))
                d.dispositions[idx] = DISP_SPLIT
        elif isinstance(ax, Sub):
            d.residual.append((ax, idx))
            d.dispositions[idx] = DISP_RESIDUAL
        else:
            d.residual.append((Sub(ax.lhs, ax.rhs), idx))
            d.residual.append((Sub(ax.rhs, ax.lhs), idx))
            d.dispositions[idx] = DISP_SPLIT
    return d


@dataclass(frozen=True)
class Absorbed:
    atom: str
    inclusion: Sub


@dataclass(frozen=True)
class Failed:
    clause: Clause
    fuel_exhausted: bool = False


def absorb_clause(g: Clause, tprim: Sequence[Eq], tinc: Sequence[Sub],
                  fuel: int = DEFAULT_CLAUSE_FUEL):
    """Phase 2 on one clause.

    Repeatedly: absorb on a negated atom undefined in the definition
    set (lexicographically least candidate); otherwise unfold a defined
    literal through its definition and renormalise. Returns
    :class:`Absorbed` or :class:`Failed`. ``tinc`` is accepted for
    interface symmetry; absorption only consults the definition set.
    """
    del tinc
    def_map = _definition_map(tprim)
    if def_map is None:
        raise ValueError("definition set is not atomic-lhs with unique atoms")
    steps = 0
    while True:
        candidates = sorted(
            d.arg.name for d in g.disjuncts
            if isinstance(d, Not) and isinstance(d.arg, Atom)
            and d.arg.name not in def_map)
        if candidates:
            name = candidates[0]
            rest = g.disjuncts - {Not(Atom(name))}
            rhs = mk_or(sorted(rest, key=str))
            return Absorbed(name, Sub(Atom(name), rhs))
        target = None
        for d in sorted(g.disjuncts, key=str):
            if isinstance(d, Atom) and d.name in def_map:
                target = (d, nnf(def_map[d.name]))
                break
            if (isinstance(d, Not) and isinstance(d.arg, Atom)
                    and d.arg.name in def_map):
                target = (d, complement(def_map[d.arg.name]))
                break
        if target is None:
            return Failed(g)
        steps += 1
        if steps > fuel:
            return Failed(g, fuel_exhausted=True)
        g = make_clause((g.disjuncts - {target[0]}) | {target[1]})


def _build_tu(tprim: Sequence[Eq], tinc: Sequence[Sub]) -> UnfoldTable:
    entries: dict = {}
    origin: dict = {}
    # right-hand sides are stored in NNF so that node labels, the
    # unfolding condition, and reconstruction all see the same objects
    for ax in tprim:
        name = ax.lhs.name
        entries[("pos", name)] = (nnf(ax.rhs),)
        entries[("neg", name)] = (complement(ax.rhs),)
        origin[name] = "definitional"
    for ax in tinc:
        name = ax.lhs.name
        key = ("pos", name)
        entries[key] = entries.get(key, ()) + (nnf(ax.rhs),)
        origin.setdefault(name, "inclusion")
    return UnfoldTable(entries, origin)


def definition_strata(a: Absorption) -> list:
    """The definitional part of the unfolding table as strata of atomic
    equalities, dependencies first. Uses the recorded strata when
    present, otherwise the (always stratifiable) acyclic arrangement."""
    defs = {name: a.tu.rhs("pos", name)[0]
            for name, o in a.tu.origin.items() if o == "definitional"}
    if a.strata is not None:
        return [[Eq(Atom(n), defs[n]) for n in stratum] for stratum in a.strata]
    arranged = stratify([Eq(Atom(n), d) for n, d in sorted(defs.items())])
    assert arranged is not None
    return arranged


def induced_absorption(defs: Sequence[Eq]) -> Absorption:
    """The absorption a plain definition set induces (no residual part)."""
    return Absorption(_build_tu(list(defs), []), ())


def absorb(t: TBox, mode: str = MODE_BASIC,
           fuel: int = DEFAULT_CLAUSE_FUEL) -> Absorption:
    """Full pipeline: distribute, absorb residual clauses, build the
    unfolding table. Never fails; unabsorbable clauses stay residual."""
    if mode not in MODES:
        raise ValueError(f"unknown absorption mode {mode!r}")
    if mode == MODE_NONE:
        clauses = []
        log = []
        for ax in t:
            clauses.extend(axiom_clauses(ax))
            log.append(LogEntry(ax, DISP_RESIDUAL))
        return Absorption(UnfoldTable({}, {}), tuple(clauses), None, tuple(log))

    d = distribute(t, mode)
    tinc = list(d.tinc)
    tg_clauses = []
    details: dict = {}
    for sub_ax, idx in d.residual:
        g = make_clause([Not(sub_ax.lhs), sub_ax.rhs])
        outcome = absorb_clause(g, d.tprim, tinc, fuel)
        if isinstance(outcome, Absorbed):
            tinc.append(outcome.inclusion)
            fate = f"absorbed into {outcome.atom}"
        else:
            tg_clauses.append(g if outcome.fuel_exhausted else outcome.clause)
            fate = "residual" + (" (fuel exhausted)" if outcome.fuel_exhausted else "")
            if d.dispositions[idx] == DISP_RESIDUAL:
                details[idx] = fate
        if d.dispositions[idx] == DISP_RESIDUAL and fate.startswith("absorbed"):
            d.dispositions[idx] = DISP_ABSORBED
        details[idx] = "; ".join(filter(None, [details.get(idx, ""), fate]))

    log = tuple(
        LogEntry(ax, d.dispositions[idx], details.get(idx, ""))
        for idx, ax in enumerate(t))
    strata = None
    if mode == MODE_ENHANCED:
        arranged = stratify(d.tprim)
        assert arranged is not None
        strata = tuple(tuple(ax.lhs.name for ax in s) for s in arranged)
    return Absorption(_build_tu(d.tprim, tinc), tuple(tg_clauses), strata, log)


class MalformedUnfoldTableError(ValueError):
    pass


def reconstruct_axioms(a: Absorption) -> TBox:
    """Materialise the absorption as plain axioms for the equivalence
    oracle: definitional entries re-emit equalities, other entries emit
    inclusions, residual clauses emit universal axioms."""
    axioms = []
    entries = dict(a.tu.entries)
    for name in sorted(n for n, o in a.tu.origin.items() if o == "definitional"):
        pos = entries.pop(("pos", name), None)
        neg = entries.pop(("neg", name), None)
        if pos is None or neg is None or len(pos) != 1 or len(neg) != 1:
            raise MalformedUnfoldTableError(
                f"definitional atom {name} lacks its paired entries")
        if neg[0] != complement(pos[0]):
            raise MalformedUnfoldTableError(
                f"definitional atom {name}: negative entry is not the "
                f"complement of its definition")
        axioms.append(Eq(Atom(name), pos[0]))
    for (polarity, name) in sorted(entries, key=lambda k: (k[1], k[0])):
        lhs: Concept = Atom(name) if polarity == "pos" else Not(Atom(name))
        for rhs in entries[(polarity, name)]:
            axioms.append(Sub(lhs, rhs))
    from .concepts import TOP

    for cl in a.tg:
        axioms.append(Sub(TOP, clause_concept(cl)))
    return tbox(axioms)


def format_absorption(a: Absorption) -> str:
    """Printable three-section summary plus the per-axiom log."""
    from .syntax import render_axiom, render_concept

    lines = ["; unfolding table (definitions)"]
    for name in sorted(n for n, o in a.tu.origin.items() if o == "definitional"):
        (d,) = a.tu.rhs("pos", name)
        lines.append(f"(define-concept {name} {render_concept(d)})")
    lines.append("; unfolding table (inclusions)")
    for (polarity, name) in sorted(a.tu.entries, key=lambda k: (k[1], k[0])):
        if a.tu.origin.get(name) == "definitional":
            continue
        prefix = name if polarity == "pos" else f"(not {name})"
        for rhs in a.tu.entries[(polarity, name)]:
            lines.append(f"(implies {prefix} {render_concept(rhs)})")
    lines.append("; residual clauses")
    for cl in a.tg:
        lines.append(f"(implies top {render_concept(clause_concept(cl))})")
    lines.append("; axiom dispositions")
    for entry in a.log:
        detail = f"  [{entry.detail}]" if entry.detail else ""
        lines.append(f"; {entry.disposition}: {render_axiom(entry.axiom)}{detail}")
    return "\n".join(lines) + "\n"
