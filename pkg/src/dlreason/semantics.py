"""Brute-force semantic ground truth on small finite structures.

Everything here is exhaustive and budget-guarded: model checking,
interpretation enumeration, bounded equivalence and satisfiability,
witness conditions, and the iterative model-repair constructions for
acyclic and stratified definition sets. Answers from this module are
used as the oracle against which the optimised reasoner is tested.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from . import kernel
from .absorption import Absorption, clause_concept, induced_absorption, is_primitive
from .concepts import (
    Atom,
    Concept,
    Eq,
    Not,
    Signature,
    Sub,
    TBox,
    concept_atoms,
    concept_signature,
    syntactically_monotone,
)

DEFAULT_ENUM_BUDGET_BITS = 24
DEFAULT_COMPLETION_BUDGET_BITS = 20


class EnumerationBudgetError(RuntimeError):
    """The requested exhaustive search exceeds the configured budget."""


class CyclicDefinitionsError(ValueError):
    """Definition list is not acyclic / not a valid uses-linearisation."""


class InvalidStratificationError(ValueError):
    """Strata violate the monotonicity or layering requirements."""


class NotUnfoldedError(ValueError):
    """Labeled structure does not satisfy the unfolding condition."""


@dataclass(frozen=True)
class FiniteInterpretation:
    """Explicit interpretation over the domain ``{0, .., n-1}``."""

    n: int
    atoms: dict
    roles: dict

    def __post_init__(self):
        assert self.n >= 1
        for ext in self.atoms.values():
            assert all(0 <= e < self.n for e in ext)
        for pairs in self.roles.values():
            assert all(0 <= i < self.n and 0 <= j < self.n for i, j in pairs)

    def override(self, assignment: dict) -> "FiniteInterpretation":
        atoms = dict(self.atoms)
        atoms.update({a: frozenset(x) for a, x in assignment.items()})
        return FiniteInterpretation(self.n, atoms, self.roles)


@dataclass(frozen=True)
class LabeledStructure:
    """A witness candidate: role edges plus concept labels per element."""

    n: int
    roles: dict
    labels: dict

    def label(self, x: int) -> frozenset:
        return self.labels.get(x, frozenset())

    def clash_free(self) -> bool:
        for x in range(self.n):
            lab = self.label(x)
            for c in lab:
                if isinstance(c, Atom) and Not(c) in lab:
                    return False
        return True

    def label_atoms(self) -> set:
        out: set = set()
        for lab in self.labels.values():
            for c in lab:
                out |= concept_atoms(c)
        return out


def _masks(i: FiniteInterpretation, atom_order: Sequence[str], role_order: Sequence[str]):
    atom_masks = []
    for a in atom_order:
        m = 0
        for e in i.atoms.get(a, ()):
            m |= 1 << e
        atom_masks.append(m)
    succ = [0] * (len(role_order) * i.n)
    pred = [0] * (len(role_order) * i.n)
    for r, name in enumerate(role_order):
        for (x, y) in i.roles.get(name, ()):
            succ[r * i.n + x] |= 1 << y
            pred[r * i.n + y] |= 1 << x
    return atom_masks, succ, pred


def eval_concept(i: FiniteInterpretation, c: Concept) -> frozenset:
    """Extension of ``c`` in ``i``; unknown atoms and roles are empty."""
    atom_order = sorted(set(i.atoms) | concept_atoms(c))
    role_order = sorted(i.roles)
    prog = kernel.compile_concept(c, {a: k for k, a in enumerate(atom_order)},
                                  {r: k for k, r in enumerate(role_order)})
    atom_masks, succ, pred = _masks(i, atom_order, role_order)
    mask = kernel.eval_program(prog, i.n, atom_masks, succ, pred)
    return frozenset(e for e in range(i.n) if mask >> e & 1)


def satisfies(i: FiniteInterpretation, t: TBox) -> bool:
    for ax in t:
        lhs = eval_concept(i, ax.lhs)
        rhs = eval_concept(i, ax.rhs)
        if isinstance(ax, Sub):
            if not lhs <= rhs:
                return False
        elif lhs != rhs:
            return False
    return True


def _sig_orders(sig: Signature) -> tuple:
    return tuple(sorted(sig.atoms)), tuple(sorted(sig.roles))


def _check_budget(natoms: int, nroles: int, max_domain: int, budget_bits: int) -> None:
    bits = natoms * max_domain + nroles * max_domain * max_domain
    if bits > budget_bits:
        raise EnumerationBudgetError(
            f"{bits} enumeration bits exceed the budget of {budget_bits}")


def interpretation_from_counter(sig: Signature, n: int, counter: int) -> FiniteInterpretation:
    """Decode a kernel enumeration counter; mirrors the kernel layout."""
    atom_order, role_order = _sig_orders(sig)
    atoms = {}
    for a, name in enumerate(atom_order):
        atoms[name] = frozenset(
            e for e in range(n) if counter >> (a * n + e) & 1)
    base = len(atom_order) * n
    roles = {}
    for r, name in enumerate(role_order):
        roles[name] = frozenset(
            (i, j)
            for i in range(n) for j in range(n)
            if counter >> (base + r * n * n + i * n + j) & 1)
    return FiniteInterpretation(n, atoms, roles)


def enumerate_interpretations(sig: Signature, max_domain: int,
                              budget_bits: int = DEFAULT_ENUM_BUDGET_BITS,
                              ) -> Iterator[FiniteInterpretation]:
    """Every interpretation over ``sig`` with domain size 1..max_domain,
    exactly once, in the kernel's deterministic counter order."""
    atom_order, role_order = _sig_orders(sig)
    _check_budget(len(atom_order), len(role_order), max_domain, budget_bits)
    for n in range(1, max_domain + 1):
        bits = len(atom_order) * n + len(role_order) * n * n
        for counter in range(1 << bits):
            yield interpretation_from_counter(sig, n, counter)


def _compile_tbox(t: TBox, atom_index, role_index) -> list:
    axioms = []
    for ax in t:
        kind = kernel.AX_SUB if isinstance(ax, Sub) else kernel.AX_EQ
        axioms.append((kind,
                       kernel.compile_concept(ax.lhs, atom_index, role_index),
                       kernel.compile_concept(ax.rhs, atom_index, role_index)))
    return axioms


def tbox_disagreement(t1: TBox, t2: TBox, sig: Signature, max_domain: int,
                      budget_bits: int = DEFAULT_ENUM_BUDGET_BITS,
                      ) -> Optional[FiniteInterpretation]:
    """First enumerated interpretation over ``sig`` that satisfies exactly
    one of the two terminologies, or None if they agree throughout."""
    atom_order, role_order = _sig_orders(sig)
    _check_budget(len(atom_order), len(role_order), max_domain, budget_bits)
    atom_index = {a: k for k, a in enumerate(atom_order)}
    role_index = {r: k for k, r in enumerate(role_order)}
    hit = kernel.find_disagreement(
        _compile_tbox(t1, atom_index, role_index),
        _compile_tbox(t2, atom_index, role_index),
        len(atom_order), len(role_order), max_domain)
    if hit is None:
        return None
    return interpretation_from_counter(sig, hit[0], hit[1])


def equivalent_bounded(t1: TBox, t2: TBox, sig: Signature, max_domain: int,
                       budget_bits: int = DEFAULT_ENUM_BUDGET_BITS) -> bool:
    """Bounded equivalence check: a disagreement is a definite
    counterexample, agreement up to the bound is evidence only."""
    return tbox_disagreement(t1, t2, sig, max_domain, budget_bits) is None


def sat_bruteforce(c: Concept, t: TBox, max_domain: int,
                   budget_bits: int = DEFAULT_ENUM_BUDGET_BITS,
                   ) -> Optional[FiniteInterpretation]:
    """Search for a model of ``t`` with a non-empty extension for ``c``
    up to the domain bound. Absence does not prove unsatisfiability."""
    sig = t.signature | concept_signature(c)
    atom_order, role_order = _sig_orders(sig)
    _check_budget(len(atom_order), len(role_order), max_domain, budget_bits)
    atom_index = {a: k for k, a in enumerate(atom_order)}
    role_index = {r: k for k, r in enumerate(role_order)}
    goal = kernel.compile_concept(c, atom_index, role_index)
    hit = kernel.find_model(_compile_tbox(t, atom_index, role_index), goal,
                            len(atom_order), len(role_order), max_domain)
    if hit is None:
        return None
    return interpretation_from_counter(sig, hit[0], hit[1])


def monotone_bounded(c: Concept, atom_name: str, sig: Signature, max_domain: int,
                     budget_bits: int = DEFAULT_ENUM_BUDGET_BITS) -> bool:
    """Exhaustive monotonicity check of ``c`` in ``atom_name`` over all
    interpretations up to the domain bound."""
    full_sig = Signature(sig.atoms | {atom_name}, sig.roles)
    atom_order, role_order = _sig_orders(full_sig)
    _check_budget(len(atom_order), len(role_order), max_domain, budget_bits)
    atom_index = {a: k for k, a in enumerate(atom_order)}
    role_index = {r: k for k, r in enumerate(role_order)}
    prog = kernel.compile_concept(c, atom_index, role_index)
    hit = kernel.find_nonmonotone(prog, atom_index[atom_name],
                                  len(atom_order), len(role_order), max_domain)
    return hit is None


def stems_from(i: FiniteInterpretation, w: LabeledStructure) -> bool:
    """Same domain and role edges, and the interpretation honours every
    atomic literal in the labels."""
    if i.n != w.n:
        return False
    roles = set(i.roles) | set(w.roles)
    for r in roles:
        if frozenset(i.roles.get(r, ())) != frozenset(w.roles.get(r, ())):
            return False
    for x in range(w.n):
        for c in w.label(x):
            if isinstance(c, Atom) and x not in i.atoms.get(c.name, ()):
                return False
            if isinstance(c, Not) and isinstance(c.arg, Atom):
                if x in i.atoms.get(c.arg.name, ()):
                    return False
    return True


def stemming_interpretations(w: LabeledStructure, extra_atoms: Sequence[str] = (),
                             budget_bits: int = DEFAULT_COMPLETION_BUDGET_BITS,
                             ) -> Iterator[FiniteInterpretation]:
    """All interpretations stemming from ``w``, up to the atoms mentioned
    in the labels (plus ``extra_atoms``); other atoms cannot influence
    the evaluation of any label concept."""
    if not w.clash_free():
        return
    atoms = sorted(w.label_atoms() | set(extra_atoms))
    fixed: dict = {a: set() for a in atoms}
    free: list = []
    for x in range(w.n):
        lab = w.label(x)
        for a in atoms:
            if Atom(a) in lab:
                fixed[a].add(x)
            elif Not(Atom(a)) not in lab:
                free.append((a, x))
    if len(free) > budget_bits:
        raise EnumerationBudgetError(
            f"{len(free)} undetermined atom/element pairs exceed the "
            f"completion budget of {budget_bits} bits")
    for bits in itertools.product((0, 1), repeat=len(free)):
        atoms_ext = {a: set(v) for a, v in fixed.items()}
        for (a, x), bit in zip(free, bits):
            if bit:
                atoms_ext[a].add(x)
        yield FiniteInterpretation(
            w.n, {a: frozenset(v) for a, v in atoms_ext.items()}, dict(w.roles))


def is_witness(w: LabeledStructure, c: Concept,
               budget_bits: int = DEFAULT_COMPLETION_BUDGET_BITS) -> bool:
    """The three witness conditions: the concept labels some element,
    some interpretation stems from the structure (equivalent to
    clash-freeness here), and every stemming interpretation makes each
    element satisfy every concept in its label."""
    if not any(c in w.label(x) for x in range(w.n)):
        return False
    if not w.clash_free():
        return False
    extra = sorted(concept_atoms(c))
    for i in stemming_interpretations(w, extra, budget_bits):
        for x in range(w.n):
            for d in w.label(x):
                if x not in eval_concept(i, d):
                    return False
    return True


def is_unfolded(w: LabeledStructure, absorption: Absorption) -> bool:
    """The lazy-unfolding closure condition for a labeled structure:
    triggered unfolding entries have their right-hand sides present, and
    every residual clause's disjunction is present everywhere."""
    residual = [clause_concept(cl) for cl in absorption.tg]
    for x in range(w.n):
        lab = w.label(x)
        for (polarity, name), rhs_list in absorption.tu.entries.items():
            lit: Concept = Atom(name) if polarity == "pos" else Not(Atom(name))
            if lit in lab and any(d not in lab for d in rhs_list):
                return False
        if any(g not in lab for g in residual):
            return False
    return True


def canonical_witness(i: FiniteInterpretation, closure) -> LabeledStructure:
    """Label every element with the closure concepts true at it."""
    closure = list(closure)
    exts = {d: eval_concept(i, d) for d in closure}
    labels = {
        x: frozenset(d for d in closure if x in exts[d]) for x in range(i.n)
    }
    return LabeledStructure(i.n, dict(i.roles), labels)


def _initial_interpretation(w: LabeledStructure, atom_names) -> FiniteInterpretation:
    atoms = {
        a: frozenset(x for x in range(w.n) if Atom(a) in w.label(x))
        for a in atom_names
    }
    return FiniteInterpretation(w.n, atoms, dict(w.roles))


def _repair_atoms(w: LabeledStructure, defs) -> set:
    names = set(w.label_atoms())
    for ax in defs:
        names.add(ax.lhs.name)
        names |= concept_atoms(ax.rhs)
    return names


def _require_unfolded(w: LabeledStructure, defs) -> None:
    if not w.clash_free():
        raise NotUnfoldedError("labeled structure has a clashing label")
    if not is_unfolded(w, induced_absorption(defs)):
        raise NotUnfoldedError(
            "labeled structure is not unfolded w.r.t. the definitions")


def repair_model_primitive(w: LabeledStructure, defs: Sequence[Eq],
                           ) -> FiniteInterpretation:
    """Turn an unfolded labeled structure into a model of an acyclic
    definition list by substituting definitions in uses-order.

    ``defs`` must list each definition after everything it uses; the
    order is verified.
    """
    defs = list(defs)
    for ax in defs:
        if not isinstance(ax, Eq) or not isinstance(ax.lhs, Atom):
            raise ValueError(f"not an atomic definition: {ax}")
    if not is_primitive(defs):
        raise CyclicDefinitionsError("definitions are cyclic or duplicated")
    later = {ax.lhs.name for ax in defs}
    for ax in defs:
        if later & concept_atoms(ax.rhs):
            raise CyclicDefinitionsError(
                f"definition order is not a uses-linearisation at {ax.lhs.name}")
        later.discard(ax.lhs.name)
    _require_unfolded(w, defs)
    i = _initial_interpretation(w, _repair_atoms(w, defs))
    for ax in defs:
        i = i.override({ax.lhs.name: eval_concept(i, ax.rhs)})
    return i


def repair_model_stratified(w: LabeledStructure, strata: Sequence[Sequence[Eq]],
                            ) -> FiniteInterpretation:
    """Like :func:`repair_model_primitive` but per stratum, taking the
    least fixed point of the label-constrained definition operator.

    Each stratum's definitions must be syntactically monotone in the
    atoms that stratum defines, and no stratum's defined atoms may occur
    in an earlier stratum.
    """
    strata = [list(s) for s in strata]
    all_defs = [ax for s in strata for ax in s]
    seen: set = set()
    for ax in all_defs:
        if not isinstance(ax, Eq) or not isinstance(ax.lhs, Atom):
            raise ValueError(f"not an atomic definition: {ax}")
        if ax.lhs.name in seen:
            raise InvalidStratificationError(f"{ax.lhs.name} defined twice")
        seen.add(ax.lhs.name)
    earlier_occurring: set = set()
    for stratum in strata:
        defined = {ax.lhs.name for ax in stratum}
        if defined & earlier_occurring:
            raise InvalidStratificationError(
                "a defined atom occurs in an earlier stratum")
        for ax in stratum:
            for a in defined:
                if not syntactically_monotone(ax.rhs, a):
                    raise InvalidStratificationError(
                        f"definition of {ax.lhs.name} is not monotone in {a}")
        for ax in stratum:
            earlier_occurring.add(ax.lhs.name)
            earlier_occurring |= concept_atoms(ax.rhs)
    _require_unfolded(w, all_defs)

    pos = {a: frozenset(x for x in range(w.n) if Atom(a) in w.label(x))
           for a in seen}
    neg = {a: frozenset(x for x in range(w.n) if Not(Atom(a)) in w.label(x))
           for a in seen}
    i = _initial_interpretation(w, _repair_atoms(w, all_defs))
    for stratum in strata:
        names = [ax.lhs.name for ax in stratum]
        current = {a: frozenset() for a in names}
        # Kleene iteration from the bottom element; the operator is
        # monotone, so this reaches the least fixed point in at most
        # (#defined atoms) * domain_size steps.
        for _ in range(len(names) * w.n + 1):
            shifted = i.override(current)
            nxt = {
                ax.lhs.name:
                    (pos[ax.lhs.name] | eval_concept(shifted, ax.rhs))
                    - neg[ax.lhs.name]
                for ax in stratum
            }
            if nxt == current:
                break
            current = nxt
        else:
            raise AssertionError("fixed point iteration exceeded its ceiling")
        i = i.override(current)
    return i


def find_stemming_model(w: LabeledStructure, t: TBox,
                        budget_bits: int = DEFAULT_COMPLETION_BUDGET_BITS,
                        ) -> Optional[FiniteInterpretation]:
    """A stemming completion of ``w`` satisfying ``t``, if one exists."""
    extra = sorted(set().union(*[concept_atoms(ax.lhs) | concept_atoms(ax.rhs)
                                 for ax in t], set()))
    for i in stemming_interpretations(w, extra, budget_bits):
        if satisfies(i, t):
            return i
    return None
