"""Concept and axiom syntax for ALC with inverse roles.

Concepts are immutable, hashable trees built from atoms, booleans and
role restrictions. Conjunction and disjunction are n-ary: the smart
constructors flatten nested applications, drop duplicates (keeping the
first occurrence) and remove the neutral element, so that a surviving
``And``/``Or`` always has at least two arguments.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Union


@dataclass(frozen=True)
class Role:
    """A role name, possibly inverted. ``inverse(inverse(R))`` is ``R``."""

    name: str
    inverted: bool = False

    def inverse(self) -> "Role":
        return Role(self.name, not self.inverted)

    def __str__(self) -> str:
        return f"(inv {self.name})" if self.inverted else self.name


@dataclass(frozen=True)
class Top:
    def __str__(self) -> str:
        return "top"


@dataclass(frozen=True)
class Bottom:
    def __str__(self) -> str:
        return "bottom"


@dataclass(frozen=True)
class Atom:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Not:
    arg: "Concept"

    def __str__(self) -> str:
        return f"(not {self.arg})"


@dataclass(frozen=True)
class And:
    args: tuple

    def __str__(self) -> str:
        return "(and " + " ".join(str(a) for a in self.args) + ")"


@dataclass(frozen=True)
class Or:
    args: tuple

    def __str__(self) -> str:
        return "(or " + " ".join(str(a) for a in self.args) + ")"


@dataclass(frozen=True)
class Exists:
    role: Role
    filler: "Concept"

    def __str__(self) -> str:
        return f"(some {self.role} {self.filler})"


@dataclass(frozen=True)
class Forall:
    role: Role
    filler: "Concept"

    def __str__(self) -> str:
        return f"(all {self.role} {self.filler})"


Concept = Union[Top, Bottom, Atom, Not, And, Or, Exists, Forall]

TOP = Top()
BOTTOM = Bottom()


def mk_and(args: Iterable[Concept]) -> Concept:
    """N-ary conjunction: flatten, dedupe, drop ``top``, collapse singletons."""
    flat: list[Concept] = []
    seen: set[Concept] = set()
    for a in args:
        parts = a.args if isinstance(a, And) else (a,)
        for p in parts:
            if p == TOP or p in seen:
                continue
            seen.add(p)
            flat.append(p)
    if not flat:
        return TOP
    if len(flat) == 1:
        return flat[0]
    return And(tuple(flat))


def mk_or(args: Iterable[Concept]) -> Concept:
    """N-ary disjunction: flatten, dedupe, drop ``bottom``, collapse singletons."""
    flat: list[Concept] = []
    seen: set[Concept] = set()
    for a in args:
        parts = a.args if isinstance(a, Or) else (a,)
        for p in parts:
            if p == BOTTOM or p in seen:
                continue
            seen.add(p)
            flat.append(p)
    if not flat:
        return BOTTOM
    if len(flat) == 1:
        return flat[0]
    return Or(tuple(flat))


def nnf(c: Concept) -> Concept:
    """Negation normal form: negation only directly above atoms."""
    if isinstance(c, (Top, Bottom, Atom)):
        return c
    if isinstance(c, And):
        return mk_and(nnf(a) for a in c.args)
    if isinstance(c, Or):
        return mk_or(nnf(a) for a in c.args)
    if isinstance(c, Exists):
        return Exists(c.role, nnf(c.filler))
    if isinstance(c, Forall):
        return Forall(c.role, nnf(c.filler))
    # c is Not(d): push the negation through d.
    d = c.arg
    if isinstance(d, Top):
        return BOTTOM
    if isinstance(d, Bottom):
        return TOP
    if isinstance(d, Atom):
        return c
    if isinstance(d, Not):
        return nnf(d.arg)
    if isinstance(d, And):
        return mk_or(nnf(Not(a)) for a in d.args)
    if isinstance(d, Or):
        return mk_and(nnf(Not(a)) for a in d.args)
    if isinstance(d, Exists):
        return Forall(d.role, nnf(Not(d.filler)))
    if isinstance(d, Forall):
        return Exists(d.role, nnf(Not(d.filler)))
    raise TypeError(f"not a concept: {c!r}")


def complement(c: Concept) -> Concept:
    """NNF of the negation of ``c``."""
    return nnf(Not(c))


def subconcepts(c: Concept) -> Iterator[Concept]:
    """All subconcepts of ``c``, including ``c`` itself (preorder)."""
    yield c
    if isinstance(c, Not):
        yield from subconcepts(c.arg)
    elif isinstance(c, (And, Or)):
        for a in c.args:
            yield from subconcepts(a)
    elif isinstance(c, (Exists, Forall)):
        yield from subconcepts(c.filler)


def concept_atoms(c: Concept) -> set[str]:
    return {s.name for s in subconcepts(c) if isinstance(s, Atom)}


def concept_roles(c: Concept) -> set[str]:
    return {s.role.name for s in subconcepts(c) if isinstance(s, (Exists, Forall))}


@dataclass(frozen=True)
class Sub:
    """Subsumption axiom lhs <= rhs."""

    lhs: Concept
    rhs: Concept


@dataclass(frozen=True)
class Eq:
    """Equality axiom lhs == rhs."""

    lhs: Concept
    rhs: Concept


Axiom = Union[Sub, Eq]


@dataclass(frozen=True)
class Signature:
    atoms: frozenset
    roles: frozenset

    def __or__(self, other: "Signature") -> "Signature":
        return Signature(self.atoms | other.atoms, self.roles | other.roles)


def concept_signature(c: Concept) -> Signature:
    return Signature(frozenset(concept_atoms(c)), frozenset(concept_roles(c)))


@dataclass(frozen=True)
class TBox:
    """An ordered list of axioms. Axiom order is significant downstream."""

    axioms: tuple

    @property
    def signature(self) -> Signature:
        atoms: set[str] = set()
        roles: set[str] = set()
        for ax in self.axioms:
            for c in (ax.lhs, ax.rhs):
                atoms |= concept_atoms(c)
                roles |= concept_roles(c)
        return Signature(frozenset(atoms), frozenset(roles))

    def __iter__(self) -> Iterator[Axiom]:
        return iter(self.axioms)

    def __len__(self) -> int:
        return len(self.axioms)


def tbox(axioms: Iterable[Axiom]) -> TBox:
    return TBox(tuple(axioms))


EMPTY_TBOX = TBox(())


def defined_atoms(t: TBox) -> set[str]:
    """Atom names appearing as the atomic left-hand side of an axiom."""
    out: set[str] = set()
    for ax in t:
        if isinstance(ax.lhs, Atom):
            out.add(ax.lhs.name)
    return out


def axiom_internalisation_concepts(ax: Axiom) -> list[Concept]:
    """The universal implication concepts encoding an axiom.

    ``lhs <= rhs`` becomes one concept (nnf of ``not lhs or rhs``); an
    equality yields one implication per direction.
    """
    fwd = nnf(mk_or([Not(ax.lhs), ax.rhs]))
    if isinstance(ax, Sub):
        return [fwd]
    return [fwd, nnf(mk_or([Not(ax.rhs), ax.lhs]))]


def syntactically_monotone(c: Concept, atom_name: str) -> bool:
    """True iff the negated atom does not occur in nnf(c).

    Equivalent to the atom never appearing under an odd number of
    negations.
    """
    neg = Not(Atom(atom_name))
    return all(s != neg for s in subconcepts(nnf(c)))
