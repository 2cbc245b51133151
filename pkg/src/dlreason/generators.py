"""Synthetic terminology generators.

Two benchmark families (cyclical definition pairs and a layered
definition forest with optional general axioms) plus small random
concept/terminology samplers for the property suites. Every generator
is a deterministic function of its parameters.
"""

from __future__ import annotations

import random
from typing import Sequence

from .concepts import (
    Atom,
    Concept,
    Eq,
    Exists,
    Forall,
    Not,
    Role,
    Sub,
    TBox,
    mk_and,
    mk_or,
    tbox,
)


def gen_cyclic_pairs(k: int) -> TBox:
    """``k`` independent cyclical definition pairs.

    Each instance ``i`` is the procedure/surgeon-shaped pattern
    ``P_i == Q_i and some(inv R_i).S_i``, ``S_i == U_i and all(R_i).P_i``
    preceded by primitive backbone definitions for ``Q_i`` and ``U_i``.
    The two cyclic definitions form one stratum; without stratification
    support one direction of the pair stays residual.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    axioms = []
    for i in range(1, k + 1):
        q, u, p, s, g, h = (Atom(f"{x}_{i}") for x in "QUPSGH")
        r, b = Role(f"R_{i}"), Role(f"B_{i}")
        axioms.append(Eq(q, Exists(b, Exists(b, Exists(b, g)))))
        axioms.append(Eq(u, mk_and([Forall(b, g), Forall(b, h)])))
        axioms.append(Eq(p, mk_and([q, Exists(r.inverse(), s)])))
        axioms.append(Eq(s, mk_and([u, Forall(r, p)])))
    return tbox(axioms)


def _forest_concept(rng: random.Random, pool: list, roles: list,
                    depth: int) -> Concept:
    if depth == 0 or rng.random() < 0.35:
        return Atom(rng.choice(pool))
    kind = rng.choice(["and", "and", "some", "all"])
    if kind == "and":
        width = rng.randint(2, 3)  # fan-in <= 3
        return mk_and([_forest_concept(rng, pool, roles, depth - 1)
                       for _ in range(width)])
    role = Role(rng.choice(roles))
    filler = _forest_concept(rng, pool, roles, depth - 1)
    return Exists(role, filler) if kind == "some" else Forall(role, filler)


def gen_galen_like(d: int, g: int, seed: int = 0) -> TBox:
    """A medical-terminology-shaped synthetic: ``d`` primitive
    definitions over a small base vocabulary and three roles, followed
    by ``g`` general axioms ``(A and some(R).B) <= C`` whose complex
    left-hand sides cannot be placed by phase 1 (phase 2 may still
    absorb them through the undefined base atom ``A``).
    """
    if d < 0 or g < 0:
        raise ValueError("d and g must be non-negative")
    rng = random.Random((seed, d, g).__repr__())
    roles = ["r1", "r2", "r3"]
    base = [f"X_{i}" for i in range(1, max(3, d // 3) + 1)]
    axioms = []
    pool = list(base)
    for i in range(1, d + 1):
        name = f"N_{i}"
        rhs = _forest_concept(rng, pool, roles, rng.randint(1, 4))
        axioms.append(Eq(Atom(name), rhs))
        pool.append(name)
    defined = [f"N_{i}" for i in range(1, d + 1)] or base
    for _ in range(g):
        a = Atom(rng.choice(base))
        b = Atom(rng.choice(pool))
        c = Atom(rng.choice(defined))
        lhs = mk_and([a, Exists(Role(rng.choice(roles)), b)])
        axioms.append(Sub(lhs, c))
    return tbox(axioms)


# -- small random samplers for the property suites ----------------------

def random_signature(rng: random.Random) -> tuple:
    """A signature small enough for exhaustive model enumeration at
    domain size 3 (at most 24 counter bits)."""
    if rng.random() < 0.15:
        atoms = ["A"][:rng.randint(1, 1)]
        roles = ["R", "S"][: rng.randint(1, 2)]
    else:
        atoms = ["A", "B", "C"][: rng.randint(1, 3)]
        roles = ["R"]
    return atoms, roles


def random_concept(rng: random.Random, atoms: Sequence[str],
                   roles: Sequence[str], depth: int = 3) -> Concept:
    from .concepts import BOTTOM, TOP

    if depth == 0:
        roll = rng.random()
        if roll < 0.05:
            return TOP
        if roll < 0.1:
            return BOTTOM
        a = Atom(rng.choice(list(atoms)))
        return a if rng.random() < 0.6 else Not(a)
    kind = rng.choice(["leaf", "leaf", "not", "and", "or", "some", "all"])
    if kind == "leaf":
        return random_concept(rng, atoms, roles, 0)
    if kind == "not":
        return Not(random_concept(rng, atoms, roles, depth - 1))
    if kind in ("and", "or"):
        parts = [random_concept(rng, atoms, roles, depth - 1)
                 for _ in range(rng.randint(2, 3))]
        return mk_and(parts) if kind == "and" else mk_or(parts)
    role = Role(rng.choice(list(roles)), rng.random() < 0.3)
    filler = random_concept(rng, atoms, roles, depth - 1)
    return Exists(role, filler) if kind == "some" else Forall(role, filler)


def random_tbox(rng: random.Random, atoms: Sequence[str],
                roles: Sequence[str], max_axioms: int = 5,
                depth: int = 3) -> TBox:
    axioms = []
    for _ in range(rng.randint(0, max_axioms)):
        roll = rng.random()
        if roll < 0.55:
            lhs: Concept = Atom(rng.choice(list(atoms)))
        else:
            lhs = random_concept(rng, atoms, roles, depth - 1)
        rhs = random_concept(rng, atoms, roles, depth - 1)
        axioms.append(Sub(lhs, rhs) if rng.random() < 0.6 else Eq(lhs, rhs))
    return tbox(axioms)


def random_instance(seed: int) -> tuple:
    """A seeded (concept, terminology) pair over a shared small signature."""
    rng = random.Random(seed)
    atoms, roles = random_signature(rng)
    c = random_concept(rng, atoms, roles, depth=2)
    t = random_tbox(rng, atoms, roles, max_axioms=4, depth=2)
    return c, t
