"""Finite-model kernel: concept compilation and backend selection.

Concepts are compiled to small stack programs evaluated over bitmask
extensions. Two interchangeable backends implement the evaluation and
enumeration loops: a Cython extension (``dlreason._speedups``) and a
pure-Python twin (``dlreason._kernel_pure``). The compiled one is used
when available; set ``DLREASON_PURE_KERNEL=1`` to force the fallback.
"""

from __future__ import annotations

import os
from typing import Mapping, Optional

from .concepts import And, Atom, Bottom, Concept, Exists, Forall, Not, Or, Top
from ._kernel_pure import (
    AX_EQ,
    AX_SUB,
    OP_AND,
    OP_ATOM,
    OP_BOT,
    OP_EXISTS,
    OP_FORALL,
    OP_NOT,
    OP_OR,
    OP_TOP,
)
from . import _kernel_pure

_backend = _kernel_pure
BACKEND = "pure"

if os.environ.get("DLREASON_PURE_KERNEL", "") != "1":
    try:
        from . import _speedups  # compiled extension; optional

        _backend = _speedups
        BACKEND = "compiled"
    except ImportError:
        pass


def backend_name() -> str:
    return BACKEND


def get_backend(name: Optional[str] = None):
    """Return a backend module by name ('compiled', 'pure' or None for
    the active one). Raises ImportError if the compiled one is absent."""
    if name is None:
        return _backend
    if name == "pure":
        return _kernel_pure
    if name == "compiled":
        from . import _speedups

        return _speedups
    raise ValueError(f"unknown kernel backend {name!r}")


def compile_concept(c: Concept, atom_index: Mapping[str, int],
                    role_index: Mapping[str, int]) -> tuple:
    """Compile to a postorder program of ``(op, a, b)`` triples.

    Atoms and roles missing from the index get the empty extension:
    unknown atoms compile to bottom, restrictions over unknown roles
    collapse to bottom (some) or top (all).
    """
    prog: list[tuple] = []

    def walk(c: Concept) -> None:
        if isinstance(c, Top):
            prog.append((OP_TOP, 0, 0))
        elif isinstance(c, Bottom):
            prog.append((OP_BOT, 0, 0))
        elif isinstance(c, Atom):
            idx = atom_index.get(c.name)
            if idx is None:
                prog.append((OP_BOT, 0, 0))
            else:
                prog.append((OP_ATOM, idx, 0))
        elif isinstance(c, Not):
            walk(c.arg)
            prog.append((OP_NOT, 0, 0))
        elif isinstance(c, And):
            for a in c.args:
                walk(a)
            prog.append((OP_AND, len(c.args), 0))
        elif isinstance(c, Or):
            for a in c.args:
                walk(a)
            prog.append((OP_OR, len(c.args), 0))
        elif isinstance(c, (Exists, Forall)):
            ridx = role_index.get(c.role.name)
            if ridx is None:
                prog.append((OP_BOT, 0, 0) if isinstance(c, Exists) else (OP_TOP, 0, 0))
                return
            walk(c.filler)
            op = OP_EXISTS if isinstance(c, Exists) else OP_FORALL
            prog.append((op, ridx, 1 if c.role.inverted else 0))
        else:
            raise TypeError(f"not a concept: {c!r}")

    walk(c)
    return tuple(prog)


def eval_program(prog, n, atom_masks, succ, pred):
    return _backend.eval_program(prog, n, atom_masks, succ, pred)


def find_model(axioms, goal, natoms, nroles, max_n):
    return _backend.find_model(axioms, goal, natoms, nroles, max_n)


def find_disagreement(axioms1, axioms2, natoms, nroles, max_n):
    return _backend.find_disagreement(axioms1, axioms2, natoms, nroles, max_n)


def find_nonmonotone(prog, atom_idx, natoms, nroles, max_n):
    return _backend.find_nonmonotone(prog, atom_idx, natoms, nroles, max_n)
