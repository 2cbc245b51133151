"""Pure-Python twin of the compiled finite-model kernel.

Extensions of concepts over a finite domain of ``n`` elements are
bitmasks (bit ``i`` set iff element ``i`` is in the extension). A concept
is compiled (see :mod:`dlreason.kernel`) to a postorder program of
``(op, a, b)`` triples evaluated on a small stack of masks.

The scan entry points enumerate every interpretation over a signature of
``natoms`` atoms and ``nroles`` roles for domain sizes ``1..max_n``. An
interpretation is encoded by a counter whose low ``natoms*n`` bits are
the atom extensions (atom-major) and whose next ``nroles*n*n`` bits are
the role pair sets (role-major, then source-major).

The compiled backend in ``_speedups`` implements the identical contract;
both must stay in lockstep bit for bit.
"""

from __future__ import annotations

from typing import Optional, Sequence

OP_TOP = 0
OP_BOT = 1
OP_ATOM = 2
OP_NOT = 3
OP_AND = 4
OP_OR = 5
OP_EXISTS = 6
OP_FORALL = 7

AX_SUB = 0
AX_EQ = 1

Prog = Sequence[tuple]


def eval_program(prog: Prog, n: int, atom_masks: Sequence[int],
                 succ: Sequence[int], pred: Sequence[int]) -> int:
    """Evaluate a compiled concept; returns the extension bitmask.

    ``succ``/``pred`` are flattened role-major: entry ``r*n + i`` is the
    mask of successors (resp. predecessors) of element ``i`` under role
    ``r``.
    """
    full = (1 << n) - 1
    stack: list[int] = []
    push = stack.append
    for op, a, b in prog:
        if op == OP_TOP:
            push(full)
        elif op == OP_BOT:
            push(0)
        elif op == OP_ATOM:
            push(atom_masks[a])
        elif op == OP_NOT:
            stack[-1] = full & ~stack[-1]
        elif op == OP_AND:
            acc = full
            for _ in range(a):
                acc &= stack.pop()
            push(acc)
        elif op == OP_OR:
            acc = 0
            for _ in range(a):
                acc |= stack.pop()
            push(acc)
        else:
            filler = stack.pop()
            edges = succ if b == 0 else pred
            base = a * n
            res = 0
            if op == OP_EXISTS:
                for i in range(n):
                    if edges[base + i] & filler:
                        res |= 1 << i
            else:
                for i in range(n):
                    if not (edges[base + i] & ~filler & full):
                        res |= 1 << i
            push(res)
    return stack[-1]


def _decode(counter: int, n: int, natoms: int, nroles: int,
            atom_masks: list[int], succ: list[int], pred: list[int]) -> None:
    full = (1 << n) - 1
    for a in range(natoms):
        atom_masks[a] = (counter >> (a * n)) & full
    base = natoms * n
    for r in range(nroles):
        for i in range(n):
            succ[r * n + i] = (counter >> (base + r * n * n + i * n)) & full
        for j in range(n):
            m = 0
            for i in range(n):
                if succ[r * n + i] >> j & 1:
                    m |= 1 << i
            pred[r * n + j] = m


def _satisfies(axioms: Sequence[tuple], n: int, full: int, atom_masks, succ, pred) -> bool:
    for kind, lhs, rhs in axioms:
        e1 = eval_program(lhs, n, atom_masks, succ, pred)
        e2 = eval_program(rhs, n, atom_masks, succ, pred)
        if kind == AX_SUB:
            if e1 & ~e2 & full:
                return False
        elif e1 != e2:
            return False
    return True


def find_model(axioms: Sequence[tuple], goal: Optional[Prog],
               natoms: int, nroles: int, max_n: int) -> Optional[tuple]:
    """First ``(n, counter)`` whose interpretation satisfies all axioms
    and (when ``goal`` is given) makes the goal non-empty."""
    for n in range(1, max_n + 1):
        bits = natoms * n + nroles * n * n
        full = (1 << n) - 1
        atom_masks = [0] * max(natoms, 1)
        succ = [0] * max(nroles * n, 1)
        pred = [0] * max(nroles * n, 1)
        for counter in range(1 << bits):
            _decode(counter, n, natoms, nroles, atom_masks, succ, pred)
            if not _satisfies(axioms, n, full, atom_masks, succ, pred):
                continue
            if goal is not None and not eval_program(goal, n, atom_masks, succ, pred):
                continue
            return (n, counter)
    return None


def find_disagreement(axioms1: Sequence[tuple], axioms2: Sequence[tuple],
                      natoms: int, nroles: int, max_n: int) -> Optional[tuple]:
    """First ``(n, counter)`` where the two axiom sets disagree on
    satisfaction, or None if they agree everywhere."""
    for n in range(1, max_n + 1):
        bits = natoms * n + nroles * n * n
        full = (1 << n) - 1
        atom_masks = [0] * max(natoms, 1)
        succ = [0] * max(nroles * n, 1)
        pred = [0] * max(nroles * n, 1)
        for counter in range(1 << bits):
            _decode(counter, n, natoms, nroles, atom_masks, succ, pred)
            s1 = _satisfies(axioms1, n, full, atom_masks, succ, pred)
            s2 = _satisfies(axioms2, n, full, atom_masks, succ, pred)
            if s1 != s2:
                return (n, counter)
    return None


def find_nonmonotone(prog: Prog, atom_idx: int,
                     natoms: int, nroles: int, max_n: int) -> Optional[tuple]:
    """Search for ``(n, counter, x1, x2)`` with ``x1 <= x2`` where the
    concept's extension is not monotone in the given atom."""
    for n in range(1, max_n + 1):
        bits = natoms * n + nroles * n * n
        full = (1 << n) - 1
        atom_masks = [0] * max(natoms, 1)
        succ = [0] * max(nroles * n, 1)
        pred = [0] * max(nroles * n, 1)
        for counter in range(1 << bits):
            _decode(counter, n, natoms, nroles, atom_masks, succ, pred)
            for x2 in range(full + 1):
                atom_masks[atom_idx] = x2
                big = eval_program(prog, n, atom_masks, succ, pred)
                # iterate strict submasks of x2, plus the empty mask
                x1 = (x2 - 1) & x2
                while True:
                    atom_masks[atom_idx] = x1
                    small = eval_program(prog, n, atom_masks, succ, pred)
                    if small & ~big & full:
                        return (n, counter, x1, x2)
                    if x1 == 0:
                        break
                    x1 = (x1 - 1) & x2
    return None
