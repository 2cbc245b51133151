# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled finite-model kernel.

Bit-for-bit equivalent to ``dlreason._kernel_pure``; see that module for
the program and counter encodings. Only the inner enumeration loops are
compiled, the call interface is identical.
"""

from cpython.array cimport array
from array import array as pyarray

ctypedef unsigned long long u64

cdef enum:
    OP_TOP = 0
    OP_BOT = 1
    OP_ATOM = 2
    OP_NOT = 3
    OP_AND = 4
    OP_OR = 5
    OP_EXISTS = 6
    OP_FORALL = 7

cdef enum:
    AX_SUB = 0
    AX_EQ = 1

DEF MAX_STACK = 256
DEF MAX_ATOMS = 64
DEF MAX_EDGES = 512  # nroles * n


cdef u64 _eval(const int* op, const int* pa, const int* pb, int start, int end,
               int n, u64 full, const u64* atoms, const u64* succ,
               const u64* pred) noexcept nogil:
    cdef u64 stack[MAX_STACK]
    cdef int sp = 0
    cdef int k, j, i, cnt, base
    cdef u64 acc, filler, edge
    cdef const u64* edges
    for k in range(start, end):
        if op[k] == OP_TOP:
            stack[sp] = full; sp += 1
        elif op[k] == OP_BOT:
            stack[sp] = 0; sp += 1
        elif op[k] == OP_ATOM:
            stack[sp] = atoms[pa[k]]; sp += 1
        elif op[k] == OP_NOT:
            stack[sp - 1] = full & ~stack[sp - 1]
        elif op[k] == OP_AND:
            cnt = pa[k]
            acc = full
            for j in range(cnt):
                sp -= 1
                acc &= stack[sp]
            stack[sp] = acc; sp += 1
        elif op[k] == OP_OR:
            cnt = pa[k]
            acc = 0
            for j in range(cnt):
                sp -= 1
                acc |= stack[sp]
            stack[sp] = acc; sp += 1
        else:
            sp -= 1
            filler = stack[sp]
            edges = succ if pb[k] == 0 else pred
            base = pa[k] * n
            acc = 0
            if op[k] == OP_EXISTS:
                for i in range(n):
                    if edges[base + i] & filler:
                        acc |= (<u64>1) << i
            else:
                for i in range(n):
                    if (edges[base + i] & ~filler & full) == 0:
                        acc |= (<u64>1) << i
            stack[sp] = acc; sp += 1
    return stack[sp - 1]


cdef void _decode(u64 counter, int n, int natoms, int nroles,
                  u64* atoms, u64* succ, u64* pred) noexcept nogil:
    cdef u64 full = ((<u64>1) << n) - 1
    cdef int a, r, i, j, base
    cdef u64 m
    for a in range(natoms):
        atoms[a] = (counter >> (a * n)) & full
    base = natoms * n
    for r in range(nroles):
        for i in range(n):
            succ[r * n + i] = (counter >> (base + r * n * n + i * n)) & full
        for j in range(n):
            m = 0
            for i in range(n):
                if (succ[r * n + i] >> j) & 1:
                    m |= (<u64>1) << i
            pred[r * n + j] = m


cdef class _ProgSet:
    """Programs flattened into shared op/arg arrays with offsets."""
    cdef array op, pa, pb, off

    def __init__(self, progs):
        ops = []
        pas = []
        pbs = []
        offs = [0]
        for prog in progs:
            for o, a, b in prog:
                ops.append(o)
                pas.append(a)
                pbs.append(b)
            offs.append(len(ops))
            if len(prog) > MAX_STACK:
                raise ValueError("program too long for compiled kernel")
        self.op = pyarray('i', ops or [0])
        self.pa = pyarray('i', pas or [0])
        self.pb = pyarray('i', pbs or [0])
        self.off = pyarray('i', offs)


cdef bint _satisfies(const int* op, const int* pa, const int* pb, const int* off,
                     const int* kinds, const int* l_idx, const int* r_idx, int nax,
                     int n, u64 full, const u64* atoms, const u64* succ,
                     const u64* pred) noexcept nogil:
    cdef int k
    cdef u64 e1, e2
    for k in range(nax):
        e1 = _eval(op, pa, pb, off[l_idx[k]], off[l_idx[k] + 1], n, full, atoms, succ, pred)
        e2 = _eval(op, pa, pb, off[r_idx[k]], off[r_idx[k] + 1], n, full, atoms, succ, pred)
        if kinds[k] == AX_SUB:
            if e1 & ~e2 & full:
                return False
        elif e1 != e2:
            return False
    return True


def _check_sizes(natoms, nroles, max_n):
    if natoms > MAX_ATOMS or nroles * max_n > MAX_EDGES or max_n > 32:
        raise ValueError("signature too large for compiled kernel")


def eval_program(prog, int n, atom_masks, succ, pred):
    cdef _ProgSet ps = _ProgSet([prog])
    cdef u64 atoms_c[MAX_ATOMS]
    cdef u64 succ_c[MAX_EDGES]
    cdef u64 pred_c[MAX_EDGES]
    cdef int i
    if len(atom_masks) > MAX_ATOMS or len(succ) > MAX_EDGES:
        raise ValueError("signature too large for compiled kernel")
    for i in range(len(atom_masks)):
        atoms_c[i] = atom_masks[i]
    for i in range(len(succ)):
        succ_c[i] = succ[i]
        pred_c[i] = pred[i]
    cdef int[::1] op = ps.op, pa = ps.pa, pb = ps.pb, off = ps.off
    return _eval(&op[0], &pa[0], &pb[0], off[0], off[1], n,
                 ((<u64>1) << n) - 1, atoms_c, succ_c, pred_c)


cdef _axiom_arrays(axioms):
    progs = []
    kinds = []
    lidx = []
    ridx = []
    for kind, lhs, rhs in axioms:
        kinds.append(kind)
        lidx.append(len(progs))
        progs.append(lhs)
        ridx.append(len(progs))
        progs.append(rhs)
    return progs, pyarray('i', kinds or [0]), pyarray('i', lidx or [0]), pyarray('i', ridx or [0])


def find_model(axioms, goal, int natoms, int nroles, int max_n):
    _check_sizes(natoms, nroles, max_n)
    progs, kinds_a, lidx_a, ridx_a = _axiom_arrays(axioms)
    cdef int goal_idx = -1
    if goal is not None:
        goal_idx = len(progs)
        progs = progs + [goal]
    cdef _ProgSet ps = _ProgSet(progs)
    cdef int[::1] op = ps.op, pa = ps.pa, pb = ps.pb, off = ps.off
    cdef int[::1] kinds = kinds_a, lidx = lidx_a, ridx = ridx_a
    cdef int nax = len(axioms)
    cdef u64 atoms_c[MAX_ATOMS]
    cdef u64 succ_c[MAX_EDGES]
    cdef u64 pred_c[MAX_EDGES]
    cdef int n, bits
    cdef u64 counter, total, full
    for n in range(1, max_n + 1):
        bits = natoms * n + nroles * n * n
        total = (<u64>1) << bits
        full = ((<u64>1) << n) - 1
        counter = 0
        with nogil:
            while counter < total:
                _decode(counter, n, natoms, nroles, atoms_c, succ_c, pred_c)
                if _satisfies(&op[0], &pa[0], &pb[0], &off[0], &kinds[0],
                              &lidx[0], &ridx[0], nax, n, full,
                              atoms_c, succ_c, pred_c):
                    if goal_idx < 0 or _eval(&op[0], &pa[0], &pb[0],
                                             off[goal_idx], off[goal_idx + 1],
                                             n, full, atoms_c, succ_c, pred_c):
                        with gil:
                            return (n, counter)
                counter += 1
    return None


def find_disagreement(axioms1, axioms2, int natoms, int nroles, int max_n):
    _check_sizes(natoms, nroles, max_n)
    progs1, kinds1_a, lidx1_a, ridx1_a = _axiom_arrays(axioms1)
    progs2, kinds2_a, lidx2_a, ridx2_a = _axiom_arrays(axioms2)
    shift = len(progs1)
    cdef _ProgSet ps = _ProgSet(progs1 + progs2)
    lidx2_a = pyarray('i', [i + shift for i in lidx2_a])
    ridx2_a = pyarray('i', [i + shift for i in ridx2_a])
    cdef int[::1] op = ps.op, pa = ps.pa, pb = ps.pb, off = ps.off
    cdef int[::1] kinds1 = kinds1_a, lidx1 = lidx1_a, ridx1 = ridx1_a
    cdef int[::1] kinds2 = kinds2_a, lidx2 = lidx2_a, ridx2 = ridx2_a
    cdef int nax1 = len(axioms1), nax2 = len(axioms2)
    cdef u64 atoms_c[MAX_ATOMS]
    cdef u64 succ_c[MAX_EDGES]
    cdef u64 pred_c[MAX_EDGES]
    cdef int n, bits
    cdef bint s1, s2
    cdef u64 counter, total, full
    for n in range(1, max_n + 1):
        bits = natoms * n + nroles * n * n
        total = (<u64>1) << bits
        full = ((<u64>1) << n) - 1
        counter = 0
        with nogil:
            while counter < total:
                _decode(counter, n, natoms, nroles, atoms_c, succ_c, pred_c)
                s1 = _satisfies(&op[0], &pa[0], &pb[0], &off[0], &kinds1[0],
                                &lidx1[0], &ridx1[0], nax1, n, full,
                                atoms_c, succ_c, pred_c)
                s2 = _satisfies(&op[0], &pa[0], &pb[0], &off[0], &kinds2[0],
                                &lidx2[0], &ridx2[0], nax2, n, full,
                                atoms_c, succ_c, pred_c)
                if s1 != s2:
                    with gil:
                        return (n, counter)
                counter += 1
    return None


def find_nonmonotone(prog, int atom_idx, int natoms, int nroles, int max_n):
    _check_sizes(natoms, nroles, max_n)
    cdef _ProgSet ps = _ProgSet([prog])
    cdef int[::1] op = ps.op, pa = ps.pa, pb = ps.pb, off = ps.off
    cdef u64 atoms_c[MAX_ATOMS]
    cdef u64 succ_c[MAX_EDGES]
    cdef u64 pred_c[MAX_EDGES]
    cdef int n, bits
    cdef u64 counter, total, full, x1, x2, big, small
    cdef bint hit
    for n in range(1, max_n + 1):
        bits = natoms * n + nroles * n * n
        total = (<u64>1) << bits
        full = ((<u64>1) << n) - 1
        counter = 0
        with nogil:
            while counter < total:
                _decode(counter, n, natoms, nroles, atoms_c, succ_c, pred_c)
                for x2 in range(full + 1):
                    atoms_c[atom_idx] = x2
                    big = _eval(&op[0], &pa[0], &pb[0], off[0], off[1], n, full,
                                atoms_c, succ_c, pred_c)
                    x1 = (x2 - 1) & x2
                    hit = False
                    while True:
                        atoms_c[atom_idx] = x1
                        small = _eval(&op[0], &pa[0], &pb[0], off[0], off[1], n,
                                      full, atoms_c, succ_c, pred_c)
                        if small & ~big & full:
                            hit = True
                            break
                        if x1 == 0:
                            break
                        x1 = (x1 - 1) & x2
                    if hit:
                        with gil:
                            return (n, counter, x1, x2)
                counter += 1
    return None
