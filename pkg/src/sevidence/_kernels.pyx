# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot loops in ``_kernels_py``; same signatures and results."""

import numpy as np
from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free

OP_BOT = -1
OP_IMP = -2
OP_BOX = -3

BACKEND = "compiled"

cdef uint64_t[6] _LOW_PATTERNS
_LOW_PATTERNS[0] = 0xAAAAAAAAAAAAAAAAULL
_LOW_PATTERNS[1] = 0xCCCCCCCCCCCCCCCCULL
_LOW_PATTERNS[2] = 0xF0F0F0F0F0F0F0F0ULL
_LOW_PATTERNS[3] = 0xFF00FF00FF00FF00ULL
_LOW_PATTERNS[4] = 0xFFFF0000FFFF0000ULL
_LOW_PATTERNS[5] = 0xFFFFFFFF00000000ULL


def taut_check(prog, int n_atoms):
    cdef int64_t[::1] p = np.ascontiguousarray(prog, dtype=np.int64)
    cdef Py_ssize_t L = p.shape[0]
    cdef Py_ssize_t i
    cdef int low = n_atoms if n_atoms < 6 else 6
    cdef uint64_t mask = 0xFFFFFFFFFFFFFFFFULL if low == 6 else ((1ULL << (1 << low)) - 1)
    cdef uint64_t nblocks = 1ULL << (n_atoms - low)
    cdef uint64_t b, a, x, y
    cdef int64_t op
    cdef Py_ssize_t top
    cdef uint64_t* stack = <uint64_t*> malloc((L + 1) * sizeof(uint64_t))
    if stack == NULL:
        raise MemoryError()
    try:
        for b in range(nblocks):
            top = 0
            for i in range(L):
                op = p[i]
                if op >= 0:
                    if op < 6:
                        stack[top] = _LOW_PATTERNS[op] & mask
                    elif (b >> (op - 6)) & 1:
                        stack[top] = mask
                    else:
                        stack[top] = 0
                    top += 1
                elif op == -1:
                    stack[top] = 0
                    top += 1
                elif op == -2:
                    y = stack[top - 1]
                    x = stack[top - 2]
                    top -= 1
                    stack[top - 1] = ((~x) & mask) | y
                else:
                    raise ValueError("bad opcode %d" % op)
            if stack[top - 1] != mask:
                return False
        return True
    finally:
        free(stack)


def kripke_first_failure(prog, succ, int n_atoms, int n_worlds):
    cdef int64_t[::1] p = np.ascontiguousarray(prog, dtype=np.int64)
    cdef uint64_t[:, ::1] s = np.ascontiguousarray(succ, dtype=np.uint64)
    cdef Py_ssize_t L = p.shape[0]
    cdef Py_ssize_t nframes = s.shape[0]
    cdef int lanes_bits = n_atoms * n_worlds
    cdef Py_ssize_t words = (1 << lanes_bits) // 64 if lanes_bits >= 6 else 1
    cdef uint64_t ones = 0xFFFFFFFFFFFFFFFFULL if lanes_bits >= 6 else ((1ULL << (1 << lanes_bits)) - 1)
    cdef Py_ssize_t cell = n_worlds * words
    cdef Py_ssize_t f, i, w, v, k, top, r
    cdef int64_t op
    cdef uint64_t acc
    cdef uint64_t* atoms = <uint64_t*> malloc((n_atoms * cell + 1) * sizeof(uint64_t))
    cdef uint64_t* stack = <uint64_t*> malloc(((L + 1) * cell + 1) * sizeof(uint64_t))
    cdef uint64_t* a_ptr
    cdef uint64_t* b_ptr
    cdef uint64_t* out
    cdef uint64_t* tmp = <uint64_t*> malloc((cell + 1) * sizeof(uint64_t))
    if atoms == NULL or stack == NULL or tmp == NULL:
        free(atoms)
        free(stack)
        free(tmp)
        raise MemoryError()
    try:
        for i in range(n_atoms * cell):
            atoms[i] = 0
        for i in range(n_atoms):
            for w in range(n_worlds):
                for r in range(1 << lanes_bits):
                    if (r >> (i * n_worlds + w)) & 1:
                        atoms[i * cell + w * words + r // 64] |= 1ULL << (r % 64)
        for f in range(nframes):
            top = 0
            for i in range(L):
                op = p[i]
                out = stack + top * cell
                if op >= 0:
                    for k in range(cell):
                        out[k] = atoms[op * cell + k]
                    top += 1
                elif op == -1:
                    for k in range(cell):
                        out[k] = 0
                    top += 1
                elif op == -2:
                    a_ptr = stack + (top - 2) * cell
                    b_ptr = stack + (top - 1) * cell
                    for k in range(cell):
                        a_ptr[k] = ((~a_ptr[k]) & ones) | b_ptr[k]
                    top -= 1
                elif op == -3:
                    a_ptr = stack + (top - 1) * cell
                    for w in range(n_worlds):
                        for k in range(words):
                            acc = ones
                            for v in range(n_worlds):
                                if (s[f, w] >> v) & 1:
                                    acc &= a_ptr[v * words + k]
                            tmp[w * words + k] = acc
                    for k in range(cell):
                        a_ptr[k] = tmp[k]
                else:
                    raise ValueError("bad opcode %d" % op)
            a_ptr = stack + (top - 1) * cell
            for k in range(words):
                if a_ptr[k] != ones:
                    return f
        return -1
    finally:
        free(atoms)
        free(stack)
        free(tmp)
