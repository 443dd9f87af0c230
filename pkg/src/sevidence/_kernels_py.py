"""Pure-Python versions of the hot loops (used when the compiled module is absent).

Programs are postfix lists of ints: ``k >= 0`` pushes atom ``k``, and the
negative opcodes below combine stack entries.
"""

from __future__ import annotations

import numpy as np

OP_BOT = -1
OP_IMP = -2
OP_BOX = -3

BACKEND = "python"


def _columns(n_atoms: int) -> tuple[list[int], int]:
    rows = 1 << n_atoms
    full = (1 << rows) - 1
    cols = []
    for a in range(n_atoms):
        # bit r of column a is bit a of r
        block = ((1 << (1 << a)) - 1) << (1 << a)
        period = 1 << (a + 1)
        col = block
        width = period
        while width < rows:
            col |= col << width
            width *= 2
        cols.append(col & full)
    return cols, full


def taut_check(prog, n_atoms: int) -> bool:
    """True iff the program evaluates to true under every assignment of its atoms."""
    cols, full = _columns(n_atoms)
    stack: list[int] = []
    push = stack.append
    pop = stack.pop
    for op in prog:
        if op >= 0:
            push(cols[op])
        elif op == OP_BOT:
            push(0)
        elif op == OP_IMP:
            b = pop()
            a = pop()
            push((full ^ a) | b)
        else:
            raise ValueError(f"bad opcode {op}")
    return stack[-1] == full


def kripke_first_failure(prog, succ: np.ndarray, n_atoms: int, n_worlds: int) -> int:
    """Index of the first frame whose root fails the formula under some valuation, or -1.

    ``succ[f, w]`` is the successor bitmask of world ``w`` in frame ``f``.
    Valuations are enumerated bit-parallel: lane ``r`` of the
    ``2**(n_atoms*n_worlds)``-bit word assigns atom ``a`` at world ``w`` the
    bit ``a*n_worlds + w`` of ``r``.
    """
    lanes = 1 << (n_atoms * n_worlds)
    words = max(1, lanes // 64)
    nframes = succ.shape[0]
    atom_vals = np.zeros((n_atoms, n_worlds, words), dtype=np.uint64)
    for a in range(n_atoms):
        for w in range(n_worlds):
            bit = a * n_worlds + w
            for r in range(lanes):
                if r >> bit & 1:
                    atom_vals[a, w, r // 64] |= np.uint64(1) << np.uint64(r % 64)
    ones = np.uint64(0xFFFFFFFFFFFFFFFF) if lanes >= 64 else np.uint64((1 << lanes) - 1)
    edge = np.zeros((nframes, n_worlds, n_worlds, 1), dtype=np.uint64)
    for w in range(n_worlds):
        for v in range(n_worlds):
            edge[:, w, v, 0] = np.where((succ[:, w] >> v) & 1, ones, np.uint64(0))
    stack: list[np.ndarray] = []
    for op in prog:
        if op >= 0:
            stack.append(np.broadcast_to(atom_vals[op], (nframes, n_worlds, words)))
        elif op == OP_BOT:
            stack.append(np.zeros((nframes, n_worlds, words), dtype=np.uint64))
        elif op == OP_IMP:
            b = stack.pop()
            a = stack.pop()
            stack.append((a ^ ones) | b)
        elif op == OP_BOX:
            a = stack.pop()
            out = np.empty((nframes, n_worlds, words), dtype=np.uint64)
            for w in range(n_worlds):
                acc = np.full((nframes, words), ones, dtype=np.uint64)
                for v in range(n_worlds):
                    acc &= a[:, v, :] | (edge[:, w, v, :] ^ ones)
                out[:, w, :] = acc
            stack.append(out)
        else:
            raise ValueError(f"bad opcode {op}")
    root = stack[-1][:, 0, :]
    bad = np.nonzero((root != ones).any(axis=1))[0]
    return int(bad[0]) if len(bad) else -1
