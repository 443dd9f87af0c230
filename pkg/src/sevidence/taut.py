"""Propositional tautology checking over the full language.

Each maximal ``t:A`` (or ``[]A``) subformula is treated as an opaque atom, so
an SE formula is a tautology iff its propositional skeleton is.
"""

from __future__ import annotations

from functools import lru_cache

from . import kernels
from .syntax import BOT, TOP, Bot, Formula, Imp

# Above this many atoms, split on one atom and recurse.
MAX_TABLE_ATOMS = 22


def compile_skeleton(f: Formula) -> tuple[list[int], list[Formula]]:
    """Postfix program over atom indices, plus the formulas standing for the atoms."""
    index: dict[Formula, int] = {}
    prog: list[int] = []

    def go(g: Formula):
        tg = type(g)
        if tg is Imp:
            go(g.left)
            go(g.right)
            prog.append(kernels.OP_IMP)
        elif tg is Bot:
            prog.append(kernels.OP_BOT)
        else:
            k = index.get(g)
            if k is None:
                k = index[g] = len(index)
            prog.append(k)

    go(f)
    return prog, list(index)


def _assign(f: Formula, atom: Formula, value: bool) -> Formula:
    if f == atom:
        return TOP if value else BOT
    if type(f) is Imp:
        left = _assign(f.left, atom, value)
        right = _assign(f.right, atom, value)
        if left == BOT or right == TOP:
            return TOP
        if left == TOP:
            return right
        return Imp(left, right)
    return f


@lru_cache(maxsize=1 << 16)
def is_tautology(f: Formula) -> bool:
    prog, atoms = compile_skeleton(f)
    if len(atoms) <= MAX_TABLE_ATOMS:
        return kernels.taut_check(prog, len(atoms))
    pivot = atoms[0]
    return is_tautology(_assign(f, pivot, True)) and is_tautology(_assign(f, pivot, False))


def skeleton_atoms(f: Formula) -> list[Formula]:
    """Atoms of the propositional skeleton: plain atoms and maximal ``t:A``/``[]A``."""
    return compile_skeleton(f)[1]


__all__ = ["is_tautology", "compile_skeleton", "skeleton_atoms", "MAX_TABLE_ATOMS"]
