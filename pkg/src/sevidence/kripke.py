"""Brute-force Kripke semantics for K, used as a test oracle for the prover.

Frames are rooted at world 0.  Enumerating every relation on ``n`` worlds
and keeping one representative per isomorphism class of the part reachable
from the root covers every rooted model with at most ``n`` worlds; validity
is truth at the root of all of them under all valuations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .syntax import BOT, Atom, Bot, Box, Formula, Imp, with_fresh_occurrences

# kripke_first_failure handles n_atoms * n_worlds valuation bits per frame.
MAX_VALUATION_BITS = 14


@dataclass(frozen=True)
class KripkeModel:
    n_worlds: int
    successors: tuple[frozenset[int], ...]
    valuation: dict[str, frozenset[int]]    # atom -> worlds where it holds

    def holds(self, f: Formula, world: int = 0) -> bool:
        return _holds(self, f, world)

    def describe(self) -> str:
        edges = ", ".join(f"{w}->{v}" for w in range(self.n_worlds) for v in sorted(self.successors[w]))
        vals = "; ".join(f"{a}@{{{','.join(map(str, sorted(ws)))}}}"
                         for a, ws in sorted(self.valuation.items()))
        return f"worlds 0..{self.n_worlds - 1}; edges {edges or 'none'}; {vals or 'no atoms'}"


def _holds(m: KripkeModel, f: Formula, w: int) -> bool:
    tf = type(f)
    if tf is Bot:
        return False
    if tf is Atom:
        return w in m.valuation.get(f.name, ())
    if tf is Imp:
        return not _holds(m, f.left, w) or _holds(m, f.right, w)
    if tf is Box:
        return all(_holds(m, f.body, v) for v in m.successors[w])
    raise TypeError(f"not a modal formula: {f!r}")


def _reachable(succ: tuple[int, ...]) -> int:
    seen, frontier = 1, 1
    while frontier:
        nxt = 0
        for w in range(len(succ)):
            if frontier >> w & 1:
                nxt |= succ[w]
        frontier = nxt & ~seen
        seen |= nxt
    return seen


def _permute(succ: tuple[int, ...], perm: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(succ)
    for w, mask in enumerate(succ):
        image = 0
        for v in range(len(succ)):
            if mask >> v & 1:
                image |= 1 << perm[v]
        out[perm[w]] = image
    return tuple(out)


@lru_cache(maxsize=None)
def rooted_frames(n_worlds: int) -> np.ndarray:
    """Canonical rooted frames on ``n_worlds`` worlds, fewest reachable worlds first.

    Row ``f`` holds the successor bitmask of every world of frame ``f``.
    Edges leaving worlds unreachable from the root are dropped, then frames
    are identified up to permutations fixing the root.
    """
    perms = [(0,) + p for p in itertools.permutations(range(1, n_worlds))]
    seen: set[tuple[int, ...]] = set()
    for masks in itertools.product(range(1 << n_worlds), repeat=n_worlds):
        reach = _reachable(masks)
        succ = tuple(m if reach >> w & 1 else 0 for w, m in enumerate(masks))
        seen.add(min(_permute(succ, p) for p in perms))

    def order(s):
        return (bin(_reachable(s)).count("1"), sum(bin(m).count("1") for m in s), s)

    frames = sorted(seen, key=order)
    return np.array(frames, dtype=np.uint64).reshape(len(frames), n_worlds)


def tree_frames(max_nodes: int, max_depth: int) -> np.ndarray:
    """Every rooted tree (as a frame) with at most ``max_nodes`` nodes and given depth bound.

    Trees are padded with isolated worlds to ``max_nodes`` worlds.
    """
    found: set[tuple[int, ...]] = set()

    def grow(parents: list[int], depths: list[int]):
        succ = [0] * max_nodes
        for child, parent in enumerate(parents):
            if parent >= 0:
                succ[parent] |= 1 << child
        found.add(tuple(succ))
        if len(parents) == max_nodes:
            return
        # new nodes attach in BFS-compatible order to keep the search small
        last = parents[-1] if len(parents) > 1 else 0
        for p in range(last, len(parents)):
            if depths[p] < max_depth:
                grow(parents + [p], depths + [depths[p] + 1])

    grow([-1], [0])
    frames = sorted(found)
    return np.array(frames, dtype=np.uint64).reshape(len(frames), max_nodes)


def compile_modal(f: Formula) -> tuple[list[int], list[str]]:
    """Postfix program for the kernels, plus the atom names in index order."""
    index: dict[str, int] = {}
    prog: list[int] = []

    def go(g: Formula):
        tg = type(g)
        if tg is Imp:
            go(g.left)
            go(g.right)
            prog.append(kernels.OP_IMP)
        elif tg is Box:
            go(g.body)
            prog.append(kernels.OP_BOX)
        elif tg is Bot:
            prog.append(kernels.OP_BOT)
        elif tg is Atom:
            prog.append(index.setdefault(g.name, len(index)))
        else:
            raise TypeError(f"not a modal formula: {g!r}")

    go(f)
    return prog, list(index)


def first_failing_frame(f: Formula, frames: np.ndarray) -> int:
    prog, atoms = compile_modal(f)
    n_worlds = frames.shape[1]
    n_atoms = max(1, len(atoms))
    if n_atoms * n_worlds > MAX_VALUATION_BITS:
        raise ValueError(f"{len(atoms)} atoms on {n_worlds} worlds exceed the oracle's bound")
    return kernels.kripke_first_failure(prog, frames, n_atoms, n_worlds)


def is_valid(f: Formula, max_worlds: int = 4) -> bool:
    """True iff ``f`` holds at the root of every rooted model with at most ``max_worlds`` worlds."""
    return first_failing_frame(f, rooted_frames(max_worlds)) < 0


def countermodel(f: Formula, max_worlds: int = 4) -> KripkeModel | None:
    """A smallest-first model falsifying ``f`` at world 0, or None."""
    frames = rooted_frames(max_worlds)
    k = first_failing_frame(f, frames)
    if k < 0:
        return None
    succ = tuple(frozenset(v for v in range(max_worlds) if int(frames[k, w]) >> v & 1)
                 for w in range(max_worlds))
    reach = _reachable(tuple(int(x) for x in frames[k]))
    worlds = [w for w in range(max_worlds) if reach >> w & 1]
    _, atoms = compile_modal(f)
    for bits in itertools.product((False, True), repeat=len(atoms) * len(worlds)):
        val = {a: frozenset(w for j, w in enumerate(worlds) if bits[i * len(worlds) + j])
               for i, a in enumerate(atoms)}
        m = KripkeModel(max_worlds, succ, val)
        if not m.holds(f):
            return _restrict(m, worlds)
    raise AssertionError("kernel reported a failing frame but no valuation fails")


def _restrict(m: KripkeModel, worlds: list[int]) -> KripkeModel:
    rename = {w: i for i, w in enumerate(worlds)}
    succ = tuple(frozenset(rename[v] for v in m.successors[w]) for w in worlds)
    val = {a: frozenset(rename[w] for w in ws) for a, ws in m.valuation.items()}
    return KripkeModel(len(worlds), succ, val)


def modal_formulas(atoms: tuple[str, ...] = ("P", "Q"), max_depth: int = 2, max_size: int = 9,
                   with_bot: bool = True) -> list[Formula]:
    """Every modal formula over ``atoms`` within the bounds, smallest first.

    Size counts AST nodes (atoms, ``bot``, implications and boxes).  Each
    returned formula has its own, pairwise distinct box occurrences.
    """
    leaves: list[Formula] = [Atom(a) for a in atoms] + ([BOT] if with_bot else [])
    # table[n][d]: formulas of exactly n nodes and modal depth at most d (boxes shared)
    table: list[list[list[Formula]]] = [[[] for _ in range(max_depth + 1)]]
    for n in range(1, max_size + 1):
        row = []
        for d in range(max_depth + 1):
            if n == 1:
                row.append(list(leaves))
                continue
            out = [Box(g) for g in table[n - 1][d - 1]] if d > 0 else []
            for i in range(1, n - 1):
                out += [Imp(a, b) for a in table[i][d] for b in table[n - 1 - i][d]]
            row.append(out)
        table.append(row)
    return [with_fresh_occurrences(f) for n in range(1, max_size + 1) for f in table[n][max_depth]]
