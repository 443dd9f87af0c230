import itertools
import random

import pytest

from sevidence.kripke import (KripkeModel, countermodel, first_failing_frame,
                              is_valid, modal_formulas, rooted_frames, tree_frames)
from sevidence.parser import parse_formula
from sevidence.printer import format_formula
from sevidence.syntax import BOT, Atom, Box, Imp, modal_depth


def M(text):
    return parse_formula(text, "modal")


def naive_valid(f, n_worlds: int) -> bool:
    """Oracle: every relation on n worlds, every valuation, truth at world 0."""
    atoms = sorted({a for a in _atoms(f)})
    pairs = [(w, v) for w in range(n_worlds) for v in range(n_worlds)]
    for edges in itertools.product((False, True), repeat=len(pairs)):
        succ = tuple(frozenset(v for (u, v), on in zip(pairs, edges) if on and u == w)
                     for w in range(n_worlds))
        for bits in itertools.product((False, True), repeat=len(atoms) * n_worlds):
            val = {a: frozenset(w for w in range(n_worlds) if bits[i * n_worlds + w])
                   for i, a in enumerate(atoms)}
            if not KripkeModel(n_worlds, succ, val).holds(f):
                return False
    return True


def _atoms(f):
    if type(f) is Atom:
        yield f.name
    elif type(f) is Imp:
        yield from _atoms(f.left)
        yield from _atoms(f.right)
    elif type(f) is Box:
        yield from _atoms(f.body)


def random_modal(rng, size):
    if size <= 1:
        return rng.choice([Atom("P"), BOT])
    if rng.random() < 0.35:
        return Box(random_modal(rng, size - 1))
    k = rng.randint(1, size - 2) if size > 2 else 1
    return Imp(random_modal(rng, k), random_modal(rng, max(1, size - 1 - k)))


def test_frame_counts():
    # one world: with or without a loop; two worlds: 2 with the other world
    # unreachable, 8 with root -> 1 plus any subset of the three other edges
    assert len(rooted_frames(1)) == 2
    assert len(rooted_frames(2)) == 10


@pytest.mark.parametrize("n_worlds", [2, 3])
def test_kernel_matches_naive_enumeration(n_worlds):
    rng = random.Random(n_worlds)
    for _ in range(60 if n_worlds == 3 else 200):
        f = random_modal(rng, rng.randint(3, 8))
        assert is_valid(f, n_worlds) == naive_valid(f, n_worlds), format_formula(f)


def test_known_verdicts():
    assert is_valid(M("[](P -> Q) -> []P -> []Q"), 3)
    assert not is_valid(M("[]P -> P"))
    assert not is_valid(M("[]P -> [][]P"))
    assert is_valid(M("P -> P"))


def test_countermodel_falsifies():
    for text in ["[]P -> P", "[]P -> [][]P", "[](P | Q) -> []P | []Q", "~[]bot"]:
        f = M(text)
        m = countermodel(f)
        assert m is not None and not m.holds(f)
        assert m.describe().startswith("worlds 0..")
    assert countermodel(M("[](P -> P)")) is None


def test_tree_frames_are_trees():
    for row in tree_frames(5, 2):
        indegree = [0] * 5
        for mask in row:
            for v in range(5):
                indegree[v] += int(mask) >> v & 1
        assert indegree[0] == 0 and max(indegree) <= 1


def test_small_trees_suffice_on_fragment_sample():
    # a K-countermodel of modal depth d unravels to a tree of depth d
    trees = tree_frames(6, 2)
    formulas = modal_formulas()[::11]
    for f in formulas:
        assert modal_depth(f) <= 2
        assert (first_failing_frame(f, trees) < 0) == is_valid(f), format_formula(f)


def test_fragment_shape():
    fs = modal_formulas()
    assert len(fs) == len({format_formula(f) for f in fs})
    assert all(modal_depth(f) <= 2 for f in fs)
    occs = [b.occ for f in fs[-50:] for b in _boxes(f)]
    assert len(occs) == len(set(occs))


def _boxes(f):
    if type(f) is Box:
        yield f
        yield from _boxes(f.body)
    elif type(f) is Imp:
        yield from _boxes(f.left)
        yield from _boxes(f.right)


def test_too_many_atoms():
    f = M("P1 & P2 & P3 & P4 -> P1")
    with pytest.raises(ValueError):
        first_failing_frame(f, rooted_frames(4))
