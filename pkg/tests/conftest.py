"""Shared strategies and the counting semiring used as an independent oracle."""

from __future__ import annotations

import random

import pytest
from hypothesis import strategies as st

from sevidence.semiring import BOOLEAN, LUKASIEWICZ, TROPICAL, VITERBI, PowersetSemiring, Semiring
from sevidence.freesemiring import FREE
from sevidence.syntax import BOT, ONE, ZERO, Atom, Const, Ev, Imp, Prod, Sum, Var


class CountingSemiring(Semiring):
    """(N, +, *, 0, 1).  Separates multiplicities that idempotent instances merge."""

    name = "counting"
    zero, one = 0, 1

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def contains(self, value):
        return type(value) is int and value >= 0

    def sample(self, rng: random.Random):
        return rng.randint(0, 5)

    def parse_value(self, text):
        return int(text)


COUNTING = CountingSemiring()
POWERSET = PowersetSemiring(["p", "q", "r"])
INSTANCES = [BOOLEAN, VITERBI, TROPICAL, LUKASIEWICZ, POWERSET, FREE]
FINITE_INSTANCES = [BOOLEAN, POWERSET]

VAR_NAMES = ("x", "y", "z")
CONST_NAMES = ("a", "b")
ATOM_NAMES = ("P", "Q", "R")


@pytest.fixture(params=INSTANCES, ids=lambda k: k.descriptor)
def semiring(request):
    return request.param


def leaves():
    return st.one_of(st.sampled_from([Var(n) for n in VAR_NAMES]),
                     st.sampled_from([Const(n) for n in CONST_NAMES]),
                     st.just(ZERO), st.just(ONE))


def terms(max_leaves: int = 6):
    return st.recursive(leaves(), lambda sub: st.builds(Sum, sub, sub) | st.builds(Prod, sub, sub),
                        max_leaves=max_leaves)


def formulas(max_leaves: int = 6):
    base = st.sampled_from([Atom(a) for a in ATOM_NAMES]) | st.just(BOT)
    return st.recursive(base, lambda sub: st.builds(Imp, sub, sub) | st.builds(Ev, terms(3), sub),
                        max_leaves=max_leaves)


def term_size(t) -> int:
    if type(t) in (Sum, Prod):
        return 1 + term_size(t.left) + term_size(t.right)
    return 1


def random_term(rng: random.Random, max_nodes: int = 12):
    """Uniform-ish random term with at most ``max_nodes`` nodes."""
    def go(budget):
        if budget < 3 or rng.random() < 0.3:
            return rng.choice([Var(n) for n in VAR_NAMES] + [Const(n) for n in CONST_NAMES]
                              + [ZERO, ONE])
        left = rng.randint(1, budget - 2)
        cls = rng.choice((Sum, Prod))
        return cls(go(left), go(budget - 1 - left))
    return go(rng.randint(1, max_nodes))
