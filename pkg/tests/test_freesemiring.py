import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from sevidence.freesemiring import FREE, EvaluationError, eq_terms, eval_polynomial, eval_term, normalize
from sevidence.parser import parse_term
from sevidence.semiring import TROPICAL, VITERBI
from sevidence.syntax import Const, Prod, Sum, Var

from conftest import COUNTING, FINITE_INSTANCES, INSTANCES, random_term, terms


def expand(t) -> list[tuple[str, ...]]:
    """Oracle: distribute by hand into a sorted list of words (names only)."""
    tt = type(t).__name__
    if tt in ("Const", "Var"):
        return [(t.name,)]
    if tt == "Zero":
        return []
    if tt == "One":
        return [()]
    left, right = expand(t.left), expand(t.right)
    if tt == "Sum":
        return sorted(left + right)
    return sorted(a + b for a in left for b in right)


def words(p) -> list[tuple[str, ...]]:
    return sorted(tuple(a.name for a in w) for w in p)


def T(text):
    return parse_term(text)


class TestNormalize:
    def test_right_distribution(self):
        assert words(normalize(T("(x+y)*z"))) == [("x", "z"), ("y", "z")]

    def test_units(self):
        assert words(normalize(T("(x+0)*1"))) == [("x",)]

    def test_multiplicity_kept(self):
        p = normalize(T("x*(y+y)"))
        assert words(p) == [("x", "y"), ("x", "y")]
        # counting oracle with every atom at 1 separates 2 from 1
        one = {"x": 1, "y": 1}
        assert eval_term(T("x*(y+y)"), {}, one, COUNTING) == 2
        assert eval_term(T("x*y"), {}, one, COUNTING) == 1

    @settings(max_examples=400)
    @given(terms(8))
    def test_matches_oracle(self, t):
        assert words(normalize(t)) == expand(t)

    def test_to_term_round_trip(self):
        rng = random.Random(5)
        for _ in range(200):
            p = normalize(random_term(rng))
            assert normalize(p.to_term()) == p


class TestEq:
    def test_examples(self):
        assert eq_terms(T("x*(y*z)"), T("(x*y)*z"))
        assert not eq_terms(T("x*y"), T("y*x"))
        assert eq_terms(T("x+y"), T("y+x"))

    def test_separation_by_free_evaluation(self):
        rng = random.Random(11)
        for _ in range(300):
            s, t = random_term(rng, 8), random_term(rng, 8)
            if eq_terms(s, t):
                continue
            free_s = eval_term(s, *self._identity(s), FREE)
            free_t = eval_term(t, *self._identity(t), FREE)
            assert free_s != free_t

    @staticmethod
    def _identity(t):
        names = [u for u in _leaves(t)]
        interp = {u.name: normalize(u) for u in names if type(u) is Const}
        val = {u.name: normalize(u) for u in names if type(u) is Var}
        return interp, val


def _leaves(t):
    if type(t) in (Sum, Prod):
        yield from _leaves(t.left)
        yield from _leaves(t.right)
    elif type(t) in (Const, Var):
        yield t


class TestEval:
    def test_tropical(self):
        v = {"x": Fraction(2), "y": Fraction(3)}
        assert eval_term(T("x*y + 1"), {}, v, TROPICAL) == 0

    def test_one(self):
        for k in INSTANCES:
            assert eval_term(T("1"), {}, {}, k) == k.one

    def test_viterbi(self):
        v = {"x": Fraction(1, 2), "y": Fraction(1, 2)}
        assert eval_term(T("x*y + x"), {}, v, VITERBI) == Fraction(1, 2)

    def test_unbound(self):
        with pytest.raises(EvaluationError):
            eval_term(T("x"), {}, {}, VITERBI)
        with pytest.raises(EvaluationError):
            eval_term(T("a"), {}, {}, VITERBI)

    @pytest.mark.parametrize("k", FINITE_INSTANCES + [COUNTING, TROPICAL, VITERBI],
                             ids=lambda k: k.descriptor)
    def test_normalize_sound(self, k):
        rng = random.Random(17)
        for _ in range(200):
            t = random_term(rng)
            interp = {c: k.sample(rng) for c in "ab"}
            val = {x: k.sample(rng) for x in "xyz"}
            assert eval_term(t, interp, val, k) == eval_polynomial(normalize(t), interp, val, k)


class TestEqProperties:
    @settings(max_examples=200)
    @given(terms(6), terms(6), terms(6))
    def test_congruence(self, s, t, u):
        if eq_terms(s, t):
            assert eq_terms(Sum(s, u), Sum(t, u))
            assert eq_terms(Prod(u, s), Prod(u, t))
            assert eq_terms(Prod(s, u), Prod(t, u))

    @settings(max_examples=200)
    @given(terms(6), terms(6))
    def test_symmetric(self, s, t):
        assert eq_terms(s, t) == eq_terms(t, s)

    @settings(max_examples=200)
    @given(terms(6), terms(6), terms(6))
    def test_semiring_equations(self, s, t, u):
        assert eq_terms(Sum(Sum(s, t), u), Sum(s, Sum(t, u)))
        assert eq_terms(Prod(s, Sum(t, u)), Sum(Prod(s, t), Prod(s, u)))
        assert eq_terms(Prod(Sum(t, u), s), Sum(Prod(t, s), Prod(u, s)))
