from hypothesis import given, settings

import pytest

from sevidence.parser import ParseError, parse_formula, parse_term
from sevidence.printer import format_formula, format_term
from sevidence.syntax import (BOT, TOP, ZERO, Atom, Box, Const, Ev, Imp, Polarity, Prod, Sum, Var,
                              annotate_polarity, apply_substitution, conj, disj,
                              project_modal, project_propositional, substitute)

from conftest import formulas, terms

P, Q = Atom("P"), Atom("Q")
x, y, z, u, w = (Var(n) for n in "xyzuw")


def j(text):
    return parse_formula(text)


class TestParser:
    def test_axiom_j_shape(self):
        f = j("x:(P -> Q) -> (y:P -> x*y:Q)")
        assert f == Imp(Ev(x, Imp(P, Q)), Imp(Ev(y, P), Ev(Prod(x, y), Q)))

    def test_zero_evidence(self):
        assert j("0:P") == Ev(ZERO, P)

    def test_precedence(self):
        f = j("(x+y)*z : P")
        assert f == Ev(Prod(Sum(x, y), z), P)
        # * over +, : over ->
        assert parse_term("x+y*z") == Sum(x, Prod(y, z))
        assert j("x:P -> Q") == Imp(Ev(x, P), Q)
        assert j("P -> Q -> P") == Imp(P, Imp(Q, P))

    def test_naming_convention(self):
        assert parse_term("a") == Const("a")
        assert parse_term("x") == Var("x")
        assert parse_term("consts: k\nk*x") == Prod(Const("k"), x)

    def test_sugar(self):
        assert j("top") == TOP
        assert j("P & Q") == conj(P, Q)
        assert j("P | Q") == disj(P, Q)
        assert j("~P") == Imp(P, BOT)

    def test_modal_box(self):
        f = parse_formula("[]P -> P", "modal")
        assert type(f.left) is Box and f.left.body == P

    def test_box_rejected_outside_modal(self):
        with pytest.raises(ParseError):
            parse_formula("[]P", "propositional")
        with pytest.raises(ParseError):
            parse_formula("x:P", "modal")

    def test_error_position(self):
        with pytest.raises(ParseError) as e:
            j("P ->\n  (Q -> ")
        assert e.value.line == 2
        assert e.value.expected

    def test_reserved_names(self):
        with pytest.raises(ParseError):
            parse_term("_s1")
        assert parse_term("_s1", allow_reserved=True) == Var("_s1")

    @settings(max_examples=300)
    @given(formulas())
    def test_round_trip(self, f):
        assert j(format_formula(f)) == f
        assert j(format_formula(f, full=True)) == f
        assert j(format_formula(f, sugar=True)) == f

    @settings(max_examples=300)
    @given(terms())
    def test_term_round_trip(self, t):
        assert parse_term(format_term(t)) == t
        assert parse_term(format_term(t, full=True)) == t


class TestSubstitution:
    def test_replacement(self):
        f = Ev(u, Ev(Prod(Var("r"), w), Atom("B")))
        s, t = Var("s"), Var("t")
        assert substitute(f, "w", Sum(s, t)) == Ev(u, Ev(Prod(Var("r"), Sum(s, t)), Atom("B")))

    def test_absent_variable(self):
        assert substitute(Imp(P, Q), "x", y) == Imp(P, Q)

    def test_self_product(self):
        assert substitute(Ev(x, P), "x", Prod(x, x)) == Ev(Prod(x, x), P)

    def test_simultaneous_swap(self):
        f = conj(Ev(x, P), Ev(y, Q))
        assert apply_substitution(f, {"x": y, "y": x}) == conj(Ev(y, P), Ev(x, Q))

    def test_identity(self):
        f = conj(Ev(x, P), Ev(y, Q))
        assert apply_substitution(f, {}) == f
        assert apply_substitution(f, {"x": x}) == f

    def test_single_variable_matches_substitute(self):
        f = Ev(x, P)
        t = Sum(x, parse_term("1"))
        assert apply_substitution(f, {"x": t}) == substitute(f, "x", t)


class TestProjection:
    def test_axiom_j_projects_to_k(self):
        f = project_modal(j("x:(P -> Q) -> (y:P -> x*y:Q)"))
        assert format_formula(f) == "[](P -> Q) -> []P -> []Q"

    def test_no_terms(self):
        assert project_modal(Imp(P, BOT)) == Imp(P, BOT)

    def test_propositional(self):
        assert project_propositional(j("x:P -> P")) == Imp(P, P)
        assert project_propositional(Imp(P, Q)) == Imp(P, Q)
        f = project_propositional(j("s:(P -> Q) -> (t:P -> s*t:Q)"))
        assert f == Imp(Imp(P, Q), Imp(P, Q))

    def test_fresh_occurrences(self):
        f = project_modal(j("x:P -> x:P"))
        assert f.left.occ != f.right.occ


class TestPolarity:
    def test_implication(self):
        f = parse_formula("[]P -> []Q", "modal")
        pol = annotate_polarity(f)
        assert pol[f.left.occ] is Polarity.NEGATIVE
        assert pol[f.right.occ] is Polarity.POSITIVE

    def test_nested(self):
        f = parse_formula("[]([]P -> Q)", "modal")
        pol = annotate_polarity(f)
        assert pol[f.occ] is Polarity.POSITIVE
        assert pol[f.body.left.occ] is Polarity.NEGATIVE
