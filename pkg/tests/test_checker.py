import json

import pytest
from hypothesis import given, settings, strategies as st

from sevidence.deduction import (DEFAULT_THEORY, JV, MP, AxiomJ, ProofCheckError, SEProof,
                                 SemiringStep, TheoryMember, check_proof, is_valid_proof,
                                 match_semiring_step)
from sevidence.parser import parse_formula, parse_term
from sevidence.printer import format_formula

from sevidence.syntax import substitute

from conftest import terms
from corpus import MUTATIONS, PROOFS, THEOREMS, mutated


def F(text):
    return parse_formula(text)


@pytest.mark.parametrize("name", list(PROOFS))
def test_corpus_checks(name):
    theory, proof = PROOFS[name]
    theorem = check_proof(theory, proof)
    if name in THEOREMS:
        assert theorem == F(THEOREMS[name])


@pytest.mark.parametrize("name,base,index,step,expected", MUTATIONS, ids=[m[0] for m in MUTATIONS])
def test_mutation_rejected(name, base, index, step, expected):
    theory, proof = mutated(base, index, step)
    with pytest.raises(ProofCheckError) as e:
        check_proof(theory, proof)
    assert e.value.step == expected


@pytest.mark.parametrize("name", list(PROOFS))
def test_json_round_trip(name):
    theory, proof = PROOFS[name]
    again = SEProof.from_json(proof.to_json())
    assert format_formula(check_proof(theory, again)) == format_formula(check_proof(theory, proof))
    assert json.loads(again.to_json()) == json.loads(proof.to_json())


def test_hypotheses_are_not_members():
    proof = SEProof([TheoryMember(F("x:(P -> Q)")), TheoryMember(F("y:P")),
                     AxiomJ(F("x:(P -> Q) -> y:P -> x*y:Q"))])
    assert not is_valid_proof(DEFAULT_THEORY, proof)


def test_deduction_theorem_fails_without_hypothesis():
    _, proof = PROOFS["zero justifies from hypothesis"]
    with pytest.raises(ProofCheckError) as e:
        check_proof(DEFAULT_THEORY, proof)
    assert e.value.step == 0


def test_commuting_product_rejected():
    step = SemiringStep(F("u:w:P"), "w", parse_term("x*y"), parse_term("y*x"), "am")
    with pytest.raises(ProofCheckError, match="does not rewrite"):
        check_proof(DEFAULT_THEORY, SEProof([step]))


def test_empty_proof():
    with pytest.raises(ProofCheckError):
        check_proof(DEFAULT_THEORY, SEProof([]))


def test_jv_without_claim():
    proof = SEProof([AxiomJ(F("x:(P -> Q) -> y:P -> x*y:Q")), JV(0, "x", parse_term("a"))])
    assert check_proof(DEFAULT_THEORY, proof) == F("a:(P -> Q) -> y:P -> a*y:Q")


def test_mp_order_matters():
    proof = SEProof([AxiomJ(F("x:(P -> P) -> y:P -> x*y:P")), TheoryMember(F("c_cl:(P -> P)")),
                     MP(0, 1)])
    with pytest.raises(ProofCheckError):
        check_proof(DEFAULT_THEORY, proof)


class TestMatchSemiringStep:
    def test_reassociation(self):
        assert match_semiring_step(F("u:((x+y)+z):P"), F("u:(x+(y+z)):P"))[0] == "a+"

    def test_identical(self):
        assert match_semiring_step(F("u:x:P"), F("u:x:P")) is None

    def test_left_distribution(self):
        m = match_semiring_step(F("u:(x*(y+z)):P"), F("u:(x*y + x*z):P"))
        assert m is not None and m[0] == "dl"

    def test_inconsistent_positions(self):
        # two different rewrites at once are not one scheme instance
        assert match_semiring_step(F("x+y:P -> (x*1):Q"), F("y+x:P -> x:Q")) is None

    def test_same_rewrite_everywhere(self):
        m = match_semiring_step(F("(x+y):P -> (x+y):Q"), F("(y+x):P -> (y+x):Q"))
        assert m == ("c+", parse_term("x+y"), parse_term("y+x"))


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(sorted(PROOFS)), st.sampled_from(["x", "y", "u", "w"]), terms(4))
def test_jv_closure(name, var, term):
    theory, proof = PROOFS[name]
    extended = SEProof(list(proof.steps) + [JV(len(proof) - 1, var, term)])
    theorem = check_proof(theory, proof)
    assert check_proof(theory, extended) == substitute(theorem, var, term)
