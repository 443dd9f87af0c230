import pytest

from sevidence.deduction import (DEFAULT_THEORY, JV, MP, AxiomJ, AxiomJPlus, CapabilityError,
                                 PropTaut, SEProof, SemiringStep, TheoryDescriptor, TheoryMember,
                                 check_proof, internalize)
from sevidence.parser import parse_formula, parse_term
from sevidence.syntax import Const, Ev, Prod, is_ground

from corpus import PROOFS


def expected_term(theory, proof, i=None):
    """Oracle: constants at leaves, major*minor at MP, unchanged through jv."""
    i = len(proof) - 1 if i is None else i
    s = proof[i]
    if type(s) is MP:
        return Prod(expected_term(theory, proof, s.major), expected_term(theory, proof, s.minor))
    if type(s) is JV:
        return expected_term(theory, proof, s.source)
    if type(s) is PropTaut:
        return Const("c_cl")
    if type(s) is AxiomJ:
        return Const("c_j")
    if type(s) is AxiomJPlus:
        return Const("c_jp")
    if type(s) is SemiringStep:
        return theory.scheme_constant(s.scheme)
    return theory.justifier(s.formula)


@pytest.mark.parametrize("name", list(PROOFS))
def test_corpus_internalizes(name):
    theory, proof = PROOFS[name]
    res = internalize(theory, proof)
    assert is_ground(res.term)
    assert check_proof(theory, res.proof) == res.statement
    assert res.statement == Ev(res.term, check_proof(theory, proof))
    assert res.term == expected_term(theory, proof)


def test_axiom_case():
    a = parse_formula("x:(P -> Q) -> y:P -> x*y:Q")
    res = internalize(DEFAULT_THEORY, SEProof([AxiomJ(a)]))
    assert res.term == Const("c_j")
    assert res.proof.steps == (TheoryMember(Ev(Const("c_j"), a)),)


def test_mp_case_shape():
    proof = SEProof([TheoryMember(parse_formula("c_cl:(P -> P)")),
                     AxiomJ(parse_formula("x:(P -> P) -> y:P -> x*y:P")),
                     JV(1, "x", parse_term("c_cl")), MP(0, 2)])
    res = internalize(DEFAULT_THEORY, proof)
    assert type(res.term) is Prod
    t1, t2 = res.term.left, res.term.right
    assert t1 == Const("c_j")
    assert t2 == Const("c_cl_2")


def test_jv_keeps_term():
    base = SEProof([AxiomJ(parse_formula("x:(P -> Q) -> y:P -> x*y:Q"))])
    moved = SEProof(list(base.steps) + [JV(0, "x", parse_term("a*b"))])
    assert internalize(DEFAULT_THEORY, moved).term == internalize(DEFAULT_THEORY, base).term


def test_requires_appropriate_theory():
    theory = TheoryDescriptor(axiomatically_appropriate=False)
    with pytest.raises(CapabilityError):
        internalize(theory, SEProof([PropTaut(parse_formula("P -> P"))]))


def test_internalization_iterates():
    _, proof = PROOFS["mp and jv chain"]
    once = internalize(DEFAULT_THEORY, proof)
    twice = internalize(DEFAULT_THEORY, once.proof)
    assert is_ground(twice.term)
    assert twice.statement == Ev(twice.term, once.statement)
