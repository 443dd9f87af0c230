import pytest

from sevidence.deduction import (DEFAULT_THEORY, CapabilityError, ProofBuilder, SEProof,
                                 TheoryDescriptor, TheoryMember, check_proof, make_c_n, make_d_pow2,
                                 make_e_n, make_star, make_syl, star_term, syl_term)
from sevidence.deduction.combinators import balanced_disjunction, build_q, lift, syl
from sevidence.parser import parse_formula
from sevidence.syntax import ONE, TOP, Atom, Const, Ev, Imp, Prod, Var, conj, disj, power

P, Q, R = Atom("P"), Atom("Q"), Atom("R")
CL = Const("c_cl")


def member_proof(text):
    return SEProof([TheoryMember(parse_formula(text))])


class TestSyl:
    def test_term_shape(self):
        res = make_syl(DEFAULT_THEORY, member_proof("c_cl:(P -> P | Q)"),
                       member_proof("c_cl:(P | Q -> Q | P)"))
        assert res.term == Prod(Prod(CL, Prod(CL, CL)), CL)
        assert res.term == syl_term(DEFAULT_THEORY, Const("c_cl"), Const("c_cl"))
        assert res.statement == Ev(res.term, parse_formula("P -> Q | P"))

    def test_degenerate_chain(self):
        b = ProofBuilder()
        one_one = b.member(Ev(CL, Imp(P, P)))
        _, idx = syl(b, one_one, one_one)
        assert b.formula(idx) == Ev(syl_term(DEFAULT_THEORY, CL, CL), Imp(P, P))
        check_proof(DEFAULT_THEORY, b.extract(idx))

    def test_composed_twice(self):
        first = make_syl(DEFAULT_THEORY, member_proof("c_cl:(P -> P | Q)"),
                         member_proof("c_cl:(P | Q -> Q | P)"))
        second = make_syl(DEFAULT_THEORY, first.proof, member_proof("c_cl:(Q | P -> ~~(Q | P))"))
        assert second.statement.body == parse_formula("P -> ~~(Q | P)")
        check_proof(DEFAULT_THEORY, second.proof)

    def test_mismatch(self):
        with pytest.raises(ValueError):
            make_syl(DEFAULT_THEORY, member_proof("c_cl:(P -> P | Q)"), member_proof("c_cl:(Q -> Q)"))

    def test_schematic_independence(self):
        a = make_syl(DEFAULT_THEORY, member_proof("c_cl:(P -> P | Q)"),
                     member_proof("c_cl:(P | Q -> Q | P)"))
        b = make_syl(DEFAULT_THEORY, member_proof("c_cl:(R -> R | R)"),
                     member_proof("c_cl:(R | R -> R)"))
        assert a.term == b.term


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_c_n(n):
    res = make_c_n(n=n)
    xs = [Var(f"x{i + 1}") for i in range(n)]
    atoms = [Atom(f"A{i + 1}") for i in range(n)]
    assert res.statement.left == conj(*(Ev(x, a) for x, a in zip(xs, atoms)))
    assert res.statement.right.body == conj(*atoms)
    check_proof(DEFAULT_THEORY, res.proof)


@pytest.mark.parametrize("level", [0, 1, 2, 3])
def test_d_pow2(level):
    parts = [Atom(f"A{i + 1}") for i in range(2 ** level)]
    terms = set()
    for position in range(1, 2 ** level + 1):
        res = make_d_pow2(level=level, position=position)
        assert res.statement.body == Imp(parts[position - 1], balanced_disjunction(parts))
        check_proof(DEFAULT_THEORY, res.proof)
        terms.add(res.term)
    assert len(terms) == 1


def test_d_1_is_internalized():
    assert make_d_pow2(level=0).term == CL


def test_d_4_shape():
    d2 = make_d_pow2(level=1).term
    assert d2 == Const("c_w")
    assert make_d_pow2(level=2).term == syl_term(DEFAULT_THEORY, d2, d2)
    d4 = make_d_pow2(level=2).term
    assert make_d_pow2(level=3).term == syl_term(DEFAULT_THEORY, d4, d2)


def test_d_needs_weakening():
    with pytest.raises(CapabilityError):
        make_d_pow2(TheoryDescriptor(supports_weakening=False), level=1)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_e_n(n):
    res = make_e_n(n=n)
    parts = [Atom(f"A{i + 1}") for i in range(n)]
    body = res.statement.body
    cur = body
    for a in parts:
        assert cur.left == Imp(a, Atom("B"))
        cur = cur.right
    assert cur == Imp(balanced_disjunction(parts), Atom("B"))
    check_proof(DEFAULT_THEORY, res.proof)


def test_star():
    res = make_star()
    s, t = Var("x"), Var("y")
    assert res.term == Prod(CL, Prod(Prod(Const("c_s"), s), t))
    assert res.term == star_term(DEFAULT_THEORY, s, t)
    assert res.statement == Imp(disj(Ev(s, P), Ev(t, P)), Ev(res.term, P))
    other = make_star(formula=parse_formula("Q -> R"))
    assert other.term == res.term


def test_star_needs_capability():
    with pytest.raises(CapabilityError):
        make_star(TheoryDescriptor(star_constant=False))


class TestBuildQ:
    def run(self, gammas, goal):
        b = ProofBuilder()
        premises = [b.taut(Imp(conj(*g), goal)) for g in gammas]
        x = Var("x")
        q, idxs = build_q(b, gammas, goal, premises, x)
        for g, idx in zip(gammas, idxs):
            assert b.formula(idx) == Imp(conj(*(Ev(x, f) for f in g)), Ev(q, goal))
            check_proof(DEFAULT_THEORY, b.extract(idx))
        return q

    def test_single_premise(self):
        q = self.run([[P]], P)
        # q = syl(d_1, e_1*s_1)*(c*x^1) with x^1 = 1*x
        assert q.right == Prod(CL, power(Var("x"), 1))
        assert power(Var("x"), 1) == Prod(ONE, Var("x"))
        assert q.left.right == CL

    def test_two_premises(self):
        self.run([[P], [Q]], disj(P, Q))

    def test_padding(self):
        q = self.run([[P], [Q], [R]], disj(P, Q, R))
        e_chain = q.left.left.right.right
        # e_4 applied to four premise terms, the last repeating the first
        args = []
        while type(e_chain) is Prod:
            args.append(e_chain.right)
            e_chain = e_chain.left
        assert len(args) == 4 and args[0] == args[3]

    def test_equal_sizes_required(self):
        b = ProofBuilder()
        with pytest.raises(ValueError):
            build_q(b, [[P], [P, Q]], P, [b.taut(Imp(P, P)), b.taut(Imp(conj(P, Q), P))], Var("x"))
        with pytest.raises(ValueError):
            build_q(b, [[]], P, [b.taut(Imp(TOP, Imp(P, P)))], Var("x"))


def test_lift_without_hypotheses():
    b = ProofBuilder()
    premise = b.taut(Imp(TOP, Imp(P, P)))
    t, idx = lift(b, [], Imp(P, P), premise)
    assert b.formula(idx) == Imp(TOP, Ev(t, Imp(P, P)))
    check_proof(DEFAULT_THEORY, b.extract(idx))
