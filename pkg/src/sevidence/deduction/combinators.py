"""Evidence combinators used by realization.

The builder-level functions (``syl``, ``and_intro``, ``disj_injection``,
``case_analysis``, ``star``, ``build_q``, ``lift``) add steps to a
:class:`ProofBuilder` and return ``(term, step index)``.  The ``make_*``
functions wrap them into standalone, checked :class:`CombinatorResult`\\ s.

In a schematic theory all constructed terms depend only on the argument
terms, never on the formulas involved.
"""

from __future__ import annotations

from typing import Sequence

from ..syntax import (TOP, Atom, Const, Ev, Formula, Imp, Prod, Term, Var, conj, disj, power)
from .builder import ProofBuilder
from .checker import check_proof
from .internalize import CombinatorResult, internalize_step, replay_proof
from .proof import SEProof
from .theory import DEFAULT_THEORY, TheoryDescriptor


def syl_term(theory: TheoryDescriptor, s: Term, t: Term) -> Term:
    """``(d*(c*t))*s``; both helper constants justify tautologies."""
    c = theory.scheme_constant("cl")
    return Prod(Prod(c, Prod(c, t)), s)


def star_term(theory: TheoryDescriptor, s: Term, t: Term) -> Term:
    """``u*((c*s)*t)`` with ``u`` justifying ``A|A -> A`` and ``c`` the star constant."""
    return Prod(theory.scheme_constant("cl"), Prod(Prod(Const(theory.star_name), s), t))


def balanced_disjunction(parts: Sequence[Formula]) -> Formula:
    """Full binary tree of disjunctions over ``parts`` (length a power of two)."""
    if len(parts) == 1:
        return parts[0]
    half = len(parts) // 2
    return disj(balanced_disjunction(parts[:half]), balanced_disjunction(parts[half:]))


def _cl(b: ProofBuilder, f: Formula) -> int:
    return b.member(Ev(b.theory.axiom_constant("cl"), f))


# ---------------------------------------------------------------------------
# builder-level constructions


def syl(b: ProofBuilder, s_idx: int, t_idx: int) -> tuple[Term, int]:
    """From ``s:(A -> B)`` and ``t:(B -> C)`` prove ``syl(s,t):(A -> C)``."""
    sf, tf = b.formula(s_idx), b.formula(t_idx)
    a, bb = sf.body.left, sf.body.right
    if tf.body.left != bb:
        raise ValueError("justified implications do not chain")
    c = tf.body.right
    _, ct = b.apply(_cl(b, Imp(Imp(bb, c), Imp(a, Imp(bb, c)))), t_idx)
    _, dct = b.apply(_cl(b, Imp(Imp(a, Imp(bb, c)), Imp(Imp(a, bb), Imp(a, c)))), ct)
    return b.apply(dct, s_idx)


def and_intro(b: ProofBuilder, items: Sequence[tuple[Term, Formula]]) -> tuple[Term, int]:
    """``t1:A1 & ... & tm:Am -> (c*t1*...*tm):(A1 & ... & Am)``."""
    if not items:
        raise ValueError("need at least one conjunct")
    body = conj(*(a for _, a in items))
    rest = body
    for _, a in reversed(items):
        rest = Imp(a, rest)
    c = b.theory.axiom_constant("cl")
    facts = [_cl(b, rest)]
    cur_term: Term = c
    for t, a in items:
        facts.append(b.axiom_j(cur_term, t, a, rest.right))
        cur_term = Prod(cur_term, t)
        rest = rest.right
    goal = Imp(conj(*(Ev(t, a) for t, a in items)), Ev(cur_term, body))
    return cur_term, b.consequence(goal, facts)


def disj_injection(b: ProofBuilder, parts: Sequence[Formula]) -> tuple[Term, list[int]]:
    """``d:(A_i -> A_1 | ... | A_n)`` for every ``i``, with the balanced disjunction.

    ``d_1`` justifies ``A -> A``, ``d_2`` is the weakening constant and
    ``d_2l = syl(d_l, d_2)``.
    """
    n = len(parts)
    if n < 1 or n & (n - 1):
        raise ValueError("the number of disjuncts must be a power of two")
    theory = b.theory
    if n == 1:
        return theory.axiom_constant("cl"), [_cl(b, Imp(parts[0], parts[0]))]
    theory.require("supports_weakening")
    w = Const(theory.weakening_constant)
    if n == 2:
        whole = disj(parts[0], parts[1])
        return w, [b.member(Ev(w, Imp(p, whole))) for p in parts]
    half = n // 2
    left_term, left = disj_injection(b, parts[:half])
    right_term, right = disj_injection(b, parts[half:])
    assert left_term == right_term
    lhs, rhs = balanced_disjunction(parts[:half]), balanced_disjunction(parts[half:])
    whole = disj(lhs, rhs)
    to_whole = [b.member(Ev(w, Imp(lhs, whole))), b.member(Ev(w, Imp(rhs, whole)))]
    out = []
    term = None
    for idxs, up in ((left, to_whole[0]), (right, to_whole[1])):
        for i in idxs:
            term, k = syl(b, i, up)
            out.append(k)
    return term, out


def case_analysis(b: ProofBuilder, parts: Sequence[Formula], goal: Formula) -> tuple[Term, int]:
    """``e:((A_1 -> B) -> ... -> (A_n -> B) -> (A_1 | ... | A_n -> B))`` by internalization."""
    f = Imp(balanced_disjunction(parts), goal)
    for p in reversed(parts):
        f = Imp(Imp(p, goal), f)
    return internalize_step(b, b.taut(f))


def star(b: ProofBuilder, s: Term, t: Term, a: Formula) -> tuple[Term, int, int]:
    """``s:A -> (s*t):A`` and ``t:A -> (s*t):A``; returns the term and both step indices."""
    theory = b.theory
    theory.require("star_constant", "axiomatically_appropriate")
    cs = Const(theory.star_name)
    x = b.fresh_var(a, s, t)
    y = b.fresh_var(a, s, t, x)
    aa = disj(a, a)
    combined = Ev(Prod(Prod(cs, x), y), aa)
    left = b.member(Imp(Ev(x, a), combined))
    right = b.member(Imp(Ev(y, a), combined))
    left = b.jv(b.jv(left, x.name, s), y.name, t)
    right = b.jv(b.jv(right, x.name, s), y.name, t)
    _, u_idx = internalize_step(b, b.taut(Imp(aa, a)))
    j = b.axiom_j(b.formula(u_idx).term, Prod(Prod(cs, s), t), aa, a)
    through = b.mp(u_idx, j)
    term = b.formula(through).right.term
    return term, b.chain(left, through), b.chain(right, through)


def build_q(b: ProofBuilder, gammas: Sequence[Sequence[Formula]], goal: Formula,
            premises: Sequence[int], x: Term) -> tuple[Term, list[int]]:
    """One term ``q`` with ``x:G_1 & ... & x:G_m -> q:goal`` for every listed multiset ``G``.

    ``premises[i]`` proves ``conj(gammas[i]) -> goal``.  All multisets must have
    the same positive size ``m``.  ``q = syl(d_N, e_N*s_1*...*s_N)*(c_m*x^m)``
    after padding to ``N = 2^k`` premises.
    """
    theory = b.theory
    theory.require("axiomatically_appropriate", "schematic")
    n = len(gammas)
    m = len(gammas[0]) if n else 0
    if n == 0 or m == 0 or any(len(g) != m for g in gammas):
        raise ValueError("premise antecedents must be nonempty and of equal size")
    gammas = [list(g) for g in gammas]
    justifiers = [internalize_step(b, p) for p in premises]
    size = 1
    while size < n:
        size *= 2
    gammas += [gammas[0]] * (size - n)
    justifiers += [justifiers[0]] * (size - n)
    antecedents = [conj(*g) for g in gammas]
    _, injections = disj_injection(b, antecedents)
    _, cur = case_analysis(b, antecedents, goal)
    for _, s_idx in justifiers:
        _, cur = b.apply(cur, s_idx)
    c = theory.axiom_constant("cl")
    packed = Prod(c, power(x, m))
    results = []
    q = None
    for i in range(n):
        g_term, g_idx = syl(b, injections[i], cur)
        left_term, collect = and_intro(b, [(x, f) for f in gammas[i]])
        hole = b.fresh_var(antecedents[i], left_term, packed)
        reassoc = b.equate(Ev(hole, antecedents[i]), hole.name, left_term, packed)
        collect = b.chain(collect, reassoc)
        step = b.mp(g_idx, b.axiom_j(g_term, packed, antecedents[i], goal))
        q = b.formula(step).right.term
        results.append(b.chain(collect, step))
    return q, results


def lift(b: ProofBuilder, hyps: Sequence[tuple[Term, Formula]], goal: Formula,
         premise: int) -> tuple[Term, int]:
    """From ``conj(B_1..B_n) -> goal`` prove ``x_1:B_1 & ... & x_n:B_n -> t:goal``."""
    if not hyps:
        fact = b.mp(b.taut(TOP), premise)
        t, idx = internalize_step(b, fact)
        return t, b.consequence(Imp(TOP, Ev(t, goal)), [idx])
    s, s_idx = internalize_step(b, premise)
    packed, collect = and_intro(b, hyps)
    antecedent = conj(*(f for _, f in hyps))
    step = b.mp(s_idx, b.axiom_j(s, packed, antecedent, goal))
    return b.formula(step).right.term, b.chain(collect, step)


# ---------------------------------------------------------------------------
# standalone results


def _result(b: ProofBuilder, idx: int, term: Term) -> CombinatorResult:
    proof = b.extract(idx)
    statement = check_proof(b.theory, proof)
    return CombinatorResult(term, proof, statement)


def _default_atoms(n: int, stem: str = "A") -> list[Formula]:
    return [Atom(f"{stem}{i + 1}") for i in range(n)]


def make_syl(theory: TheoryDescriptor, s_proof: SEProof, t_proof: SEProof) -> CombinatorResult:
    """Given checked proofs of ``s:(A -> B)`` and ``t:(B -> C)``, prove ``syl(s,t):(A -> C)``."""
    theory.require("axiomatically_appropriate")
    check_proof(theory, s_proof)
    check_proof(theory, t_proof)
    b = ProofBuilder(theory)
    s_idx = replay_proof(b, s_proof)[-1]
    t_idx = replay_proof(b, t_proof)[-1]
    term, idx = syl(b, s_idx, t_idx)
    return _result(b, idx, term)


def make_c_n(theory: TheoryDescriptor = DEFAULT_THEORY, n: int = 2,
             terms: Sequence[Term] | None = None,
             formulas: Sequence[Formula] | None = None) -> CombinatorResult:
    theory.require("axiomatically_appropriate")
    terms = list(terms) if terms is not None else [Var(f"x{i + 1}") for i in range(n)]
    formulas = list(formulas) if formulas is not None else _default_atoms(n)
    b = ProofBuilder(theory)
    term, idx = and_intro(b, list(zip(terms, formulas)))
    return _result(b, idx, term)


def make_d_pow2(theory: TheoryDescriptor = DEFAULT_THEORY, level: int = 1, position: int = 1,
                formulas: Sequence[Formula] | None = None) -> CombinatorResult:
    """``d_{2^level}:(A_position -> A_1 | ... | A_{2^level})``."""
    theory.require("axiomatically_appropriate", "schematic")
    formulas = list(formulas) if formulas is not None else _default_atoms(2 ** level)
    b = ProofBuilder(theory)
    term, idxs = disj_injection(b, formulas)
    return _result(b, idxs[position - 1], term)


def make_e_n(theory: TheoryDescriptor = DEFAULT_THEORY, n: int = 2,
             formulas: Sequence[Formula] | None = None,
             goal: Formula | None = None) -> CombinatorResult:
    """``e_n`` over the balanced disjunction of ``n`` formulas."""
    theory.require("axiomatically_appropriate")
    formulas = list(formulas) if formulas is not None else _default_atoms(n)
    goal = goal if goal is not None else Atom("B")
    b = ProofBuilder(theory)
    term, idx = case_analysis(b, formulas, goal)
    return _result(b, idx, term)


def make_star(theory: TheoryDescriptor = DEFAULT_THEORY, s: Term | None = None,
              t: Term | None = None, formula: Formula | None = None) -> CombinatorResult:
    """``s:A | t:A -> (s*t):A``."""
    theory.require("star_constant", "axiomatically_appropriate", "schematic")
    s = s if s is not None else Var("x")
    t = t if t is not None else Var("y")
    formula = formula if formula is not None else Atom("P")
    b = ProofBuilder(theory)
    term, left, right = star(b, s, t, formula)
    goal = Imp(disj(Ev(s, formula), Ev(t, formula)), Ev(term, formula))
    return _result(b, b.consequence(goal, [left, right]), term)
