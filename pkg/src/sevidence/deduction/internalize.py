"""Turning a proof of ``A`` into a ground term ``t`` and a proof of ``t:A``."""

from __future__ import annotations

from dataclasses import dataclass

from ..syntax import Ev, Formula, Term
from .builder import ProofBuilder
from .checker import check_proof
from .proof import (JV, MP, AxiomJ, AxiomJPlus, PropTaut, SEProof, SemiringStep, TheoryMember,
                    step_formula)
from .theory import TheoryDescriptor


@dataclass(frozen=True)
class CombinatorResult:
    term: Term
    proof: SEProof
    statement: Formula


def internalize_step(b: ProofBuilder, target: int) -> tuple[Term, int]:
    """Ground ``t`` and the index of ``t:A`` where step ``target`` of ``b`` proves ``A``.

    Results are memoised per step, so shared subproofs are internalized once.
    """
    theory = b.theory
    theory.require("axiomatically_appropriate")
    order: list[int] = []
    seen: set[int] = set()
    stack = [(target, False)]
    while stack:
        i, expanded = stack.pop()
        if i in b.internalized or (i in seen and not expanded):
            continue
        if expanded:
            order.append(i)
            continue
        seen.add(i)
        stack.append((i, True))
        s = b.steps[i]
        if type(s) is MP:
            stack += [(s.major, False), (s.minor, False)]
        elif type(s) is JV:
            stack.append((s.source, False))
    for i in order:
        if i in b.internalized:
            continue
        s = b.steps[i]
        f = b.formula(i)
        kind = type(s)
        if kind is MP:
            major_term, major_idx = b.internalized[s.major]
            minor_term, minor_idx = b.internalized[s.minor]
            result = b.apply(major_idx, minor_idx)
        elif kind is JV:
            term, idx = b.internalized[s.source]
            result = (term, b.jv(idx, s.var, s.term))
        else:
            if kind is PropTaut:
                c = theory.axiom_constant("cl")
            elif kind is AxiomJ:
                c = theory.axiom_constant("j")
            elif kind is AxiomJPlus:
                c = theory.axiom_constant("j+")
            elif kind is SemiringStep:
                c = theory.axiom_constant(s.scheme)
            elif kind is TheoryMember:
                c = theory.justifier(f)
            else:
                raise ValueError(f"cannot internalize {kind.__name__}")
            result = (c, b.member(Ev(c, f)))
        b.internalized[i] = result
    return b.internalized[target]


def internalize(theory: TheoryDescriptor, proof: SEProof) -> CombinatorResult:
    """Ground term ``t`` with a checked proof of ``t:A`` for the theorem ``A`` of ``proof``."""
    theory.require("axiomatically_appropriate")
    check_proof(theory, proof)
    b = ProofBuilder(theory)
    where = replay_proof(b, proof)
    term, idx = internalize_step(b, where[-1])
    out = b.extract(idx)
    return CombinatorResult(term, out, out.theorem)


def replay_proof(b: ProofBuilder, proof: SEProof) -> list[int]:
    """Copy a checked proof into ``b``; returns the builder index of every step."""
    where: list[int] = []
    for step in proof.steps:
        kind = type(step)
        if kind is MP:
            where.append(b.mp(where[step.minor], where[step.major]))
        elif kind is JV:
            where.append(b.jv(where[step.source], step.var, step.term))
        else:
            where.append(b._add(step, step_formula(step)))
    return where
