"""Search-free checking of SE proofs."""

from __future__ import annotations

from ..printer import format_formula
from ..syntax import Imp, substitute
from ..taut import is_tautology
from .proof import (JV, MP, AxiomJ, AxiomJPlus, PropTaut, SEProof, SemiringStep,
                    TheoryMember, step_formula)
from .schemes import SEMIRING_SCHEMES, match_axiom_j, match_axiom_jplus, scheme_licenses
from .theory import TheoryDescriptor


class ProofCheckError(ValueError):
    def __init__(self, step: int, reason: str):
        self.step = step
        self.reason = reason
        super().__init__(f"step {step}: {reason}")


def _derive(theory: TheoryDescriptor, step, proven: list):
    """The formula ``step`` proves given earlier results, or raise ValueError."""
    t = type(step)
    if t is PropTaut:
        if not is_tautology(step.formula):
            raise ValueError("not a propositional tautology")
        return step.formula
    if t is AxiomJ:
        if not match_axiom_j(step.formula):
            raise ValueError("not an instance of axiom j")
        return step.formula
    if t is AxiomJPlus:
        if not match_axiom_jplus(step.formula):
            raise ValueError("not an instance of axiom j+")
        return step.formula
    if t is TheoryMember:
        if not theory.is_member(step.formula):
            raise ValueError("not a member of the theory")
        return step.formula
    if t is SemiringStep:
        if step.scheme not in SEMIRING_SCHEMES:
            raise ValueError(f"unknown semiring scheme {step.scheme!r}")
        if not scheme_licenses(step.scheme, step.left, step.right, variables_only=True):
            raise ValueError(f"illegal semiring step: scheme {step.scheme} does not rewrite "
                             f"{step.left} to {step.right}")
        return step.claimed()
    if t is MP:
        for idx in (step.minor, step.major):
            if not 0 <= idx < len(proven):
                raise ValueError(f"bad index {idx}")
        minor, major = proven[step.minor], proven[step.major]
        if type(major) is not Imp or major.left != minor:
            raise ValueError(f"step {step.major} is not an implication from step {step.minor}")
        return major.right
    if t is JV:
        if not 0 <= step.source < len(proven):
            raise ValueError(f"bad index {step.source}")
        return substitute(proven[step.source], step.var, step.term)
    raise ValueError(f"unknown step kind {t.__name__}")


def check_proof(theory: TheoryDescriptor, proof: SEProof):
    """Validate every step and return the theorem; raise :class:`ProofCheckError` otherwise."""
    proven: list = []
    for i, step in enumerate(proof.steps):
        try:
            formula = _derive(theory, step, proven)
        except ValueError as e:
            raise ProofCheckError(i, str(e)) from None
        claimed = step_formula(step)
        if claimed is not None and claimed != formula:
            raise ProofCheckError(i, f"claimed {format_formula(claimed)} but the step "
                                     f"proves {format_formula(formula)}")
        proven.append(formula)
    if not proven:
        raise ProofCheckError(0, "empty proof")
    return proven[-1]


def is_valid_proof(theory: TheoryDescriptor, proof: SEProof) -> bool:
    try:
        check_proof(theory, proof)
    except ProofCheckError:
        return False
    return True
