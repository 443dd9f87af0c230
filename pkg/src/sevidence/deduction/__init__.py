"""SE proofs: objects, theories, the checker, builders, combinators and internalization."""

from .builder import ProofBuilder
from .checker import ProofCheckError, check_proof, is_valid_proof
from .combinators import (make_c_n, make_d_pow2, make_e_n, make_star, make_syl, star_term,
                          syl_term)
from .internalize import CombinatorResult, internalize
from .proof import (JV, MP, PROOF_SCHEMA, AxiomJ, AxiomJPlus, PropTaut, SEProof, SemiringStep,
                    TheoryMember)
from .schemes import SEMIRING_SCHEMES, match_semiring_step
from .theory import DEFAULT_THEORY, CapabilityError, TheoryDescriptor

__all__ = [
    "ProofBuilder", "ProofCheckError", "check_proof", "is_valid_proof", "make_c_n",
    "make_d_pow2", "make_e_n", "make_star", "make_syl", "star_term", "syl_term",
    "CombinatorResult", "internalize", "JV", "MP", "PROOF_SCHEMA", "AxiomJ", "AxiomJPlus",
    "PropTaut", "SEProof", "SemiringStep", "TheoryMember", "SEMIRING_SCHEMES",
    "match_semiring_step", "DEFAULT_THEORY", "CapabilityError", "TheoryDescriptor",
]
