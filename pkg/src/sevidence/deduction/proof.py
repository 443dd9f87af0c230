"""Linear SE proof objects and their JSON document form.

A proof is a list of steps; each step proves one formula.  ``MP`` and ``JV``
refer to earlier steps by 0-based index.  Every step carries the formula it
claims, so a document is readable without replaying it; the checker
recomputes and compares.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Union

from ..parser import parse_formula, parse_term
from ..printer import format_formula, format_term
from ..syntax import (Const, Formula, Imp, Term, Var, is_constant_name, substitute,
                      walk_terms)

PROOF_SCHEMA = "sevidence.proof/1"


@dataclass(frozen=True)
class PropTaut:
    formula: Formula


@dataclass(frozen=True)
class AxiomJ:
    formula: Formula


@dataclass(frozen=True)
class AxiomJPlus:
    formula: Formula


@dataclass(frozen=True)
class SemiringStep:
    """``template[var/left] -> template[var/right]`` licensed by ``scheme``."""
    template: Formula
    var: str
    left: Term
    right: Term
    scheme: str
    formula: Formula | None = None

    def claimed(self) -> Formula:
        return Imp(substitute(self.template, self.var, self.left),
                   substitute(self.template, self.var, self.right))


@dataclass(frozen=True)
class TheoryMember:
    formula: Formula
    note: str = ""


@dataclass(frozen=True)
class MP:
    """From step ``minor`` proving ``A`` and step ``major`` proving ``A -> B``, infer ``B``."""
    minor: int
    major: int
    formula: Formula | None = None


@dataclass(frozen=True)
class JV:
    """From step ``source`` proving ``A``, infer ``A[var/term]``."""
    source: int
    var: str
    term: Term
    formula: Formula | None = None


Step = Union[PropTaut, AxiomJ, AxiomJPlus, SemiringStep, TheoryMember, MP, JV]

_RULE_NAMES = {PropTaut: "taut", AxiomJ: "j", AxiomJPlus: "j+", SemiringStep: "semiring",
               TheoryMember: "member", MP: "mp", JV: "jv"}


class SEProof:
    """An immutable sequence of steps; the last step's formula is the theorem."""

    __slots__ = ("steps",)

    def __init__(self, steps: Iterable[Step]):
        self.steps: tuple[Step, ...] = tuple(steps)

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def __getitem__(self, i):
        return self.steps[i]

    def __eq__(self, other):
        return isinstance(other, SEProof) and other.steps == self.steps

    def __hash__(self):
        return hash(self.steps)

    def __repr__(self):
        return f"SEProof({len(self.steps)} steps)"

    @property
    def theorem(self) -> Formula | None:
        if not self.steps:
            return None
        return step_formula(self.steps[-1])

    def to_dict(self) -> dict:
        consts, variables = _unconventional_names(self)
        doc: dict = {"schema": PROOF_SCHEMA}
        if consts:
            doc["consts"] = consts
        if variables:
            doc["vars"] = variables
        doc["steps"] = [_step_to_dict(s) for s in self.steps]
        return doc

    def to_json(self, indent: int | None = 1) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, doc: dict) -> SEProof:
        schema = doc.get("schema")
        if schema != PROOF_SCHEMA:
            raise ValueError(f"unsupported proof schema {schema!r}")
        ctx = {"consts": tuple(doc.get("consts", ())), "variables": tuple(doc.get("vars", ())),
               "allow_reserved": True}
        return cls(_step_from_dict(s, ctx, i) for i, s in enumerate(doc["steps"]))

    @classmethod
    def from_json(cls, text: str) -> SEProof:
        return cls.from_dict(json.loads(text))

    def format(self) -> str:
        """Numbered, human-readable listing."""
        lines = []
        for i, s in enumerate(self.steps):
            f = step_formula(s)
            text = format_formula(f) if f is not None else "?"
            lines.append(f"{i:4d}  {text}    [{_describe(s)}]")
        return "\n".join(lines)


def step_formula(step: Step) -> Formula | None:
    """The formula a step claims (for MP/JV possibly None in hand-written documents)."""
    if type(step) is SemiringStep:
        return step.formula if step.formula is not None else step.claimed()
    return step.formula


def _describe(s: Step) -> str:
    t = type(s)
    if t is MP:
        return f"mp {s.minor}, {s.major}"
    if t is JV:
        return f"jv {s.source} {s.var}/{format_term(s.term)}"
    if t is SemiringStep:
        return f"{s.scheme} {s.var}: {format_term(s.left)} ~> {format_term(s.right)}"
    if t is TheoryMember and s.note:
        return f"member {s.note}"
    return _RULE_NAMES[t]


def _unconventional_names(proof: SEProof) -> tuple[list[str], list[str]]:
    formulas = []
    for s in proof.steps:
        f = step_formula(s)
        if f is not None:
            formulas.append(f)
        if type(s) is SemiringStep:
            formulas.append(s.template)
    terms = list(walk_terms(formulas))
    terms += [s.term for s in proof.steps if type(s) is JV]
    consts: set[str] = set()
    variables: set[str] = set()
    stack = terms
    while stack:
        t = stack.pop()
        if type(t) is Const and not is_constant_name(t.name):
            consts.add(t.name)
        elif type(t) is Var and is_constant_name(t.name):
            variables.add(t.name)
        elif hasattr(t, "left"):
            stack.extend((t.left, t.right))
    for s in proof.steps:
        if type(s) is SemiringStep and is_constant_name(s.var):
            variables.add(s.var)
        if type(s) is JV and is_constant_name(s.var):
            variables.add(s.var)
    return sorted(consts), sorted(variables)


def _step_to_dict(s: Step) -> dict:
    t = type(s)
    d: dict = {"rule": _RULE_NAMES[t]}
    if t is SemiringStep:
        d.update(scheme=s.scheme, template=format_formula(s.template), var=s.var,
                 left=format_term(s.left), right=format_term(s.right))
    elif t is MP:
        d.update(minor=s.minor, major=s.major)
    elif t is JV:
        d.update(source=s.source, var=s.var, term=format_term(s.term))
    elif t is TheoryMember and s.note:
        d["note"] = s.note
    f = step_formula(s)
    if f is not None:
        d["formula"] = format_formula(f)
    return d


def _step_from_dict(d: dict, ctx: dict, index: int) -> Step:
    def fml(key):
        return parse_formula(d[key], **ctx)

    def opt_fml():
        return fml("formula") if "formula" in d else None

    def term(key):
        return parse_term(d[key], **ctx)

    try:
        rule = d["rule"]
        if rule == "taut":
            return PropTaut(fml("formula"))
        if rule == "j":
            return AxiomJ(fml("formula"))
        if rule == "j+":
            return AxiomJPlus(fml("formula"))
        if rule == "member":
            return TheoryMember(fml("formula"), d.get("note", ""))
        if rule == "semiring":
            return SemiringStep(fml("template"), d["var"], term("left"), term("right"),
                                d["scheme"], opt_fml())
        if rule == "mp":
            return MP(int(d["minor"]), int(d["major"]), opt_fml())
        if rule == "jv":
            return JV(int(d["source"]), d["var"], term("term"), opt_fml())
    except KeyError as e:
        raise ValueError(f"step {index}: missing field {e.args[0]!r}") from None
    raise ValueError(f"step {index}: unknown rule {d.get('rule')!r}")
