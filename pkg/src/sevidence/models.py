"""Semiring models: truth of SE formulas relative to an evidence relation.

A model fixes a semiring, a truth value for every atom, a value for every
constant and an evidence relation ``J`` between values and value-labelled
formulas.  ``J`` is stored extensionally and closed under application
(``(s, A -> B)`` and ``(t, A)`` give ``(s*t, B)``) and aggregation
(``(s, A)`` and ``(t, A)`` give ``(s+t, A)``).
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .freesemiring import eval_term
from .parser import parse_formula
from .semiring import Semiring, semiring_from_descriptor
from .syntax import Atom, Bot, Ev, Formula, Imp, formula_vars

MODEL_SCHEMA = "sevidence.model/1"

# Closing over an infinite semiring stops with ClosureError past this many pairs.
DEFAULT_PAIR_BUDGET = 50_000


class ClosureError(RuntimeError):
    pass


class UniverseError(LookupError):
    """An evidence query about a formula outside the closed universe."""


class Valued(Formula):
    """``value:body`` where ``value`` is a semiring element instead of a term."""
    __slots__ = ("value", "body")

    def __init__(self, value, body: Formula):
        self.value = value
        self.body = body
        self._hash = hash(("val", type(value).__name__, value, body._hash))

    def __eq__(self, other):
        return (self is other or type(other) is Valued and type(other.value) is type(self.value)
                and other.value == self.value and other.body == self.body)

    __hash__ = Formula.__hash__

    def __repr__(self):
        return f"Valued({self.value!r}, {self.body!r})"


def sformula_size(f: Formula) -> int:
    tf = type(f)
    if tf is Imp:
        return 1 + sformula_size(f.left) + sformula_size(f.right)
    if tf is Valued:
        return 1 + sformula_size(f.body)
    return 1


def format_sformula(f: Formula, k: Semiring) -> str:
    tf = type(f)
    if tf is Bot:
        return "bot"
    if tf is Atom:
        return f.name
    if tf is Valued:
        body = format_sformula(f.body, k)
        if type(f.body) is Imp:
            body = f"({body})"
        return f"[{k.format_value(f.value)}]:{body}"
    left = format_sformula(f.left, k)
    if type(f.left) is Imp:
        left = f"({left})"
    return f"{left} -> {format_sformula(f.right, k)}"


def translate(f: Formula, k: Semiring, interp: Mapping[str, object],
              valuation: Mapping[str, object]) -> Formula:
    """``f`` with every term replaced by its value under ``interp`` and ``valuation``."""
    tf = type(f)
    if tf is Imp:
        return Imp(translate(f.left, k, interp, valuation), translate(f.right, k, interp, valuation))
    if tf is Ev:
        return Valued(eval_term(f.term, interp, valuation, k),
                      translate(f.body, k, interp, valuation))
    return f


# ---------------------------------------------------------------------------
# evidence relations


class Evidence:
    """A finite evidence relation closed under application and aggregation."""

    def __init__(self, k: Semiring, pairs: dict[Formula, frozenset], depth: int | None):
        self.k = k
        self._by_formula = pairs
        self.depth = depth

    def __contains__(self, pair) -> bool:
        value, f = pair
        return value in self._by_formula.get(f, ())

    def __iter__(self):
        for f, values in self._by_formula.items():
            for v in values:
                yield v, f

    def __len__(self):
        return sum(len(v) for v in self._by_formula.values())

    def values_for(self, f: Formula) -> frozenset:
        return self._by_formula.get(f, frozenset())

    def formulas(self):
        return self._by_formula.keys()

    def query(self, value, f: Formula) -> bool:
        if self.depth is not None and sformula_size(f) > self.depth:
            raise UniverseError(f"formula of size {sformula_size(f)} exceeds depth {self.depth}")
        return value in self._by_formula.get(f, ())

    def pairs(self) -> set:
        return set(self)


def close_evidence(base: Iterable[tuple[object, Formula]], k: Semiring, depth: int | None = None,
                   budget: int = DEFAULT_PAIR_BUDGET) -> Evidence:
    """Least relation containing ``base`` (restricted to formulas of size at most ``depth``)
    that is closed under application and aggregation.

    Raises :class:`ClosureError` when more than ``budget`` pairs are generated,
    which happens when an infinite semiring's values do not saturate.
    """
    table: dict[Formula, set] = {}
    by_antecedent: dict[Formula, set[Formula]] = {}
    work: list[tuple[object, Formula]] = []
    count = 0

    def add(value, f: Formula, forced: bool = False):
        nonlocal count
        if not forced and depth is not None and sformula_size(f) > depth:
            return
        values = table.setdefault(f, set())
        if value in values:
            return
        values.add(value)
        count += 1
        if count > budget:
            raise ClosureError(f"evidence closure over {k.descriptor} exceeded {budget} pairs")
        if type(f) is Imp:
            by_antecedent.setdefault(f.left, set()).add(f)
        work.append((value, f))

    for value, f in base:
        add(k.check(value), f, forced=True)
    while work:
        v, f = work.pop()
        for u in list(table[f]):
            add(k.add(u, v), f)
        if type(f) is Imp:
            for u in list(table.get(f.left, ())):
                add(k.mul(v, u), f.right)
        for imp in list(by_antecedent.get(f, ())):
            for s in list(table[imp]):
                add(k.mul(s, v), imp.right)
    return Evidence(k, {f: frozenset(vs) for f, vs in table.items()}, depth)


# ---------------------------------------------------------------------------
# models and truth


@dataclass
class SemiringModel:
    semiring: Semiring
    atoms: dict[str, bool]
    interpretation: dict[str, object]
    evidence: Evidence

    def translate(self, f: Formula, valuation: Mapping[str, object]) -> Formula:
        return translate(f, self.semiring, self.interpretation, valuation)

    def to_dict(self) -> dict:
        k = self.semiring
        return {
            "schema": MODEL_SCHEMA,
            "semiring": k.descriptor,
            "atoms": dict(sorted(self.atoms.items())),
            "interpretation": {c: k.format_value(v) for c, v in sorted(self.interpretation.items())},
            "evidence_size": len(self.evidence),
        }


def holds(m: SemiringModel, valuation: Mapping[str, object], f: Formula) -> bool:
    """``m, valuation |= f``."""
    tf = type(f)
    if tf is Bot:
        return False
    if tf is Atom:
        return m.atoms.get(f.name, False)
    if tf is Imp:
        return not holds(m, valuation, f.left) or holds(m, valuation, f.right)
    if tf is Ev:
        value = eval_term(f.term, m.interpretation, valuation, m.semiring)
        return m.evidence.query(value, m.translate(f.body, valuation))
    raise TypeError(f"cannot evaluate {f!r}")


@dataclass
class Verdict:
    holds: bool
    exhaustive: bool
    checked: int
    witness: dict[str, object] | None = None

    def __bool__(self):
        return self.holds

    def describe(self, k: Semiring) -> str:
        mode = "exhaustive" if self.exhaustive else "sampled"
        if self.holds:
            return f"holds ({mode}, {self.checked} valuations)"
        w = ", ".join(f"{x}={k.format_value(v)}" for x, v in sorted(self.witness.items()))
        return f"fails ({mode}) at {w or 'the empty valuation'}"


def valuations(k: Semiring, names: list[str], samples: int = 200, seed: int = 0):
    """All valuations of ``names`` for a finite semiring, else ``samples`` random ones.

    Returns ``(iterator, exhaustive)``.
    """
    if k.finite:
        elems = list(k.elements())
        return (dict(zip(names, combo)) for combo in itertools.product(elems, repeat=len(names))), True
    rng = random.Random(seed)
    return ({x: k.sample(rng) for x in names} for _ in range(samples)), False


def holds_universally(m: SemiringModel, f: Formula, samples: int = 200, seed: int = 0) -> Verdict:
    """``m |= f``: truth under every valuation (exact for finite semirings, sampled otherwise)."""
    names = sorted(formula_vars(f))
    it, exhaustive = valuations(m.semiring, names, samples, seed)
    if not names:
        it, exhaustive = iter([{}]), True
    checked = 0
    for v in it:
        checked += 1
        if not holds(m, v, f):
            return Verdict(False, exhaustive, checked, v)
    return Verdict(True, exhaustive, checked)


# ---------------------------------------------------------------------------
# models of a finite set of theory members


def model_of(k: Semiring, atoms: dict[str, bool], interpretation: dict[str, object],
             members: Iterable[Formula], extra: Iterable[tuple[object, Formula]] = (),
             depth: int | None = None, max_rounds: int = 50) -> SemiringModel:
    """Smallest closed model (over a finite semiring) satisfying every formula in ``members``.

    Members must be ``t:A`` or ``X -> t:A``; missing evidence is added for
    every falsifying valuation until all members hold.
    """
    members = list(members)
    base: set = set(extra)
    interp = dict(interpretation)
    for _ in range(max_rounds):
        m = SemiringModel(k, atoms, interp, close_evidence(base, k, depth))
        grew = False
        for f in members:
            target = f if type(f) is Ev else f.right if type(f) is Imp else None
            if type(target) is not Ev:
                raise ValueError("members must be t:A or X -> t:A")
            it, _ = valuations(k, sorted(formula_vars(f)))
            for v in it:
                if holds(m, v, f):
                    continue
                pair = (eval_term(target.term, interp, v, k), m.translate(target.body, v))
                if pair not in base:
                    base.add(pair)
                    grew = True
        if not grew:
            return m
    raise ClosureError("theory members could not be satisfied")


# ---------------------------------------------------------------------------
# model description files


@dataclass
class ModelDescription:
    semiring: str
    atoms: dict[str, bool] = field(default_factory=dict)
    interpretation: dict[str, str] = field(default_factory=dict)
    evidence: list[tuple[str, str]] = field(default_factory=list)
    members: list[str] = field(default_factory=list)
    depth: int | None = None

    @classmethod
    def from_dict(cls, doc: dict) -> ModelDescription:
        if doc.get("schema", MODEL_SCHEMA) != MODEL_SCHEMA:
            raise ValueError(f"unsupported model schema {doc.get('schema')!r}")
        return cls(doc["semiring"], {a: bool(v) for a, v in doc.get("atoms", {}).items()},
                   {c: str(v) for c, v in doc.get("interpretation", {}).items()},
                   [(str(v), str(f)) for v, f in doc.get("evidence", [])],
                   [str(f) for f in doc.get("members", [])], doc.get("depth"))

    @classmethod
    def from_json(cls, text: str) -> ModelDescription:
        return cls.from_dict(json.loads(text))

    def build(self) -> SemiringModel:
        """Parse and close.  Evidence formulas are ground SE formulas read through the
        interpretation; members are made true as in :func:`model_of`."""
        k = semiring_from_descriptor(self.semiring)
        interp = {c: k.parse_value(v) for c, v in self.interpretation.items()}
        base = []
        for value, text in self.evidence:
            f = parse_formula(text, allow_reserved=True)
            base.append((k.parse_value(value), translate(f, k, interp, {})))
        members = [parse_formula(t, allow_reserved=True) for t in self.members]
        if members:
            return model_of(k, self.atoms, interp, members, base, self.depth)
        return SemiringModel(k, self.atoms, interp, close_evidence(base, k, self.depth))


__all__ = ["Valued", "translate", "Evidence", "close_evidence", "SemiringModel", "holds",
           "Verdict", "holds_universally", "model_of", "ModelDescription", "ClosureError",
           "UniverseError", "format_sformula", "sformula_size"]
