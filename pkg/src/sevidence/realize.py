"""Realization: turning GK derivations of modal theorems into SE theorems.

Both procedures assign one term to every family of box occurrences,
replace each box by its family's term and ship an SE proof of the result.
Every sequent ``G => D`` of the derivation is proven as ``conj(G) -> disj(D)``
with the boxes realized; the end sequent ``=> A`` then gives ``r(A)`` by
one modus ponens with ``bot -> bot``.

``realize_nonnormal`` fixes all terms up front, deepest families first.
``realize_normal`` starts essential families from provisional variables
merged by the star term and replaces them one box rule at a time.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import gk
from .deduction.builder import ProofBuilder
from .deduction.checker import check_proof
from .deduction.combinators import build_q, lift, star, star_term
from .deduction.proof import SEProof
from .deduction.theory import DEFAULT_THEORY, TheoryDescriptor
from .parser import parse_formula
from .printer import format_formula, format_term
from .syntax import (TOP, Box, Ev, Formula, Imp, Term, Var, boxes, conj, disj, project_modal,
                     substitute_term)
from .taut import is_tautology

CERTIFICATE_SCHEMA = "sevidence.realization/1"
PROVISIONAL_PREFIX = "_s"


class RealizationError(ValueError):
    pass


@dataclass
class FamilyTerm:
    label: int           # preorder position (from 1) of the family's first box in the end sequent
    polarity: str        # "+" or "-"
    essential: bool
    occurrences: tuple[int, ...]
    term: Term


@dataclass
class Realization:
    modal: Formula
    formula: Formula
    families: list[FamilyTerm]
    normal: bool

    def negative_variables(self) -> list[Term]:
        return [f.term for f in self.families if f.polarity == "-"]


@dataclass
class RealizationCertificate:
    realization: Realization
    proof: SEProof
    theory: TheoryDescriptor

    @property
    def formula(self) -> Formula:
        return self.realization.formula

    def check(self) -> Formula:
        """Re-check the embedded proof; returns the realized formula."""
        theorem = check_proof(self.theory, self.proof)
        if theorem != self.realization.formula:
            raise RealizationError("the proof does not end in the realized formula")
        if format_formula(project_modal(theorem)) != format_formula(self.realization.modal):
            raise RealizationError("the realized formula does not project to the modal formula")
        return theorem

    def to_dict(self) -> dict:
        r = self.realization
        return {
            "schema": CERTIFICATE_SCHEMA,
            "mode": "normal" if r.normal else "nonnormal",
            "modal": format_formula(r.modal),
            "realized": format_formula(r.formula),
            "families": [{"box": f.label, "polarity": f.polarity, "essential": f.essential,
                          "term": format_term(f.term)} for f in r.families],
            "theory": self.theory.to_dict(),
            "proof": self.proof.to_dict(),
        }

    def to_json(self, indent: int | None = 1) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, doc: dict) -> RealizationCertificate:
        if doc.get("schema") != CERTIFICATE_SCHEMA:
            raise ValueError(f"unsupported certificate schema {doc.get('schema')!r}")
        from .parser import parse_term
        modal = parse_formula(doc["modal"], "modal")
        realized = parse_formula(doc["realized"], allow_reserved=True)
        fams = [FamilyTerm(f["box"], f["polarity"], f["essential"], (),
                           parse_term(f["term"], allow_reserved=True)) for f in doc["families"]]
        theory = TheoryDescriptor.from_dict(doc.get("theory", {}))
        real = Realization(modal, realized, fams, doc.get("mode") == "normal")
        return cls(real, SEProof.from_dict(doc["proof"]), theory)


# ---------------------------------------------------------------------------
# shared machinery


def _end_formula(d: gk.GKDerivation) -> Formula:
    seq = d.sequent
    if seq.ante or len(seq.succ) != 1:
        raise RealizationError("the derivation must end in a sequent => A")
    return seq.succ[0]


def _box_depths(f: Formula) -> dict[int, int]:
    out: dict[int, int] = {}
    stack = [(f, 0)]
    while stack:
        g, k = stack.pop()
        if type(g) is Imp:
            stack += [(g.left, k), (g.right, k)]
        elif type(g) is Box:
            out[g.occ] = k
            stack.append((g.body, k + 1))
    return out


class _Realizer:
    def __init__(self, d: gk.GKDerivation, theory: TheoryDescriptor):
        self.d = d
        self.goal = _end_formula(d)
        self.theory = theory
        self.b = ProofBuilder(theory)
        self.parts = gk.compute_families(d)
        self.terms: dict[int, Term] = {}          # family id -> term
        self._cache: dict[Formula, Formula] = {}
        order = [bx.occ for bx in boxes(self.goal)]
        self.label = {}
        for pos, occ in enumerate(order, 1):
            self.label.setdefault(self.parts.family_of[occ], pos)

    def realize(self, f: Formula) -> Formula:
        hit = self._cache.get(f)
        if hit is not None:
            return hit
        tf = type(f)
        if tf is Imp:
            out = Imp(self.realize(f.left), self.realize(f.right))
        elif tf is Box:
            out = Ev(self.terms[self.parts.family_of[f.occ]], self.realize(f.body))
        else:
            out = f
        self._cache[f] = out
        return out

    def sequent_formula(self, seq: gk.Sequent) -> Formula:
        return Imp(conj(*map(self.realize, seq.ante)), disj(*map(self.realize, seq.succ)))

    def propositional(self, node: gk.GKDerivation, children: list[int]) -> int:
        goal = self.sequent_formula(node.sequent)
        if is_tautology(goal):
            return self.b.taut(goal)
        return self.b.consequence(goal, children)

    def aligned(self, idx: int, antecedent: tuple[Formula, ...], goal: Formula) -> int:
        """Proof of ``conj(antecedent) -> goal`` from one with a permuted antecedent."""
        want = Imp(conj(*antecedent), goal)
        if self.b.formula(idx) == want:
            return idx
        return self.b.consequence(want, [idx])

    def family_rows(self, normal: bool) -> list[FamilyTerm]:
        rows = []
        for fid, fam in self.parts.families.items():
            if fid not in self.label:
                continue
            rows.append(FamilyTerm(self.label[fid], fam.polarity.value, fam.essential,
                                   tuple(fam.members), self.terms[fid]))
        rows.sort(key=lambda r: r.label)
        return rows

    def finish(self, root_idx: int, normal: bool) -> RealizationCertificate:
        realized = self.realize(self.goal)
        final = self.b.mp(self.b.taut(TOP), root_idx)
        if self.b.formula(final) != realized:
            raise AssertionError("root sequent proof does not match the realized formula")
        proof = self.b.extract(final)
        real = Realization(self.goal, realized, self.family_rows(normal), normal)
        return RealizationCertificate(real, proof, self.theory)


# ---------------------------------------------------------------------------
# non-normal realization


def realize_nonnormal(d: gk.GKDerivation, theory: TheoryDescriptor = DEFAULT_THEORY,
                      shared_variable: bool = True) -> RealizationCertificate:
    """Realization with one variable for all negative and non-essential families.

    With ``shared_variable=False`` such families get their own variables,
    except that families occurring together on the left of one essential
    family's box rules share one (the ``q`` construction needs a single
    variable there).
    """
    theory.require("axiomatically_appropriate", "schematic", "supports_weakening")
    gk.check_derivation(d)
    d = gk.equalize_all(d)
    r = _Realizer(d, theory)
    parts = r.parts
    plain = [fid for fid, fam in parts.families.items() if not fam.essential]
    if shared_variable:
        for fid in plain:
            r.terms[fid] = Var("x")
    else:
        group = {fid: fid for fid in plain}

        def find(a):
            while group[a] != a:
                a = group[a]
            return a

        for fam in parts.essential():
            for node in fam.box_nodes:
                left = [parts.family_of[bx.occ] for bx in node.sequent.ante]
                for other in left[1:]:
                    ra, rb = find(left[0]), find(other)
                    if ra != rb:
                        group[max(ra, rb)] = min(ra, rb)
        names: dict[int, Var] = {}
        for fid in sorted(plain, key=lambda f: r.label.get(f, 0)):
            root = find(fid)
            if root not in names:
                names[root] = Var(f"x{len(names) + 1}")
            r.terms[fid] = names[root]

    proved: dict[int, int] = {}

    def prove(node: gk.GKDerivation) -> int:
        for n in node.postorder():
            if id(n) in proved:
                continue
            if n.rule == gk.BOX:
                raise AssertionError("box rule reached before its family was realized")
            proved[id(n)] = r.propositional(n, [proved[id(c)] for c in n.children])
        return proved[id(node)]

    depth = _box_depths(r.goal)
    essential = sorted(parts.essential(), key=lambda f: (-depth.get(f.id, 0), r.label.get(f.id, 0)))
    for fam in essential:
        premises = [prove(n.children[0]) for n in fam.box_nodes]
        goal = r.realize(fam.box_nodes[0].principal.body)
        empty = [k for k, n in enumerate(fam.box_nodes) if not n.children[0].sequent.ante]
        if empty:
            term, idx = lift(r.b, [], goal, premises[empty[0]])
            r.terms[fam.id] = term
            for n in fam.box_nodes:
                proved[id(n)] = r.b.consequence(r.sequent_formula(n.sequent), [idx])
            continue
        gammas = [tuple(map(r.realize, n.children[0].sequent.ante)) for n in fam.box_nodes]
        x = r.terms[parts.family_of[fam.box_nodes[0].sequent.ante[0].occ]]
        for n in fam.box_nodes:
            if any(r.terms[parts.family_of[bx.occ]] != x for bx in n.sequent.ante):
                raise AssertionError("box rule antecedents of one family need one variable")
        q, idxs = build_q(r.b, gammas, goal, premises, x)
        r.terms[fam.id] = q
        for n, idx in zip(fam.box_nodes, idxs):
            proved[id(n)] = r.aligned(idx, tuple(map(r.realize, n.sequent.ante)),
                                      Ev(q, goal))
    return r.finish(prove(d), normal=False)


# ---------------------------------------------------------------------------
# normal realization


def realize_normal(d: gk.GKDerivation,
                   theory: TheoryDescriptor = DEFAULT_THEORY) -> RealizationCertificate:
    """Realization mapping negative families to pairwise distinct variables."""
    theory.require("axiomatically_appropriate", "schematic", "star_constant")
    gk.check_derivation(d)
    r = _Realizer(d, theory)
    parts = r.parts
    b = r.b
    ordered = sorted(parts.families.values(), key=lambda f: r.label.get(f.id, 0))
    negatives = positives = 0
    # components[fid] lists the star operands of an essential family's term
    components: dict[int, list[Term]] = {}
    slot: dict[int, tuple[int, int]] = {}     # id(box node) -> (family, operand position)
    provisional = 0
    for fam in ordered:
        if fam.essential:
            comps = []
            for n in fam.box_nodes:
                provisional += 1
                slot[id(n)] = (fam.id, len(comps))
                comps.append(Var(f"{PROVISIONAL_PREFIX}{provisional}"))
            components[fam.id] = comps
            r.terms[fam.id] = _star_fold(theory, comps)
        elif fam.polarity.value == "-":
            negatives += 1
            r.terms[fam.id] = Var(f"x{negatives}")
        else:
            positives += 1
            r.terms[fam.id] = Var(f"y{positives}")

    history: list[tuple[str, Term]] = []
    proved: dict[int, tuple[int, int]] = {}     # id(node) -> (step, substitutions seen)

    def current(node: gk.GKDerivation) -> int:
        idx, seen = proved[id(node)]
        for name, term in history[seen:]:
            idx = b.jv(idx, name, term)
        proved[id(node)] = (idx, len(history))
        return idx

    for n in d.postorder():
        kids = [current(c) for c in n.children]
        if n.rule != gk.BOX:
            proved[id(n)] = (r.propositional(n, kids), len(history))
            continue
        fid, pos = slot[id(n)]
        body = r.realize(n.principal.body)
        hyp_boxes = n.sequent.ante
        premise = r.aligned(kids[0], tuple(r.realize(bx.body) for bx in hyp_boxes), body)
        hyps = [(r.terms[parts.family_of[bx.occ]], r.realize(bx.body)) for bx in hyp_boxes]
        t, idx = lift(b, hyps, body, premise)
        comps = components[fid]
        name = comps[pos].name
        comps[pos] = t
        history.append((name, t))
        r.terms[fid] = substitute_term(r.terms[fid], {name: t})
        r._cache.clear()
        proved[id(n)] = (b.chain(idx, _star_chain(b, theory, comps, pos, body)), len(history))
    return r.finish(current(d), normal=True)


def _star_fold(theory: TheoryDescriptor, comps: list[Term]) -> Term:
    out = comps[0]
    for c in comps[1:]:
        out = star_term(theory, out, c)
    return out


def _star_chain(b: ProofBuilder, theory: TheoryDescriptor, comps: list[Term], pos: int,
                body: Formula) -> int:
    """Proof of ``comps[pos]:body -> (comps[0]*...*comps[-1]):body``."""
    start = Ev(comps[pos], body)
    if pos == 0:
        idx = b.taut(Imp(start, start))
        acc = comps[0]
    else:
        left = _star_fold(theory, comps[:pos])
        acc, _, idx = star(b, left, comps[pos], body)
    for c in comps[pos + 1:]:
        acc, step, _ = star(b, acc, c, body)
        idx = b.chain(idx, step)
    return idx
