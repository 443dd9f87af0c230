"""Proof search, explicit derivations and box families for the sequent calculus GK of K.

Search runs in a context-sharing calculus (axioms keep their context, the
box rule silently discards the non-boxed part) and is then elaborated into
explicit GK derivations, where axioms are bare ``P => P`` / ``bot =>`` and
context is introduced by weakening.

Box occurrence identity is the ``occ`` field of :class:`~sevidence.syntax.Box`;
every formula in a derivation is a subformula object of the end sequent, so
occurrences keep their ids through all rules.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator

from .printer import format_formula, format_sequent
from .syntax import Atom, Bot, Box, Formula, Imp, Polarity, annotate_polarity, boxes

DERIVATION_SCHEMA = "sevidence.gk/1"

AX_P = "AxP"
AX_BOT = "AxBot"
IMP_L = "ImpL"
IMP_R = "ImpR"
BOX = "BoxRule"
WEAK_L = "WeakL"
WEAK_R = "WeakR"
CONTR_L = "ContrL"
CONTR_R = "ContrR"
RULES = (AX_P, AX_BOT, IMP_L, IMP_R, BOX, WEAK_L, WEAK_R, CONTR_L, CONTR_R)


class DerivationError(ValueError):
    pass


@dataclass(frozen=True)
class Sequent:
    ante: tuple[Formula, ...]
    succ: tuple[Formula, ...]

    def __str__(self):
        return format_sequent(self.ante, self.succ)

    def same_multisets(self, other: Sequent) -> bool:
        return Counter(self.ante) == Counter(other.ante) and Counter(self.succ) == Counter(other.succ)


@dataclass(frozen=True, eq=False)
class GKDerivation:
    """A derivation node: the sequent it proves, the last rule, and the premises' derivations.

    ``principal`` is the formula the rule acts on in the conclusion (the
    boxed succedent for ``BoxRule``, the atom for ``AxP``).
    """
    sequent: Sequent
    rule: str
    principal: Formula | None = None
    children: tuple[GKDerivation, ...] = ()

    def nodes(self) -> Iterator[GKDerivation]:
        """Preorder traversal."""
        stack = [self]
        while stack:
            n = stack.pop()
            yield n
            stack.extend(reversed(n.children))

    def postorder(self) -> list[GKDerivation]:
        out: list[GKDerivation] = []
        stack: list[tuple[GKDerivation, bool]] = [(self, False)]
        while stack:
            n, done = stack.pop()
            if done:
                out.append(n)
                continue
            stack.append((n, True))
            stack.extend((c, False) for c in reversed(n.children))
        return out

    def size(self) -> int:
        return sum(1 for _ in self.nodes())

    def height(self) -> int:
        return 1 + max((c.height() for c in self.children), default=0)

    def to_dict(self) -> dict:
        d: dict = {"sequent": str(self.sequent), "rule": self.rule}
        if self.principal is not None:
            d["principal"] = format_formula(self.principal)
        if self.children:
            d["children"] = [c.to_dict() for c in self.children]
        return d

    def to_json(self, indent: int | None = 1) -> str:
        return json.dumps({"schema": DERIVATION_SCHEMA, "root": self.to_dict()}, indent=indent)

    def format(self, indent: str = "  ") -> str:
        """Indented text: conclusion first, premises below, one level deeper each."""
        lines = []
        stack = [(self, 0)]
        while stack:
            n, depth = stack.pop()
            lines.append(f"{indent * depth}{n.sequent}    ({n.rule})")
            stack.extend((c, depth + 1) for c in reversed(n.children))
        return "\n".join(lines)


def _remove_one(items: tuple[Formula, ...], f: Formula) -> tuple[Formula, ...]:
    i = items.index(f)
    return items[:i] + items[i + 1:]


# ---------------------------------------------------------------------------
# search in the context-sharing calculus


@dataclass(frozen=True, eq=False)
class _Internal:
    sequent: Sequent
    rule: str
    principal: Formula | None = None
    children: tuple[_Internal, ...] = ()
    chosen: tuple[Formula, ...] = ()     # boxed antecedents kept by the box rule


def _key(ante, succ):
    return frozenset(Counter(ante).items()), frozenset(Counter(succ).items())


class _Search:
    def __init__(self):
        self.failed: set = set()

    def run(self, ante: tuple[Formula, ...], succ: tuple[Formula, ...]) -> _Internal | None:
        key = _key(ante, succ)
        if key in self.failed:
            return None
        out = self._step(ante, succ)
        if out is None:
            self.failed.add(key)
        return out

    def _step(self, ante, succ):
        seq = Sequent(ante, succ)
        for f in ante:
            if type(f) is Bot:
                return _Internal(seq, AX_BOT, f)
        for f in ante:
            if type(f) is Atom and f in succ:
                return _Internal(seq, AX_P, f)
        for f in succ:
            if type(f) is Imp:
                rest = _remove_one(succ, f)
                sub = self.run((f.left,) + ante, rest + (f.right,))
                return None if sub is None else _Internal(seq, IMP_R, f, (sub,))
        for f in ante:
            if type(f) is Imp:
                rest = _remove_one(ante, f)
                left = self.run(rest, succ + (f.left,))
                if left is None:
                    return None
                right = self.run((f.right,) + rest, succ)
                if right is None:
                    return None
                return _Internal(seq, IMP_L, f, (left, right))
        # Every boxed antecedent is kept: if a sub-multiset works, so does the whole.
        chosen = tuple(f for f in ante if type(f) is Box)
        bodies = tuple(b.body for b in chosen)
        for f in succ:
            if type(f) is Box:
                sub = self.run(bodies, (f.body,))
                if sub is not None:
                    return _Internal(seq, BOX, f, (sub,), chosen)
        return None


def search(goal: Formula) -> _Internal | None:
    """Context-sharing derivation of ``=> goal``, or None when ``goal`` is not K-valid."""
    return search_sequent((), (goal,))


def search_sequent(ante, succ) -> _Internal | None:
    return _Search().run(tuple(ante), tuple(succ))


# ---------------------------------------------------------------------------
# elaboration


def weaken_to(node: GKDerivation, target: Sequent) -> GKDerivation:
    """Add WeakR then WeakL steps below ``node`` until its sequent is ``target``.

    Intermediate sequents list formulas in ``target`` order.
    """
    kept_ante = _embed(node.sequent.ante, target.ante)
    kept_succ = _embed(node.sequent.succ, target.succ)
    if kept_ante is None or kept_succ is None:
        raise DerivationError("weakening target does not contain the sequent")
    for j in range(len(target.succ)):
        if j not in kept_succ:
            kept_succ.add(j)
            seq = Sequent(node.sequent.ante, tuple(target.succ[k] for k in sorted(kept_succ)))
            node = GKDerivation(seq, WEAK_R, target.succ[j], (node,))
    for i in range(len(target.ante)):
        if i not in kept_ante:
            kept_ante.add(i)
            seq = Sequent(tuple(target.ante[k] for k in sorted(kept_ante)), node.sequent.succ)
            node = GKDerivation(seq, WEAK_L, target.ante[i], (node,))
    if node.sequent != target:
        # same multisets, different listing order: relist without a rule
        node = GKDerivation(target, node.rule, node.principal, node.children)
    return node


def _embed(small, big) -> set[int] | None:
    """Positions of ``big`` matching the multiset ``small`` (first free match each)."""
    used: set[int] = set()
    for f in small:
        for j, g in enumerate(big):
            if j not in used and g == f:
                used.add(j)
                break
        else:
            return None
    return used


def elaborate(d: _Internal) -> GKDerivation:
    """Explicit GK derivation with the same end sequent."""
    seq = d.sequent
    if d.rule == AX_P:
        base = GKDerivation(Sequent((d.principal,), (d.principal,)), AX_P, d.principal)
        return weaken_to(base, seq)
    if d.rule == AX_BOT:
        return weaken_to(GKDerivation(Sequent((d.principal,), ()), AX_BOT, d.principal), seq)
    children = tuple(elaborate(c) for c in d.children)
    if d.rule == BOX:
        core = GKDerivation(Sequent(d.chosen, (d.principal,)), BOX, d.principal, children)
        return weaken_to(core, seq)
    return GKDerivation(seq, d.rule, d.principal, children)


def prove(goal: Formula) -> GKDerivation | None:
    """Explicit GK derivation of ``=> goal``, or None if ``goal`` is not valid in K."""
    d = search(goal)
    return None if d is None else elaborate(d)


def prove_sequent(ante, succ) -> GKDerivation | None:
    d = search_sequent(ante, succ)
    return None if d is None else elaborate(d)


# ---------------------------------------------------------------------------
# checking


def check_node(n: GKDerivation) -> None:
    """Validate one rule instance against its schema; raise :class:`DerivationError`."""
    seq, rule, p, kids = n.sequent, n.rule, n.principal, n.children
    prem = [c.sequent for c in kids]

    def need(cond, msg):
        if not cond:
            raise DerivationError(f"{rule} at {seq}: {msg}")

    need(rule in RULES, "unknown rule")
    if rule == AX_P:
        need(not kids and type(p) is Atom and seq.ante == (p,) and seq.succ == (p,), "not P => P")
        return
    if rule == AX_BOT:
        need(not kids and type(p) is Bot and seq.ante == (p,) and seq.succ == (), "not bot =>")
        return
    if rule == BOX:
        need(len(kids) == 1, "needs one premise")
        need(type(p) is Box and seq.succ == (p,), "succedent must be the principal box")
        need(all(type(f) is Box for f in seq.ante), "antecedent must be boxed")
        want = Sequent(tuple(f.body for f in seq.ante), (p.body,))
        need(prem[0].same_multisets(want), "premise must unbox the conclusion")
        return
    in_ante = rule in (IMP_L, WEAK_L, CONTR_L)
    side = seq.ante if in_ante else seq.succ
    need(p is not None and p in side, "principal formula missing")
    ctx = Sequent(_remove_one(seq.ante, p), seq.succ) if in_ante else \
        Sequent(seq.ante, _remove_one(seq.succ, p))
    if rule == IMP_L:
        need(type(p) is Imp and len(kids) == 2, "bad shape")
        need(prem[0].same_multisets(Sequent(ctx.ante, ctx.succ + (p.left,))), "left premise")
        need(prem[1].same_multisets(Sequent((p.right,) + ctx.ante, ctx.succ)), "right premise")
    elif rule == IMP_R:
        need(type(p) is Imp and len(kids) == 1, "bad shape")
        need(prem[0].same_multisets(Sequent((p.left,) + ctx.ante, ctx.succ + (p.right,))),
             "premise")
    elif rule in (WEAK_L, WEAK_R):
        need(len(kids) == 1 and prem[0].same_multisets(ctx), "premise must drop the principal")
    else:
        need(len(kids) == 1, "needs one premise")
        want = Sequent((p, p) + ctx.ante, ctx.succ) if in_ante else \
            Sequent(ctx.ante, ctx.succ + (p, p))
        need(prem[0].same_multisets(want), "premise must hold two copies")


def check_derivation(d: GKDerivation) -> None:
    for n in d.nodes():
        check_node(n)


def is_valid_derivation(d: GKDerivation) -> bool:
    try:
        check_derivation(d)
    except DerivationError:
        return False
    return True


# ---------------------------------------------------------------------------
# families


class _UnionFind:
    def __init__(self):
        self.parent: dict[int, int] = {}

    def add(self, x: int):
        self.parent.setdefault(x, x)

    def find(self, x: int) -> int:
        self.add(x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def _relate(uf: _UnionFind, f: Formula, g: Formula):
    """Relate the boxes at equal positions of two formulas of the same shape."""
    for a, b in zip(boxes(f), boxes(g)):
        uf.union(a.occ, b.occ)


def _take(items: list, f: Formula) -> Formula:
    """Remove and return the element of ``items`` equal to ``f``."""
    for j, g in enumerate(items):
        if g == f:
            return items.pop(j)
    raise DerivationError(f"missing premise formula {format_formula(f)}")


def _relate_side(uf: _UnionFind, prem, concl):
    """Pair unchanged formulas of premise and conclusion (multiset matching)."""
    pool = list(concl)
    for f in prem:
        for j, g in enumerate(pool):
            if g == f:
                _relate(uf, f, g)
                del pool[j]
                break


@dataclass
class Family:
    id: int
    polarity: Polarity
    essential: bool = False
    members: list[int] = field(default_factory=list)
    box_nodes: list[GKDerivation] = field(default_factory=list)


@dataclass
class FamilyPartition:
    family_of: dict[int, int]
    families: dict[int, Family]

    def of(self, occ: int) -> Family:
        return self.families[self.family_of[occ]]

    def essential(self) -> list[Family]:
        return [f for f in self.families.values() if f.essential]


def compute_families(d: GKDerivation) -> FamilyPartition:
    """Partition the box occurrences of ``d`` into families of related occurrences."""
    uf = _UnionFind()
    for n in d.nodes():
        for f in n.sequent.ante + n.sequent.succ:
            for b in boxes(f):
                uf.add(b.occ)
    for n in d.nodes():
        seq, p = n.sequent, n.principal
        if n.rule in (AX_P, AX_BOT):
            continue
        if n.rule == BOX:
            prem = n.children[0].sequent
            _relate(uf, prem.succ[0], p.body)
            _relate_side(uf, prem.ante, [f.body for f in seq.ante])
            continue
        in_ante = n.rule in (IMP_L, WEAK_L, CONTR_L)
        ctx_ante = _remove_one(seq.ante, p) if in_ante else seq.ante
        ctx_succ = seq.succ if in_ante else _remove_one(seq.succ, p)
        for k, c in enumerate(n.children):
            pa, ps = list(c.sequent.ante), list(c.sequent.succ)
            if n.rule == IMP_L:
                if k == 0:
                    _relate(uf, _take(ps, p.left), p.left)
                else:
                    _relate(uf, _take(pa, p.right), p.right)
            elif n.rule == IMP_R:
                _relate(uf, _take(pa, p.left), p.left)
                _relate(uf, _take(ps, p.right), p.right)
            elif n.rule in (CONTR_L, CONTR_R):
                side = pa if n.rule == CONTR_L else ps
                _relate(uf, _take(side, p), p)
                _relate(uf, _take(side, p), p)
            _relate_side(uf, pa, ctx_ante)
            _relate_side(uf, ps, ctx_succ)
    polarity: dict[int, Polarity] = {}
    end = d.sequent
    for f in end.ante:
        polarity.update(annotate_polarity(f, Polarity.NEGATIVE))
    for f in end.succ:
        polarity.update(annotate_polarity(f, Polarity.POSITIVE))
    family_of = {occ: uf.find(occ) for occ in uf.parent}
    families: dict[int, Family] = {}
    for occ in sorted(family_of):
        fid = family_of[occ]
        fam = families.get(fid)
        if fam is None:
            fam = families[fid] = Family(fid, polarity.get(occ, Polarity.POSITIVE))
        fam.members.append(occ)
        if occ in polarity and polarity[occ] is not fam.polarity:
            raise DerivationError(f"family {fid} mixes polarities")
    for n in d.nodes():
        if n.rule == BOX:
            fam = families[family_of[n.principal.occ]]
            fam.essential = True
            fam.box_nodes.append(n)
    return FamilyPartition(family_of, families)


# ---------------------------------------------------------------------------
# equalizing box premises


def _box_premise_sizes(fam: Family) -> list[int]:
    return [len(n.children[0].sequent.ante) for n in fam.box_nodes]


def equalize_box_premises(d: GKDerivation, fam: Family) -> GKDerivation:
    """Pad every box-rule premise of ``fam`` to the same antecedent size.

    The first antecedent formula of a short premise is duplicated by WeakL
    above the box rule, and the duplicates are contracted by ContrL below it.
    """
    sizes = _box_premise_sizes(fam)
    if not sizes:
        raise DerivationError("family has no box rules")
    if min(sizes) == 0:
        raise DerivationError("a box premise has an empty antecedent")
    m = max(sizes)
    targets = {id(n): n for n in fam.box_nodes if len(n.children[0].sequent.ante) < m}
    if not targets:
        return d
    return _rebuild(d, targets, m)


def _rebuild(n: GKDerivation, targets: dict[int, GKDerivation], m: int) -> GKDerivation:
    if id(n) in targets:
        prem = n.children[0]
        extra = m - len(prem.sequent.ante)
        dup = prem.sequent.ante[0]
        box = next(b for b in n.sequent.ante if b.body == dup)
        for _ in range(extra):
            prem = GKDerivation(Sequent((dup,) + prem.sequent.ante, prem.sequent.succ), WEAK_L,
                                dup, (prem,))
        node = GKDerivation(Sequent((box,) * extra + n.sequent.ante, n.sequent.succ), BOX,
                            n.principal, (prem,))
        for k in range(extra - 1, -1, -1):
            node = GKDerivation(Sequent((box,) * k + n.sequent.ante, n.sequent.succ), CONTR_L,
                                box, (node,))
        return node
    if not n.children:
        return n
    kids = tuple(_rebuild(c, targets, m) for c in n.children)
    if all(a is b for a, b in zip(kids, n.children)):
        return n
    return GKDerivation(n.sequent, n.rule, n.principal, kids)


def equalize_all(d: GKDerivation) -> GKDerivation:
    """Equalize every essential family whose box premises are all nonempty."""
    while True:
        for fam in compute_families(d).essential():
            sizes = _box_premise_sizes(fam)
            if min(sizes) > 0 and min(sizes) < max(sizes):
                d = equalize_box_premises(d, fam)
                break
        else:
            return d
