"""Incremental construction of SE proofs.

:class:`ProofBuilder` appends steps and remembers which formulas are already
proven, so repeated requests reuse earlier steps.  Axiom instances are always
emitted with fresh variables and then specialised by ``jv``, which keeps every
emitted axiom step a literal instance of its scheme.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

from ..freesemiring import _word_key, eq_terms
from ..syntax import (ZERO, Ev, Formula, Imp, One, Prod, Sum, Term, Var, Zero, conj,
                      formula_vars, term_vars)
from .proof import (JV, MP, AxiomJ, AxiomJPlus, PropTaut, SEProof, SemiringStep, Step,
                    TheoryMember)
from .schemes import REWRITE_RULES, instantiate, match_pattern
from .theory import DEFAULT_THEORY, TheoryDescriptor


class ProofBuilder:
    def __init__(self, theory: TheoryDescriptor = DEFAULT_THEORY):
        self.theory = theory
        self.steps: list[Step] = []
        self.formulas: list[Formula] = []
        self._index: dict[Formula, int] = {}
        self._fresh = itertools.count(1)
        self.internalized: dict[int, tuple[Term, int]] = {}

    def __len__(self):
        return len(self.steps)

    def formula(self, i: int) -> Formula:
        return self.formulas[i]

    def find(self, f: Formula) -> int | None:
        return self._index.get(f)

    def _add(self, step: Step, formula: Formula) -> int:
        hit = self._index.get(formula)
        if hit is not None:
            return hit
        self.steps.append(step)
        self.formulas.append(formula)
        self._index[formula] = len(self.steps) - 1
        return len(self.steps) - 1

    def fresh_var(self, *avoid: Formula | Term) -> Var:
        used: set[str] = set()
        for a in avoid:
            used |= term_vars(a) if isinstance(a, Term) else formula_vars(a)
        while True:
            name = f"_v{next(self._fresh)}"
            if name not in used:
                return Var(name)

    # primitive steps
    def taut(self, f: Formula) -> int:
        from ..taut import is_tautology
        if f not in self._index and not is_tautology(f):
            raise ValueError(f"not a tautology: {f}")
        return self._add(PropTaut(f), f)

    def member(self, f: Formula, note: str = "") -> int:
        if f not in self._index and not self.theory.is_member(f):
            raise ValueError(f"not a theory member: {f}")
        return self._add(TheoryMember(f, note), f)

    def mp(self, minor: int, major: int) -> int:
        imp = self.formulas[major]
        if type(imp) is not Imp or imp.left != self.formulas[minor]:
            raise ValueError("modus ponens does not apply")
        return self._add(MP(minor, major, imp.right), imp.right)

    def jv(self, source: int, var: str, term: Term) -> int:
        from ..syntax import substitute
        f = substitute(self.formulas[source], var, term)
        if f is self.formulas[source]:
            return source
        return self._add(JV(source, var, term, f), f)

    def _specialise(self, index: int, binding: Sequence[tuple[Var, Term]]) -> int:
        for var, term in binding:
            index = self.jv(index, var.name, term)
        return index

    # axiom instances for arbitrary terms
    def axiom_j(self, s: Term, t: Term, a: Formula, b: Formula) -> int:
        """``s:(a -> b) -> (t:a -> s*t:b)``."""
        x = self.fresh_var(a, b, s, t)
        y = self.fresh_var(a, b, s, t, x)
        inst = Imp(Ev(x, Imp(a, b)), Imp(Ev(y, a), Ev(Prod(x, y), b)))
        i = self._add(AxiomJ(inst), inst)
        return self._specialise(i, [(x, s), (y, t)])

    def axiom_jplus(self, s: Term, t: Term, a: Formula) -> int:
        """``s:a & t:a -> (s+t):a``."""
        x = self.fresh_var(a, s, t)
        y = self.fresh_var(a, s, t, x)
        inst = Imp(conj(Ev(x, a), Ev(y, a)), Ev(Sum(x, y), a))
        i = self._add(AxiomJPlus(inst), inst)
        return self._specialise(i, [(x, s), (y, t)])

    def rewrite(self, template: Formula, var: str, s: Term, t: Term, scheme: str) -> int:
        """``template[var/s] -> template[var/t]`` where ``(s, t)`` is an instance of ``scheme``."""
        for rule in REWRITE_RULES:
            if rule.scheme != scheme:
                continue
            directions = [(rule.lhs, rule.rhs)]
            if rule.reversible:
                directions.append((rule.rhs, rule.lhs))
            for lhs, rhs in directions:
                binding: dict[str, Term] = {}
                if match_pattern(lhs, s, binding, False) and match_pattern(rhs, t, binding, False):
                    return self._rewrite_instance(template, var, lhs, rhs, binding, scheme)
        raise ValueError(f"scheme {scheme} does not rewrite {s} to {t}")

    def _rewrite_instance(self, template, var, lhs, rhs, binding, scheme) -> int:
        avoid: list = [template, *binding.values()]
        fresh: dict[str, Term] = {}
        for name in sorted(binding):
            v = self.fresh_var(*avoid)
            avoid.append(v)
            fresh[name] = v
        left, right = instantiate(lhs, fresh), instantiate(rhs, fresh)
        step = SemiringStep(template, var, left, right, scheme)
        i = self._add(step, step.claimed())
        return self._specialise(i, [(fresh[n], binding[n]) for n in sorted(binding)])

    # derived reasoning
    def consequence(self, goal: Formula, premises: Iterable[int]) -> int:
        """Prove ``goal`` from proven premises when it follows propositionally."""
        premises = list(premises)
        hit = self._index.get(goal)
        if hit is not None:
            return hit
        f = goal
        for p in reversed(premises):
            f = Imp(self.formulas[p], f)
        i = self.taut(f)
        for p in premises:
            i = self.mp(p, i)
        return i

    def chain(self, first: int, second: int) -> int:
        """From ``A -> B`` and ``B -> C`` prove ``A -> C``."""
        ab, bc = self.formulas[first], self.formulas[second]
        if ab.right != bc.left:
            raise ValueError("implications do not chain")
        return self.consequence(Imp(ab.left, bc.right), [first, second])

    def apply(self, fun: int, arg: int) -> tuple[Term, int]:
        """From ``u:(X -> Y)`` and ``s:X`` prove ``(u*s):Y``."""
        f, a = self.formulas[fun], self.formulas[arg]
        j = self.axiom_j(f.term, a.term, f.body.left, f.body.right)
        i = self.mp(arg, self.mp(fun, j))
        return self.formulas[i].term, i

    def equate(self, template: Formula, var: str, s: Term, t: Term) -> int:
        """``template[var/s] -> template[var/t]`` for terms equal in every semiring."""
        if not eq_terms(s, t):
            raise ValueError(f"{s} and {t} are not equal modulo the semiring laws")
        from ..syntax import substitute
        moves = rewrite_sequence(s, t)
        if not moves:
            f = substitute(template, var, s)
            return self.taut(Imp(f, f))
        hole = self.fresh_var(template, s, t)
        result = None
        for before, path, scheme, old, new in moves:
            context = substitute(template, var, _put(before, path, hole))
            step = self.rewrite(context, hole.name, old, new, scheme)
            result = step if result is None else self.chain(result, step)
        return result

    # output
    def extract(self, target: int) -> SEProof:
        """A standalone proof of step ``target`` containing only the steps it depends on."""
        needed: set[int] = set()
        stack = [target]
        while stack:
            i = stack.pop()
            if i in needed:
                continue
            needed.add(i)
            s = self.steps[i]
            if type(s) is MP:
                stack += [s.minor, s.major]
            elif type(s) is JV:
                stack.append(s.source)
        order = sorted(needed)
        renum = {old: new for new, old in enumerate(order)}
        out = []
        for i in order:
            s = self.steps[i]
            if type(s) is MP:
                s = MP(renum[s.minor], renum[s.major], s.formula)
            elif type(s) is JV:
                s = JV(renum[s.source], s.var, s.term, s.formula)
            out.append(s)
        return SEProof(out)


# ---------------------------------------------------------------------------
# Rewrite sequences between terms equal in the free semiring


def _get(t: Term, path: tuple[int, ...]) -> Term:
    for k in path:
        t = t.left if k == 0 else t.right
    return t


def _put(t: Term, path: tuple[int, ...], sub: Term) -> Term:
    if not path:
        return sub
    if path[0] == 0:
        return type(t)(_put(t.left, path[1:], sub), t.right)
    return type(t)(t.left, _put(t.right, path[1:], sub))


def _word(m: Term) -> list[Term]:
    out = []
    while type(m) is Prod:
        out.append(m.left)
        m = m.right
    if type(m) is not One:
        out.append(m)
    return out


def _key(m: Term):
    return _word_key(tuple(_word(m)))


class _Normalizer:
    """Records primitive rewrite moves that bring a term into canonical shape.

    Canonical shape: ``0``, or a right-nested sum of monomials sorted by word
    order, each monomial ``1`` or a right-nested product of atoms.
    """

    def __init__(self, term: Term):
        self.term = term
        self.moves: list[tuple[Term, tuple[int, ...], str, Term, Term]] = []

    def move(self, path, scheme, new):
        old = _get(self.term, path)
        self.moves.append((self.term, path, scheme, old, new))
        self.term = _put(self.term, path, new)

    def at(self, path):
        return _get(self.term, path)

    def norm(self, path=()):
        u = self.at(path)
        if type(u) is Sum:
            self.norm(path + (0,))
            self.norm(path + (1,))
            self.merge(path)
        elif type(u) is Prod:
            self.norm(path + (0,))
            self.norm(path + (1,))
            self.mul(path)

    def merge(self, path):
        u = self.at(path)
        p, q = u.left, u.right
        if type(p) is Zero:
            self.move(path, "c+", Sum(q, p))
            self.move(path, "0+", q)
        elif type(q) is Zero:
            self.move(path, "0+", p)
        elif type(p) is Sum:
            self.move(path, "a+", Sum(p.left, Sum(p.right, q)))
            self.merge(path + (1,))
            self.insert(path)
        else:
            self.insert(path)

    def insert(self, path):
        u = self.at(path)
        m, rest = u.left, u.right
        if type(rest) is not Sum:
            if _key(m) > _key(rest):
                self.move(path, "c+", Sum(rest, m))
            return
        r, tail = rest.left, rest.right
        if _key(m) <= _key(r):
            return
        # m+(r+tail) -> (r+tail)+m -> r+(tail+m) -> r+(m+tail)
        self.move(path, "c+", Sum(rest, m))
        self.move(path, "a+", Sum(r, Sum(tail, m)))
        self.move(path + (1,), "c+", Sum(m, tail))
        self.insert(path + (1,))

    def mul(self, path):
        u = self.at(path)
        p, q = u.left, u.right
        if type(p) is Zero or type(q) is Zero:
            self.move(path, "a0", ZERO)
        elif type(p) is Sum:
            self.move(path, "dr", Sum(Prod(p.left, q), Prod(p.right, q)))
            self.mul(path + (0,))
            self.mul(path + (1,))
            self.merge(path)
        elif type(q) is Sum:
            self.move(path, "dl", Sum(Prod(p, q.left), Prod(p, q.right)))
            self.mul(path + (0,))
            self.mul(path + (1,))
            self.merge(path)
        else:
            self.mono(path)

    def mono(self, path):
        u = self.at(path)
        p, q = u.left, u.right
        if type(p) is One:
            self.move(path, "a1", q)
        elif type(q) is One:
            self.move(path, "a1", p)
        elif type(p) is Prod:
            self.move(path, "am", Prod(p.left, Prod(p.right, q)))
            self.mono(path + (1,))


def _reverse(moves):
    out = []
    for before, path, scheme, old, new in reversed(moves):
        after = _put(before, path, new)
        if scheme != "a+":
            out.append((after, path, scheme, new, old))
            continue
        # x+(y+z) -> (x+y)+z from c+ and a+ only
        x, y, z = old.left.left, old.left.right, old.right
        seq = [("c+", Sum(Sum(y, z), x)), ("a+", Sum(y, Sum(z, x))), ("c+", Sum(Sum(z, x), y)),
               ("a+", Sum(z, Sum(x, y))), ("c+", Sum(Sum(x, y), z))]
        cur = after
        for sch, nxt in seq:
            out.append((cur, path, sch, _get(cur, path), nxt))
            cur = _put(cur, path, nxt)
    return out


def canonical_form(t: Term) -> Term:
    n = _Normalizer(t)
    n.norm()
    return n.term


def rewrite_sequence(s: Term, t: Term):
    """Primitive moves ``(term, path, scheme, old, new)`` turning ``s`` into ``t``."""
    ns, nt = _Normalizer(s), _Normalizer(t)
    ns.norm()
    nt.norm()
    if ns.term != nt.term:
        raise ValueError("terms have different canonical forms")
    return ns.moves + _reverse(nt.moves)


__all__ = ["ProofBuilder", "rewrite_sequence", "canonical_form"]
