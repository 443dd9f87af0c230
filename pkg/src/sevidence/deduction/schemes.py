"""Shapes of the SE axiom schemes and the matcher for semiring rewrite steps."""

from __future__ import annotations

from typing import NamedTuple

from ..syntax import (ONE, ZERO, Ev, Formula, Imp, One, Prod, Sum, Term, Var, Zero,
                      conj_parts)

_x, _y, _z = Var("x"), Var("y"), Var("z")


class RewriteRule(NamedTuple):
    scheme: str
    lhs: Term
    rhs: Term
    reversible: bool


# Pattern variables are x, y, z; every scheme with two printed forms lists both.
REWRITE_RULES: tuple[RewriteRule, ...] = (
    RewriteRule("a+", Sum(Sum(_x, _y), _z), Sum(_x, Sum(_y, _z)), False),
    RewriteRule("c+", Sum(_x, _y), Sum(_y, _x), False),
    RewriteRule("0+", Sum(_x, ZERO), _x, True),
    RewriteRule("am", Prod(Prod(_x, _y), _z), Prod(_x, Prod(_y, _z)), True),
    RewriteRule("a0", Prod(_x, ZERO), ZERO, True),
    RewriteRule("a0", Prod(ZERO, _x), ZERO, True),
    RewriteRule("a1", Prod(_x, ONE), _x, True),
    RewriteRule("a1", Prod(ONE, _x), _x, True),
    RewriteRule("dl", Prod(_x, Sum(_y, _z)), Sum(Prod(_x, _y), Prod(_x, _z)), True),
    RewriteRule("dr", Prod(Sum(_y, _z), _x), Sum(Prod(_y, _x), Prod(_z, _x)), True),
)

SEMIRING_SCHEMES = ("a+", "c+", "0+", "am", "a0", "a1", "dl", "dr")
ALL_SCHEMES = ("cl", "j", "j+") + SEMIRING_SCHEMES


def match_pattern(pattern: Term, term: Term, binding: dict[str, Term],
                  variables_only: bool) -> bool:
    """Extend ``binding`` so that ``pattern`` instantiates to ``term``."""
    tp = type(pattern)
    if tp is Var:
        if variables_only and type(term) is not Var:
            return False
        bound = binding.get(pattern.name)
        if bound is None:
            binding[pattern.name] = term
            return True
        return bound == term
    if tp is Zero or tp is One:
        return type(term) is tp
    if type(term) is not tp:
        return False
    return (match_pattern(pattern.left, term.left, binding, variables_only)
            and match_pattern(pattern.right, term.right, binding, variables_only))


def instantiate(pattern: Term, binding: dict[str, Term]) -> Term:
    tp = type(pattern)
    if tp is Var:
        return binding[pattern.name]
    if tp is Sum or tp is Prod:
        return tp(instantiate(pattern.left, binding), instantiate(pattern.right, binding))
    return pattern


def rule_pair_matches(rule: RewriteRule, s: Term, t: Term, variables_only: bool,
                      backwards: bool = False) -> bool:
    lhs, rhs = (rule.rhs, rule.lhs) if backwards else (rule.lhs, rule.rhs)
    binding: dict[str, Term] = {}
    if not match_pattern(lhs, s, binding, variables_only):
        return False
    return match_pattern(rhs, t, binding, variables_only)


def scheme_licenses(scheme: str, s: Term, t: Term, variables_only: bool = True) -> bool:
    """Is ``A[w/s] -> A[w/t]`` an instance of ``scheme``?"""
    for rule in REWRITE_RULES:
        if rule.scheme != scheme:
            continue
        if rule_pair_matches(rule, s, t, variables_only):
            return True
        if rule.reversible and rule_pair_matches(rule, s, t, variables_only, backwards=True):
            return True
    return False


def _term_positions(f: Formula, g: Formula, out: list):
    """Pairs of corresponding terms of two formulas, or False if the skeletons differ."""
    tf = type(f)
    if tf is not type(g):
        return False
    if tf is Imp:
        return _term_positions(f.left, g.left, out) and _term_positions(f.right, g.right, out)
    if tf is Ev:
        out.append((f.term, g.term))
        return _term_positions(f.body, g.body, out)
    return f == g


def _first_spine(u: Term, v: Term) -> list[tuple[Term, Term]]:
    spine = []
    while u != v:
        spine.append((u, v))
        if type(u) is not type(v) or type(u) not in (Sum, Prod):
            break
        u, v = (u.left, v.left) if u.left != v.left else (u.right, v.right)
    return spine


def _consistent(u: Term, v: Term, s: Term, t: Term) -> bool:
    """Can ``u``/``v`` be written as ``C[w/s]``/``C[w/t]`` for one context ``C``?"""
    if u == s and v == t:
        return True
    if u == v:
        return True
    if type(u) is type(v) and type(u) in (Sum, Prod):
        return _consistent(u.left, v.left, s, t) and _consistent(u.right, v.right, s, t)
    return False


def match_semiring_step(lhs: Formula, rhs: Formula, scheme: str | None = None,
                        variables_only: bool = False):
    """Find ``(scheme, s, t)`` with ``lhs = A[w/s]``, ``rhs = A[w/t]`` and ``(s, t)`` a scheme instance.

    Returns None when no scheme applies, including when ``lhs == rhs``.
    """
    pairs: list[tuple[Term, Term]] = []
    if lhs == rhs or not _term_positions(lhs, rhs, pairs):
        return None
    first = next((p for p in pairs if p[0] != p[1]), None)
    if first is None:
        return None
    schemes = SEMIRING_SCHEMES if scheme is None else (scheme,)
    for s, t in _first_spine(*first):
        if not all(_consistent(u, v, s, t) for u, v in pairs):
            continue
        for sch in schemes:
            if scheme_licenses(sch, s, t, variables_only):
                return sch, s, t
    return None


def match_axiom_j(f: Formula) -> bool:
    """``x:(A -> B) -> (y:A -> x*y:B)`` with ``x``, ``y`` variables."""
    if type(f) is not Imp or type(f.left) is not Ev or type(f.right) is not Imp:
        return False
    first, rest = f.left, f.right
    if type(first.body) is not Imp or type(rest.left) is not Ev or type(rest.right) is not Ev:
        return False
    x, a, b = first.term, first.body.left, first.body.right
    y, a2 = rest.left.term, rest.left.body
    concl = rest.right
    return (type(x) is Var and type(y) is Var and a2 == a and concl.body == b
            and concl.term == Prod(x, y))


def match_axiom_jplus(f: Formula) -> bool:
    """``x:A & y:A -> (x+y):A`` with ``x``, ``y`` variables."""
    if type(f) is not Imp or type(f.right) is not Ev:
        return False
    parts = conj_parts(f.left)
    if parts is None:
        return False
    left, right = parts
    if type(left) is not Ev or type(right) is not Ev:
        return False
    x, y = left.term, right.term
    return (type(x) is Var and type(y) is Var and left.body == right.body == f.right.body
            and f.right.term == Sum(x, y))
