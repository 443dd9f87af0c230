"""Terms and formulas of SE, the modal language of K, and plain propositional logic.

All nodes are immutable and hash-consed by structure: the hash is computed once
at construction, so deep formulas can be used as dictionary keys cheaply.

The same ``Bot``/``Atom``/``Imp`` classes are shared by all three languages.
A justification formula may contain ``Ev`` (``t:A``), a modal formula ``Box``
(``[]A``), and a propositional formula neither.
"""

from __future__ import annotations

import enum
import itertools
from typing import Iterable, Iterator, Mapping

__all__ = [
    "Term", "Const", "Var", "Zero", "One", "ZERO", "ONE", "Sum", "Prod",
    "Formula", "Bot", "BOT", "Atom", "Imp", "Ev", "Box", "TOP",
    "neg", "conj", "disj", "iff", "conj_parts", "term_vars", "formula_vars",
    "is_ground", "term_size", "formula_size", "modal_depth", "substitute_term",
    "substitute", "apply_substitution", "project_modal", "project_propositional",
    "Polarity", "annotate_polarity", "boxes", "fresh_occurrence",
    "is_constant_name", "is_reserved_name", "power",
]

_occurrences = itertools.count(1)


def fresh_occurrence() -> int:
    """Return a process-wide unique occurrence id for a new ``Box`` node."""
    return next(_occurrences)


def is_reserved_name(name: str) -> bool:
    return name.startswith("_")


def is_constant_name(name: str) -> bool:
    """Default naming convention: identifiers starting with a-h are constants."""
    return name[:1] in "abcdefgh" and not is_reserved_name(name)


# ---------------------------------------------------------------------------
# Terms


class Term:
    __slots__ = ("_hash",)

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        from .printer import format_term
        return format_term(self)

    def __mul__(self, other: Term) -> Term:
        return Prod(self, other)

    def __add__(self, other: Term) -> Term:
        return Sum(self, other)


class _Leaf(Term):
    __slots__ = ("name",)
    _tag = ""

    def __init__(self, name: str):
        if not name:
            raise ValueError("term symbols need a nonempty name")
        self.name = name
        self._hash = hash((self._tag, name))

    def __eq__(self, other):
        return self is other or (type(other) is type(self) and other.name == self.name)

    def __repr__(self):
        return f"{type(self).__name__}({self.name!r})"

    def __reduce__(self):
        return (type(self), (self.name,))


class Const(_Leaf):
    """A user justification constant."""
    __slots__ = ()
    _tag = "c"


class Var(_Leaf):
    """A justification variable."""
    __slots__ = ()
    _tag = "v"


class Zero(Term):
    __slots__ = ()

    def __init__(self):
        self._hash = hash("0")

    def __eq__(self, other):
        return type(other) is Zero

    def __repr__(self):
        return "ZERO"

    def __reduce__(self):
        return (Zero, ())


class One(Term):
    __slots__ = ()

    def __init__(self):
        self._hash = hash("1")

    def __eq__(self, other):
        return type(other) is One

    def __repr__(self):
        return "ONE"

    def __reduce__(self):
        return (One, ())


ZERO = Zero()
ONE = One()


class _BinTerm(Term):
    __slots__ = ("left", "right")
    _tag = ""

    def __init__(self, left: Term, right: Term):
        self.left = left
        self.right = right
        self._hash = hash((self._tag, left._hash, right._hash))

    def __eq__(self, other):
        if self is other:
            return True
        return (type(other) is type(self) and other._hash == self._hash
                and other.left == self.left and other.right == self.right)

    def __repr__(self):
        return f"{type(self).__name__}({self.left!r}, {self.right!r})"

    def __reduce__(self):
        return (type(self), (self.left, self.right))


class Sum(_BinTerm):
    __slots__ = ()
    _tag = "+"


class Prod(_BinTerm):
    __slots__ = ()
    _tag = "*"


def power(x: Term, k: int) -> Term:
    """``x^0 = 1`` and ``x^(k+1) = x^k * x``."""
    t: Term = ONE
    for _ in range(k):
        t = Prod(t, x)
    return t


# ---------------------------------------------------------------------------
# Formulas


class Formula:
    __slots__ = ("_hash",)

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        from .printer import format_formula
        return format_formula(self)


class Bot(Formula):
    __slots__ = ()

    def __init__(self):
        self._hash = hash("bot")

    def __eq__(self, other):
        return type(other) is Bot

    def __repr__(self):
        return "BOT"

    def __reduce__(self):
        return (Bot, ())


BOT = Bot()


class Atom(Formula):
    __slots__ = ("name",)

    def __init__(self, name: str):
        if not name:
            raise ValueError("atoms need a nonempty name")
        self.name = name
        self._hash = hash(("P", name))

    def __eq__(self, other):
        return self is other or (type(other) is Atom and other.name == self.name)

    def __repr__(self):
        return f"Atom({self.name!r})"

    def __reduce__(self):
        return (Atom, (self.name,))


class Imp(Formula):
    __slots__ = ("left", "right")

    def __init__(self, left: Formula, right: Formula):
        self.left = left
        self.right = right
        self._hash = hash(("->", left._hash, right._hash))

    def __eq__(self, other):
        if self is other:
            return True
        return (type(other) is Imp and other._hash == self._hash
                and other.left == self.left and other.right == self.right)

    def __repr__(self):
        return f"Imp({self.left!r}, {self.right!r})"

    def __reduce__(self):
        return (Imp, (self.left, self.right))


class Ev(Formula):
    """``term : body``"""
    __slots__ = ("term", "body")

    def __init__(self, term: Term, body: Formula):
        self.term = term
        self.body = body
        self._hash = hash((":", term._hash, body._hash))

    def __eq__(self, other):
        if self is other:
            return True
        return (type(other) is Ev and other._hash == self._hash
                and other.term == self.term and other.body == self.body)

    def __repr__(self):
        return f"Ev({self.term!r}, {self.body!r})"

    def __reduce__(self):
        return (Ev, (self.term, self.body))


class Box(Formula):
    """``[]body``; ``occ`` identifies this particular occurrence of the box.

    Equality includes the occurrence id.  Compare modal formulas up to
    occurrence ids by their printed text.
    """
    __slots__ = ("body", "occ")

    def __init__(self, body: Formula, occ: int | None = None):
        self.body = body
        self.occ = fresh_occurrence() if occ is None else occ
        self._hash = hash(("[]", self.occ, body._hash))

    def __eq__(self, other):
        if self is other:
            return True
        return (type(other) is Box and other.occ == self.occ
                and other.body == self.body)

    def __repr__(self):
        return f"Box({self.body!r}, occ={self.occ})"

    def __reduce__(self):
        return (Box, (self.body, self.occ))


# Defining __eq__ clears the inherited __hash__.
for _cls in (_Leaf, Zero, One, _BinTerm):
    _cls.__hash__ = Term.__hash__
for _cls in (Bot, Atom, Imp, Ev, Box):
    _cls.__hash__ = Formula.__hash__

TOP = Imp(BOT, BOT)


def neg(a: Formula) -> Formula:
    return Imp(a, BOT)


def disj(*parts: Formula) -> Formula:
    """Right-nested disjunction; ``A | B`` abbreviates ``(A -> bot) -> B``."""
    if not parts:
        return BOT
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = Imp(Imp(p, BOT), out)
    return out


def conj(*parts: Formula) -> Formula:
    """Right-nested conjunction; ``A & B`` abbreviates ``(A -> B -> bot) -> bot``."""
    if not parts:
        return TOP
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = Imp(Imp(p, Imp(out, BOT)), BOT)
    return out


def iff(a: Formula, b: Formula) -> Formula:
    return conj(Imp(a, b), Imp(b, a))


def conj_parts(f: Formula):
    """Inverse of binary ``conj``: return ``(A, B)`` if ``f`` is ``A & B``, else None."""
    if (type(f) is Imp and f.right == BOT and type(f.left) is Imp
            and type(f.left.right) is Imp and f.left.right.right == BOT):
        return f.left.left, f.left.right.left
    return None


# ---------------------------------------------------------------------------
# Traversals


def term_vars(t: Term) -> set[str]:
    out: set[str] = set()
    stack = [t]
    while stack:
        u = stack.pop()
        tu = type(u)
        if tu is Var:
            out.add(u.name)
        elif tu is Sum or tu is Prod:
            stack.append(u.left)
            stack.append(u.right)
    return out


def _terms(f: Formula) -> Iterator[Term]:
    stack = [f]
    while stack:
        g = stack.pop()
        tg = type(g)
        if tg is Imp:
            stack.append(g.left)
            stack.append(g.right)
        elif tg is Ev:
            yield g.term
            stack.append(g.body)
        elif tg is Box:
            stack.append(g.body)


def formula_vars(f: Formula) -> set[str]:
    out: set[str] = set()
    for t in _terms(f):
        out |= term_vars(t)
    return out


def is_ground(t: Term) -> bool:
    return not term_vars(t)


def term_size(t: Term) -> int:
    if type(t) is Sum or type(t) is Prod:
        return 1 + term_size(t.left) + term_size(t.right)
    return 1


def formula_size(f: Formula) -> int:
    """Number of formula nodes (terms count as part of their ``Ev`` node)."""
    tf = type(f)
    if tf is Imp:
        return 1 + formula_size(f.left) + formula_size(f.right)
    if tf is Ev or tf is Box:
        return 1 + formula_size(f.body)
    return 1


def modal_depth(f: Formula) -> int:
    tf = type(f)
    if tf is Imp:
        return max(modal_depth(f.left), modal_depth(f.right))
    if tf is Ev or tf is Box:
        return 1 + modal_depth(f.body)
    return 0


def boxes(f: Formula) -> Iterator[Box]:
    """Box nodes of ``f`` in preorder."""
    stack = [f]
    while stack:
        g = stack.pop()
        if type(g) is Box:
            yield g
            stack.append(g.body)
        elif type(g) is Imp:
            stack.append(g.right)
            stack.append(g.left)
        elif type(g) is Ev:
            stack.append(g.body)


# ---------------------------------------------------------------------------
# Substitution


def substitute_term(t: Term, mapping: Mapping[str, Term]) -> Term:
    """Replace variables in ``t`` in one simultaneous pass; unchanged subterms are shared."""
    tt = type(t)
    if tt is Var:
        return mapping.get(t.name, t)
    if tt is Sum or tt is Prod:
        left = substitute_term(t.left, mapping)
        right = substitute_term(t.right, mapping)
        if left is t.left and right is t.right:
            return t
        return tt(left, right)
    return t


def _subst_formula(f: Formula, mapping: Mapping[str, Term]) -> Formula:
    tf = type(f)
    if tf is Imp:
        left = _subst_formula(f.left, mapping)
        right = _subst_formula(f.right, mapping)
        if left is f.left and right is f.right:
            return f
        return Imp(left, right)
    if tf is Ev:
        term = substitute_term(f.term, mapping)
        body = _subst_formula(f.body, mapping)
        if term is f.term and body is f.body:
            return f
        return Ev(term, body)
    if tf is Box:
        body = _subst_formula(f.body, mapping)
        return f if body is f.body else Box(body, f.occ)
    return f


def substitute(f: Formula, x: str, t: Term) -> Formula:
    """``f[x/t]``: replace every occurrence of the variable ``x`` by ``t``."""
    return _subst_formula(f, {x: t})


def _fresh_names(avoid: set[str], count: int) -> list[str]:
    out = []
    for i in itertools.count(1):
        if len(out) == count:
            return out
        name = f"_r{i}"
        if name not in avoid:
            out.append(name)


def apply_substitution(f: Formula, sigma: Mapping[str, Term]) -> Formula:
    """Simultaneous substitution ``f sigma``.

    First renames every variable ``x_i`` in the domain to a fresh ``y_i``, then
    replaces ``y_i`` by ``sigma(x_i)`` one at a time.
    """
    xs = sorted(x for x in sigma if x in formula_vars(f))
    if not xs:
        return f
    avoid = formula_vars(f).union(*(term_vars(sigma[x]) for x in xs))
    ys = _fresh_names(avoid, len(xs))
    for x, y in zip(xs, ys):
        f = substitute(f, x, Var(y))
    for x, y in zip(xs, ys):
        f = substitute(f, y, sigma[x])
    return f


# ---------------------------------------------------------------------------
# Projections


def project_modal(f: Formula) -> Formula:
    """Forgetful projection: every ``t:`` becomes a fresh box occurrence."""
    tf = type(f)
    if tf is Imp:
        return Imp(project_modal(f.left), project_modal(f.right))
    if tf is Ev or tf is Box:
        return Box(project_modal(f.body))
    return f


def with_fresh_occurrences(f: Formula) -> Formula:
    """Copy of a modal formula with a new occurrence id on every box."""
    tf = type(f)
    if tf is Imp:
        return Imp(with_fresh_occurrences(f.left), with_fresh_occurrences(f.right))
    if tf is Box:
        return Box(with_fresh_occurrences(f.body))
    return f


def project_propositional(f: Formula) -> Formula:
    """Drop every ``t:`` prefix (and every box)."""
    tf = type(f)
    if tf is Imp:
        left = project_propositional(f.left)
        right = project_propositional(f.right)
        if left is f.left and right is f.right:
            return f
        return Imp(left, right)
    if tf is Ev or tf is Box:
        return project_propositional(f.body)
    return f


# ---------------------------------------------------------------------------
# Polarity


class Polarity(enum.Enum):
    POSITIVE = "+"
    NEGATIVE = "-"

    def flip(self) -> Polarity:
        return Polarity.NEGATIVE if self is Polarity.POSITIVE else Polarity.POSITIVE


def annotate_polarity(f: Formula, polarity: Polarity = Polarity.POSITIVE) -> dict[int, Polarity]:
    """Map each box occurrence id of ``f`` to its polarity.

    The whole formula is positive, the antecedent of an implication flips, and
    a box passes its polarity on to its body.
    """
    table: dict[int, Polarity] = {}
    stack = [(f, polarity)]
    while stack:
        g, pol = stack.pop()
        tg = type(g)
        if tg is Imp:
            stack.append((g.left, pol.flip()))
            stack.append((g.right, pol))
        elif tg is Box:
            table[g.occ] = pol
            stack.append((g.body, pol))
        elif tg is Ev:
            stack.append((g.body, pol))
    return table


def walk_terms(formulas: Iterable[Formula]) -> Iterator[Term]:
    for f in formulas:
        yield from _terms(f)
