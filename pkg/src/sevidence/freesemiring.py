"""Canonical forms in the free semiring over constants and variables.

A :class:`Polynomial` is a finite multiset of words (noncommutative
monomials).  Two terms are equal modulo the semiring equations exactly when
their polynomials coincide, so :func:`eq_terms` decides term equality.
Addition is multiset union and is not idempotent: ``x + x`` and ``x`` differ.
"""

from __future__ import annotations

import random
from collections import Counter
from typing import Mapping

from .semiring import Semiring, SemiringError
from .syntax import Const, One, Prod, Sum, Term, Var, Zero

__all__ = ["Polynomial", "FreeSemiring", "FREE", "normalize", "eq_terms", "eval_term",
           "eval_polynomial", "EvaluationError"]

Word = tuple  # of Const/Var leaves


def _atom_key(a) -> tuple[str, int]:
    return (a.name, 0 if type(a) is Const else 1)


def _word_key(w: Word):
    return (len(w), [_atom_key(a) for a in w])


class Polynomial:
    """Immutable multiset of words, kept sorted length-lexicographically."""

    __slots__ = ("monomials", "_hash")

    def __init__(self, counts: Mapping[Word, int] | None = None):
        items = [(w, n) for w, n in (counts or {}).items() if n]
        if any(n < 0 for _, n in items):
            raise ValueError("multiplicities must be nonnegative")
        items.sort(key=lambda wn: _word_key(wn[0]))
        self.monomials: tuple[tuple[Word, int], ...] = tuple(items)
        self._hash = hash(self.monomials)

    @classmethod
    def atom(cls, leaf) -> Polynomial:
        return cls({(leaf,): 1})

    def counts(self) -> Counter:
        return Counter(dict(self.monomials))

    def __add__(self, other: Polynomial) -> Polynomial:
        c = self.counts()
        c.update(dict(other.monomials))
        return Polynomial(c)

    def __mul__(self, other: Polynomial) -> Polynomial:
        c: Counter = Counter()
        for w1, n1 in self.monomials:
            for w2, n2 in other.monomials:
                c[w1 + w2] += n1 * n2
        return Polynomial(c)

    def __eq__(self, other):
        return type(other) is Polynomial and other.monomials == self.monomials

    def __hash__(self):
        return self._hash

    def __bool__(self):
        return bool(self.monomials)

    def __len__(self):
        """Number of monomials counted with multiplicity."""
        return sum(n for _, n in self.monomials)

    def __iter__(self):
        """Words with repetition, in canonical order."""
        for w, n in self.monomials:
            for _ in range(n):
                yield w

    def __str__(self):
        if not self.monomials:
            return "0"
        return " + ".join("*".join(a.name for a in w) if w else "1" for w in self)

    def __repr__(self):
        return f"Polynomial({str(self)!r})"

    def to_term(self) -> Term:
        """A term whose normal form is this polynomial (sums and products left-nested)."""
        from .syntax import ONE, ZERO
        out: Term | None = None
        for w in self:
            mono: Term | None = None
            for a in w:
                mono = a if mono is None else Prod(mono, a)
            mono = ONE if mono is None else mono
            out = mono if out is None else Sum(out, mono)
        return ZERO if out is None else out


_ZERO_POLY = Polynomial()
_ONE_POLY = Polynomial({(): 1})


def normalize(t: Term) -> Polynomial:
    cache: dict[Term, Polynomial] = {}

    def go(u: Term) -> Polynomial:
        hit = cache.get(u)
        if hit is not None:
            return hit
        tu = type(u)
        if tu is Const or tu is Var:
            out = Polynomial.atom(u)
        elif tu is Zero:
            out = _ZERO_POLY
        elif tu is One:
            out = _ONE_POLY
        elif tu is Sum:
            out = go(u.left) + go(u.right)
        else:
            out = go(u.left) * go(u.right)
        cache[u] = out
        return out

    return go(t)


def eq_terms(s: Term, t: Term) -> bool:
    return s == t or normalize(s) == normalize(t)


class FreeSemiring(Semiring):
    """Polynomials under multiset union and word concatenation."""

    name = "free"
    zero = _ZERO_POLY
    one = _ONE_POLY

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def contains(self, value):
        return type(value) is Polynomial

    def sample(self, rng: random.Random):
        letters = [Var(n) for n in "xyz"] + [Const("a")]
        c: Counter = Counter()
        for _ in range(rng.randint(0, 3)):
            c[tuple(rng.choice(letters) for _ in range(rng.randint(0, 3)))] += 1
        return Polynomial(c)

    def parse_value(self, text):
        from .parser import ParseError, parse_term
        try:
            return normalize(parse_term(text))
        except ParseError as e:
            raise SemiringError(str(e)) from None


FREE = FreeSemiring()


class EvaluationError(LookupError):
    pass


def eval_term(t: Term, interp: Mapping[str, object], valuation: Mapping[str, object],
              k: Semiring):
    """``t`` evaluated in ``k`` with constants read from ``interp`` and variables from ``valuation``.

    ``0`` and ``1`` always denote ``k.zero`` and ``k.one``.
    """
    cache: dict[Term, object] = {}

    def go(u: Term):
        if u in cache:
            return cache[u]
        tu = type(u)
        if tu is Const:
            if u.name not in interp:
                raise EvaluationError(f"constant {u.name!r} is not interpreted")
            out = k.check(interp[u.name])
        elif tu is Var:
            if u.name not in valuation:
                raise EvaluationError(f"variable {u.name!r} has no value")
            out = k.check(valuation[u.name])
        elif tu is Zero:
            out = k.zero
        elif tu is One:
            out = k.one
        elif tu is Sum:
            out = k.add(go(u.left), go(u.right))
        else:
            out = k.mul(go(u.left), go(u.right))
        cache[u] = out
        return out

    return go(t)


def eval_polynomial(p: Polynomial, interp: Mapping[str, object],
                    valuation: Mapping[str, object], k: Semiring):
    def leaf(a):
        table = interp if type(a) is Const else valuation
        if a.name not in table:
            raise EvaluationError(f"{a.name!r} has no value")
        return k.check(table[a.name])

    return k.sum(k.product(leaf(a) for a in w) for w in p)
