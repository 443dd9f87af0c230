"""Semiring instances used to evaluate evidence terms.

Values are plain Python objects: ``bool`` for the Boolean semiring,
``Fraction`` for Viterbi and Lukasiewicz, ``Fraction`` or ``math.inf`` for the
tropical semiring, and ``int`` bitsets over a fixed universe for powersets.
Arithmetic is exact so that every semiring law holds with equality.
"""

from __future__ import annotations

import math
import random
import re
from fractions import Fraction
from typing import Any, Iterator, Sequence

__all__ = [
    "Semiring", "SemiringError", "BooleanSemiring", "ViterbiSemiring",
    "TropicalSemiring", "LukasiewiczSemiring", "PowersetSemiring", "BOOLEAN",
    "VITERBI", "TROPICAL", "LUKASIEWICZ", "sr_add", "sr_mul", "semiring_from_descriptor",
]

INF = math.inf


class SemiringError(ValueError):
    pass


class Semiring:
    """Abstract ``(S, +, *, 0, 1)``; ``*`` need not be commutative."""

    name = "semiring"
    finite = False
    zero: Any
    one: Any

    def add(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def contains(self, value) -> bool:
        raise NotImplementedError

    def elements(self) -> Iterator:
        raise SemiringError(f"{self.descriptor} is not finite")

    def sample(self, rng: random.Random):
        raise NotImplementedError

    def parse_value(self, text: str):
        raise NotImplementedError

    def format_value(self, value) -> str:
        return str(value)

    @property
    def descriptor(self) -> str:
        return self.name

    def check(self, value):
        if not self.contains(value):
            raise SemiringError(f"{value!r} is not an element of {self.descriptor}")
        return value

    def sum(self, values):
        out = self.zero
        for v in values:
            out = self.add(out, v)
        return out

    def product(self, values):
        out = self.one
        for v in values:
            out = self.mul(out, v)
        return out

    def __eq__(self, other):
        return type(other) is type(self) and other.descriptor == self.descriptor

    def __hash__(self):
        return hash(self.descriptor)

    def __repr__(self):
        return f"<semiring {self.descriptor}>"


def sr_add(k: Semiring, a, b):
    return k.add(k.check(a), k.check(b))


def sr_mul(k: Semiring, a, b):
    return k.mul(k.check(a), k.check(b))


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise SemiringError(f"not a rational number: {text!r}") from None


def _sample_unit(rng: random.Random) -> Fraction:
    if rng.random() < 0.2:
        return Fraction(rng.choice((0, 1)))
    den = rng.randint(1, 12)
    return Fraction(rng.randint(0, den), den)


class BooleanSemiring(Semiring):
    name = "bool"
    finite = True
    zero = False
    one = True

    def add(self, a, b):
        return a or b

    def mul(self, a, b):
        return a and b

    def contains(self, value):
        return type(value) is bool

    def elements(self):
        return iter((False, True))

    def sample(self, rng):
        return rng.random() < 0.5

    def parse_value(self, text):
        t = text.strip().lower()
        if t in ("1", "true", "t"):
            return True
        if t in ("0", "false", "f"):
            return False
        raise SemiringError(f"not a Boolean value: {text!r}")

    def format_value(self, value):
        return "1" if value else "0"


class _UnitInterval(Semiring):
    zero = Fraction(0)
    one = Fraction(1)

    def contains(self, value):
        return type(value) is Fraction and 0 <= value <= 1

    def add(self, a, b):
        return a if a >= b else b

    def sample(self, rng):
        return _sample_unit(rng)

    def parse_value(self, text):
        return self.check(_fraction(text))


class ViterbiSemiring(_UnitInterval):
    """``([0,1], max, *, 0, 1)``: confidence scores."""
    name = "viterbi"

    def mul(self, a, b):
        return a * b


class LukasiewiczSemiring(_UnitInterval):
    """``([0,1], max, max(0, a+b-1), 0, 1)``: fuzzy evidence."""
    name = "lukasiewicz"

    def mul(self, a, b):
        c = a + b - 1
        return c if c > 0 else self.zero


class TropicalSemiring(Semiring):
    """``(R+ with infinity, min, +, inf, 0)``: cost of obtaining evidence."""
    name = "tropical"
    zero = INF
    one = Fraction(0)

    def add(self, a, b):
        return a if a <= b else b

    def mul(self, a, b):
        if a == INF or b == INF:
            return INF
        return a + b

    def contains(self, value):
        return value == INF if type(value) is float else (type(value) is Fraction and value >= 0)

    def sample(self, rng):
        if rng.random() < 0.1:
            return INF
        return Fraction(rng.randint(0, 40), rng.randint(1, 4))

    def parse_value(self, text):
        t = text.strip().lower()
        if t in ("inf", "oo", "infinity"):
            return INF
        return self.check(_fraction(t))

    def format_value(self, value):
        return "inf" if value == INF else str(value)


class PowersetSemiring(Semiring):
    """``(P(U), union, intersection, {}, U)`` over a fixed finite universe ``U``.

    Elements are bitsets; bit ``i`` stands for ``universe[i]``.
    """
    finite = True
    zero = 0

    def __init__(self, universe: Sequence[str]):
        labels = list(dict.fromkeys(universe))
        if any(not re.fullmatch(r"[A-Za-z0-9_]+", u) for u in labels):
            raise SemiringError(f"bad powerset labels: {labels}")
        self.universe = tuple(labels)
        self.one = (1 << len(self.universe)) - 1

    @property
    def descriptor(self):
        return "powerset{" + ",".join(self.universe) + "}"

    def add(self, a, b):
        return a | b

    def mul(self, a, b):
        return a & b

    def contains(self, value):
        return type(value) is int and 0 <= value <= self.one

    def elements(self):
        return iter(range(self.one + 1))

    def sample(self, rng):
        return rng.randint(0, self.one)

    def subset(self, labels) -> int:
        bits = 0
        for lab in labels:
            try:
                bits |= 1 << self.universe.index(lab)
            except ValueError:
                raise SemiringError(f"{lab!r} is not in the universe {self.universe}") from None
        return bits

    def labels(self, value: int) -> list[str]:
        return [u for i, u in enumerate(self.universe) if value >> i & 1]

    def parse_value(self, text):
        t = text.strip()
        if not (t.startswith("{") and t.endswith("}")):
            raise SemiringError(f"powerset values look like {{p,q}}, got {text!r}")
        return self.subset(x.strip() for x in t[1:-1].split(",") if x.strip())

    def format_value(self, value):
        return "{" + ",".join(self.labels(value)) + "}"


BOOLEAN = BooleanSemiring()
VITERBI = ViterbiSemiring()
TROPICAL = TropicalSemiring()
LUKASIEWICZ = LukasiewiczSemiring()


def semiring_from_descriptor(text: str) -> Semiring:
    """``bool``, ``viterbi``, ``tropical``, ``lukasiewicz``, ``powerset{p,q}`` or ``free``."""
    t = text.strip()
    fixed = {"bool": BOOLEAN, "boolean": BOOLEAN, "viterbi": VITERBI,
             "tropical": TROPICAL, "lukasiewicz": LUKASIEWICZ}
    if t.lower() in fixed:
        return fixed[t.lower()]
    m = re.fullmatch(r"powerset\s*\{([^}]*)\}", t)
    if m:
        return PowersetSemiring([x.strip() for x in m.group(1).split(",") if x.strip()])
    if t.lower() == "free":
        from .freesemiring import FREE
        return FREE
    raise SemiringError(f"unknown semiring descriptor {text!r}")
