"""A concrete, decidable theory for SE.

Members of the default theory:

* ``c:A`` for every instance ``A`` of the axiom scheme that ``c`` stands for
  (``c_cl`` for every tautology, ``c_j`` for every instance of ``j``, ...);
* towers ``c_2:c:A``, ``c_3:c_2:c:A``, ... over every member ``c:A``;
* ``c_w:(A -> A|B)`` and ``c_w:(B -> A|B)`` for all ``A``, ``B``;
* ``x:A -> c_s*x*y:(A|B)`` and ``y:B -> c_s*x*y:(A|B)`` for variables ``x``, ``y``,
  each justified by ``c_sj``;
* any explicitly listed extra members, the ``i``-th justified by ``c_t<i>``.

Each family of members can be switched off by a capability flag.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..syntax import BOT, Const, Ev, Formula, Imp, Prod, Var
from ..taut import is_tautology
from .schemes import (ALL_SCHEMES, SEMIRING_SCHEMES, match_axiom_j, match_axiom_jplus,
                      match_semiring_step)

DEFAULT_SCHEME_CONSTANTS = (
    ("cl", "c_cl"), ("j", "c_j"), ("j+", "c_jp"), ("a+", "c_ap"), ("c+", "c_cp"),
    ("0+", "c_0p"), ("am", "c_am"), ("a0", "c_a0"), ("a1", "c_a1"), ("dl", "c_dl"),
    ("dr", "c_dr"),
)

_LEVEL_RE = re.compile(r"^(.+)_([0-9]+)$")


class CapabilityError(ValueError):
    """The theory lacks a property a construction needs."""


def is_axiom_instance(f: Formula, scheme: str) -> bool:
    if scheme == "cl":
        return is_tautology(f)
    if scheme == "j":
        return match_axiom_j(f)
    if scheme == "j+":
        return match_axiom_jplus(f)
    if scheme in SEMIRING_SCHEMES:
        return (type(f) is Imp
                and match_semiring_step(f.left, f.right, scheme, variables_only=True) is not None)
    raise ValueError(f"unknown axiom scheme {scheme!r}")


@dataclass(frozen=True)
class TheoryDescriptor:
    axiomatically_appropriate: bool = True
    schematic: bool = True
    supports_weakening: bool = True
    star_constant: bool = True
    scheme_constants: tuple[tuple[str, str], ...] = DEFAULT_SCHEME_CONSTANTS
    weakening_constant: str = "c_w"
    star_name: str = "c_s"
    star_justifier: str = "c_sj"
    extra_prefix: str = "c_t"
    extra_members: tuple[Formula, ...] = field(default=())

    def __post_init__(self):
        names = dict(self.scheme_constants)
        if set(names) != set(ALL_SCHEMES):
            raise ValueError("every axiom scheme needs exactly one constant")
        bases = list(names.values()) + [self.weakening_constant, self.star_justifier,
                                         self.star_name]
        bases += [self.extra_name(i) for i in range(len(self.extra_members))]
        if len(set(bases)) != len(bases) or any(_LEVEL_RE.match(b) for b in bases):
            raise ValueError("base constant names must be distinct and carry no _<n> suffix")

    # naming
    def scheme_constant(self, scheme: str) -> Const:
        return Const(dict(self.scheme_constants)[scheme])

    def extra_name(self, i: int) -> str:
        return f"{self.extra_prefix}{i + 1}"

    @staticmethod
    def level_name(base: str, level: int) -> str:
        return base if level == 1 else f"{base}_{level}"

    def _split_level(self, name: str) -> tuple[str, int]:
        m = _LEVEL_RE.match(name)
        if m and int(m.group(2)) >= 2 and self._is_base(m.group(1)):
            return m.group(1), int(m.group(2))
        return name, 1

    def _is_base(self, name: str) -> bool:
        return (name in dict(self.scheme_constants).values()
                or name in (self.weakening_constant, self.star_justifier)
                or any(name == self.extra_name(i) for i in range(len(self.extra_members))))

    def require(self, *flags: str):
        missing = [f for f in flags if not getattr(self, f)]
        if missing:
            raise CapabilityError(f"theory lacks: {', '.join(missing)}")

    # membership
    def membership(self, f: Formula) -> str | None:
        """A short reason why ``f`` is a member, or None if it is not."""
        if f in self.extra_members:
            return "listed member"
        if self.star_constant and self._is_star_member(f):
            return f"{self.star_name} introduction"
        if type(f) is not Ev or type(f.term) is not Const:
            return None
        base, level = self._split_level(f.term.name)
        if level >= 2:
            below = f.body
            if (type(below) is Ev and below.term == Const(self.level_name(base, level - 1))
                    and self.membership(below) is not None):
                return f"level {level} over {base}"
            return None
        return self._base_membership(base, f.body)

    def _base_membership(self, base: str, body: Formula) -> str | None:
        if base == self.weakening_constant:
            return "weakening" if self.supports_weakening and self._is_weakening(body) else None
        if base == self.star_justifier:
            if self.star_constant and self.axiomatically_appropriate and self._is_star_member(body):
                return f"justifies {self.star_name} introduction"
            return None
        for i, member in enumerate(self.extra_members):
            if base == self.extra_name(i):
                return "justifies listed member" if (
                    self.axiomatically_appropriate and body == member) else None
        if not self.axiomatically_appropriate:
            return None
        for scheme, name in self.scheme_constants:
            if name == base:
                return f"axiom {scheme}" if is_axiom_instance(body, scheme) else None
        return None

    def is_member(self, f: Formula) -> bool:
        return self.membership(f) is not None

    @staticmethod
    def _is_weakening(body: Formula) -> bool:
        # X -> ((A -> bot) -> B) with X in {A, B}
        if type(body) is not Imp or type(body.right) is not Imp:
            return False
        disj_left = body.right.left
        if type(disj_left) is not Imp or disj_left.right != BOT:
            return False
        return body.left == disj_left.left or body.left == body.right.right

    def _is_star_member(self, f: Formula) -> bool:
        # x:A -> (c*x)*y:(A|B)  or  y:B -> (c*x)*y:(A|B)
        if type(f) is not Imp or type(f.left) is not Ev or type(f.right) is not Ev:
            return False
        hyp, concl = f.left, f.right
        t = concl.term
        if not (type(t) is Prod and type(t.left) is Prod and t.left.left == Const(self.star_name)
                and type(t.left.right) is Var and type(t.right) is Var):
            return False
        x, y = t.left.right, t.right
        body = concl.body
        if type(body) is not Imp or type(body.left) is not Imp or body.left.right != BOT:
            return False
        a, b = body.left.left, body.right
        return (hyp.term == x and hyp.body == a) or (hyp.term == y and hyp.body == b)

    # justification constants
    def axiom_constant(self, scheme: str) -> Const:
        self.require("axiomatically_appropriate")
        return self.scheme_constant(scheme)

    def justifier(self, member: Formula) -> Const:
        """The constant ``c`` with ``c:member`` in the theory."""
        self.require("axiomatically_appropriate")
        if member in self.extra_members:
            return Const(self.extra_name(self.extra_members.index(member)))
        if self.star_constant and self._is_star_member(member):
            return Const(self.star_justifier)
        if type(member) is Ev and type(member.term) is Const and self.is_member(member):
            base, level = self._split_level(member.term.name)
            return Const(self.level_name(base, level + 1))
        raise ValueError("not a member of the theory")

    # documents
    def to_dict(self) -> dict:
        from ..printer import format_formula
        return {
            "axiomatically_appropriate": self.axiomatically_appropriate,
            "schematic": self.schematic,
            "supports_weakening": self.supports_weakening,
            "star_constant": self.star_constant,
            "extra_members": [format_formula(f) for f in self.extra_members],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> TheoryDescriptor:
        from ..parser import parse_formula
        flags = {k: bool(doc[k]) for k in ("axiomatically_appropriate", "schematic",
                                           "supports_weakening", "star_constant") if k in doc}
        extras = tuple(parse_formula(s, allow_reserved=True) for s in doc.get("extra_members", ()))
        return cls(extra_members=extras, **flags)


DEFAULT_THEORY = TheoryDescriptor()
