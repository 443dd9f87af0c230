"""Canonical text for terms and formulas.

The default output uses only the primitive connectives (``->``, ``bot``) and
the fewest parentheses that still reparse to the same tree.  ``full=True``
parenthesizes every binary node; ``sugar=True`` renders ``~``, ``&`` and ``|``
where the primitive encoding matches.
"""

from __future__ import annotations

from .syntax import (BOT, Atom, Bot, Box, Const, Ev, Formula, Imp, One, Sum,
                     Term, Var, Zero, conj_parts)

_SUM, _PROD, _ATOM = 1, 2, 3


def _term(t: Term, full: bool) -> tuple[str, int]:
    tt = type(t)
    if tt is Var or tt is Const:
        return t.name, _ATOM
    if tt is Zero:
        return "0", _ATOM
    if tt is One:
        return "1", _ATOM
    left, lp = _term(t.left, full)
    right, rp = _term(t.right, full)
    if tt is Sum:
        if full:
            return f"({left}+{right})", _ATOM
        if rp <= _SUM:
            right = f"({right})"
        return f"{left}+{right}", _SUM
    if full:
        return f"({left}*{right})", _ATOM
    if lp < _PROD:
        left = f"({left})"
    if rp <= _PROD:
        right = f"({right})"
    return f"{left}*{right}", _PROD


def format_term(t: Term, full: bool = False) -> str:
    return _term(t, full)[0]


_IFF, _IMP, _OR, _AND, _PREFIX = 0, 1, 2, 3, 4


def _formula(f: Formula, full: bool, sugar: bool) -> tuple[str, int]:
    tf = type(f)
    if tf is Bot:
        return "bot", _PREFIX
    if tf is Atom:
        return f.name, _PREFIX
    if tf is Ev or tf is Box:
        body, bp = _formula(f.body, full, sugar)
        if bp < _PREFIX:
            body = f"({body})"
        head = "[]" if tf is Box else format_term(f.term, full) + ":"
        return head + body, _PREFIX
    if sugar:
        parts = conj_parts(f)
        if parts is not None:
            return _binary(parts[0], parts[1], "&", _AND, full, sugar, left_assoc=True)
        if f.right == BOT:
            body, bp = _formula(f.left, full, sugar)
            if bp < _PREFIX:
                body = f"({body})"
            return "~" + body, _PREFIX
        # (A & B) -> C reads better as an implication than as ~(A & B) | C
        if type(f.left) is Imp and f.left.right == BOT and conj_parts(f.left) is None:
            return _binary(f.left.left, f.right, "|", _OR, full, sugar, left_assoc=True)
    return _binary(f.left, f.right, "->", _IMP, full, sugar, left_assoc=False)


def _binary(a, b, op, prec, full, sugar, left_assoc):
    left, lp = _formula(a, full, sugar)
    right, rp = _formula(b, full, sugar)
    if full:
        return f"({left} {op} {right})", _PREFIX
    if lp < prec or (lp == prec and not left_assoc):
        left = f"({left})"
    if rp < prec or (rp == prec and left_assoc):
        right = f"({right})"
    return f"{left} {op} {right}", prec


def format_formula(f: Formula, full: bool = False, sugar: bool = False) -> str:
    return _formula(f, full, sugar)[0]


def format_sequent(ante, succ, sugar: bool = False) -> str:
    left = ", ".join(format_formula(a, sugar=sugar) for a in ante)
    right = ", ".join(format_formula(b, sugar=sugar) for b in succ)
    return f"{left} => {right}".strip()
