"""Recursive-descent parser for the ASCII formula syntax.

Grammar, loosest binding first::

    formula := impl ( "<->" impl )?
    impl    := disj ( '->' impl )?                 right-associative
    disj    := conj ( '|' conj )*                  left-associative
    conj    := unary ( '&' unary )*                left-associative
    unary   := '~' unary | '[]' unary | term ':' unary
             | 'bot' | 'top' | ATOM | '(' formula ')'
    term    := prod ( '+' prod )*
    prod    := tatom ( '*' tatom )*
    tatom   := NAME | '0' | '1' | '(' term ')'

Atoms start with an uppercase letter.  Lowercase names are term symbols:
constants by default when they start with a-h, variables otherwise.  A
leading header line ``consts: k, m`` or ``vars: a, b`` overrides the
default for the listed names.  Names starting with ``_`` are reserved for
internally generated variables and are only accepted with
``allow_reserved=True``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .syntax import (BOT, ONE, TOP, ZERO, Atom, Box, Const, Ev, Formula, Imp, Prod,
                     Sum, Term, Var, conj, disj, iff, is_constant_name, neg)

LANGUAGES = ("justification", "modal", "propositional")


class ParseError(ValueError):
    """Syntax error with 1-based ``line``/``column`` and the ``expected`` token set."""

    def __init__(self, message: str, line: int, column: int, expected=()):
        self.line = line
        self.column = column
        self.expected = tuple(sorted(expected))
        detail = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{line}:{column}: {message}{detail}")


class _ReservedName(ParseError):
    pass


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<op><->|->|\[\]|[:+*()~&|,])
  | (?P<num>[01](?![A-Za-z0-9_']))
  | (?P<name>[A-Za-z_][A-Za-z0-9_']*)
""", re.VERBOSE)


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, col = 0, 1, 1
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        lexeme = m.group()
        if kind == "nl":
            line, col = line + 1, 1
        elif kind != "ws":
            if kind == "name" and lexeme in ("bot", "top"):
                kind = "op"
            tokens.append(Token(kind, lexeme, line, col))
            col += len(lexeme)
        else:
            col += len(lexeme)
        pos = m.end()
    tokens.append(Token("eof", "", line, col))
    return tokens


_HEADER_RE = re.compile(r"\A\s*(consts|vars)\s*:([^\n]*)\n")


def _read_header(text: str):
    consts: set[str] = set()
    variables: set[str] = set()
    lines_skipped = 0
    while True:
        m = _HEADER_RE.match(text)
        if not m:
            return text, consts, variables, lines_skipped
        names = {n.strip() for n in m.group(2).split(",") if n.strip()}
        (consts if m.group(1) == "consts" else variables).update(names)
        lines_skipped += m.group(0).count("\n")
        text = text[m.end():]


class _Parser:
    def __init__(self, text: str, language: str, consts=(), variables=(),
                 allow_reserved=False, line_offset=0):
        if language not in LANGUAGES:
            raise ValueError(f"unknown language {language!r}")
        self.tokens = tokenize(text)
        if line_offset:
            self.tokens = [Token(t.kind, t.text, t.line + line_offset, t.column)
                           for t in self.tokens]
        self.i = 0
        self.language = language
        self.consts = set(consts)
        self.variables = set(variables)
        self.allow_reserved = allow_reserved
        self.expected: set[str] = set()
        self.furthest = 0

    # token helpers
    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def _note(self, *what: str):
        if self.i > self.furthest:
            self.furthest = self.i
            self.expected = set()
        if self.i == self.furthest:
            self.expected.update(what)

    def accept(self, text: str) -> bool:
        if self.tok.text == text and self.tok.kind in ("op", "num"):
            self.i += 1
            return True
        self._note(repr(text))
        return False

    def expect(self, text: str):
        if not self.accept(text):
            self.fail()

    def fail(self, message: str | None = None):
        tok = self.tokens[max(self.furthest, self.i)]
        if message is None:
            message = ("unexpected end of input" if tok.kind == "eof"
                       else f"unexpected token {tok.text!r}")
        raise ParseError(message, tok.line, tok.column, self.expected)

    # formulas
    def formula(self) -> Formula:
        left = self.impl()
        if self.accept("<->"):
            return iff(left, self.impl())
        return left

    def impl(self) -> Formula:
        left = self.disj()
        if self.accept("->"):
            return Imp(left, self.impl())
        return left

    def disj(self) -> Formula:
        out = self.conj()
        while self.accept("|"):
            out = disj(out, self.conj())
        return out

    def conj(self) -> Formula:
        out = self.unary()
        while self.accept("&"):
            out = conj(out, self.unary())
        return out

    def unary(self) -> Formula:
        tok = self.tok
        if self.accept("~"):
            return neg(self.unary())
        if self.accept("[]"):
            if self.language != "modal":
                raise ParseError("boxes are only allowed in modal formulas",
                                 tok.line, tok.column)
            return Box(self.unary())
        if self.accept("bot"):
            return BOT
        if self.accept("top"):
            return TOP
        if tok.kind == "name" and tok.text[0].isupper():
            self.i += 1
            return Atom(tok.text)
        self._note("ATOM")
        if self.language == "justification":
            start = self.i
            try:
                term = self.term()
            except _ReservedName:
                raise
            except ParseError:
                term = None
            if term is not None and self.accept(":"):
                return Ev(term, self.unary())
            self.i = start
        if self.accept("("):
            inner = self.formula()
            self.expect(")")
            return inner
        self.fail()

    # terms
    def term(self) -> Term:
        out = self.prod()
        while self.accept("+"):
            out = Sum(out, self.prod())
        return out

    def prod(self) -> Term:
        out = self.tatom()
        while self.accept("*"):
            out = Prod(out, self.tatom())
        return out

    def tatom(self) -> Term:
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            return ZERO if tok.text == "0" else ONE
        if tok.kind == "name" and not tok.text[0].isupper():
            name = tok.text
            if name.startswith("_") and not self.allow_reserved:
                raise _ReservedName(f"reserved name {name!r}", tok.line, tok.column)
            self.i += 1
            return Const(name) if self._is_const(name) else Var(name)
        if self.accept("("):
            inner = self.term()
            self.expect(")")
            return inner
        self._note("TERM")
        self.fail()

    def _is_const(self, name: str) -> bool:
        if name in self.consts:
            return True
        if name in self.variables:
            return False
        return is_constant_name(name)


def parse_formula(text: str, language: str = "justification", *, consts=(), variables=(),
                  allow_reserved: bool = False) -> Formula:
    """Parse ``text`` as a formula of the given language.

    Raises :class:`ParseError` with line, column and the expected-token set.
    """
    body, hconsts, hvars, skipped = _read_header(text)
    p = _Parser(body, language, set(consts) | hconsts, set(variables) | hvars,
                allow_reserved, line_offset=skipped)
    f = p.formula()
    if p.tok.kind != "eof":
        p._note("end of input")
        p.fail()
    return f


def parse_term(text: str, *, consts=(), variables=(), allow_reserved: bool = False) -> Term:
    body, hconsts, hvars, skipped = _read_header(text)
    p = _Parser(body, "justification", set(consts) | hconsts, set(variables) | hvars,
                allow_reserved, line_offset=skipped)
    t = p.term()
    if p.tok.kind != "eof":
        p._note("end of input")
        p.fail()
    return t
