"""Command-line interface.

Exit status: 0 on success (equal, provable, valid, checked), 1 on a semantic
negative (not equal, not provable, check failed, does not hold), 2 on usage
and input errors.  Output is deterministic for identical inputs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .deduction.checker import ProofCheckError, check_proof
from .deduction.internalize import internalize
from .deduction.proof import PROOF_SCHEMA, SEProof
from .deduction.theory import CapabilityError, TheoryDescriptor
from .freesemiring import FREE, EvaluationError, eq_terms, eval_term, normalize
from .gk import prove
from .kripke import countermodel
from .models import ClosureError, ModelDescription, UniverseError, holds_universally
from .parser import LANGUAGES, ParseError, parse_formula, parse_term
from .printer import format_formula, format_term
from .realize import CERTIFICATE_SCHEMA, RealizationCertificate, RealizationError, realize_normal, \
    realize_nonnormal
from .semiring import SemiringError, semiring_from_descriptor
from .syntax import Const, Term, Var, project_modal, project_propositional

CLI_SCHEMA = "sevidence.cli/1"
SEMIRING_ENV = "SEVIDENCE_SEMIRING"
CAPABILITIES = ("axiomatically_appropriate", "schematic", "supports_weakening", "star_constant")

OK, NEGATIVE, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, text: str, doc: dict) -> None:
    if args.format == "json":
        out = {"schema": CLI_SCHEMA, "command": args.command}
        out.update(doc)
        print(json.dumps(out, indent=1))
    else:
        print(text)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _write(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as e:
        raise UsageError(f"cannot write {path}: {e.strerror}") from None


def _load_json(path: str) -> dict:
    try:
        return json.loads(_read(path))
    except json.JSONDecodeError as e:
        raise UsageError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from None


def _theory(spec: str | None) -> TheoryDescriptor:
    if spec is None:
        return TheoryDescriptor()
    names = {s.strip() for s in spec.split(",") if s.strip()}
    unknown = names - set(CAPABILITIES)
    if unknown:
        raise UsageError(f"unknown theory capabilities: {', '.join(sorted(unknown))}")
    return TheoryDescriptor(**{c: c in names for c in CAPABILITIES})


def _semiring(args):
    text = args.semiring or os.environ.get(SEMIRING_ENV) or "free"
    return semiring_from_descriptor(text)


def _bindings(items: Sequence[str], k) -> dict:
    out = {}
    for item in items or ():
        name, sep, value = item.partition("=")
        if not sep or not name.strip():
            raise UsageError(f"expected NAME=VALUE, got {item!r}")
        out[name.strip()] = k.parse_value(value.strip())
    return out


# ---------------------------------------------------------------------------
# subcommands


def cmd_parse(args) -> int:
    f = parse_formula(args.formula, args.language)
    text = format_formula(f, full=args.full, sugar=args.sugar)
    _emit(args, text, {"language": args.language, "formula": text})
    return OK


def cmd_normalize(args) -> int:
    p = normalize(parse_term(args.term))
    _emit(args, str(p), {"term": format_term(parse_term(args.term)), "polynomial": str(p)})
    return OK


def cmd_eq(args) -> int:
    s, t = parse_term(args.left), parse_term(args.right)
    equal = eq_terms(s, t)
    _emit(args, "equal" if equal else "not equal",
          {"equal": equal, "left": str(normalize(s)), "right": str(normalize(t))})
    return OK if equal else NEGATIVE


def cmd_eval(args) -> int:
    k = _semiring(args)
    t = parse_term(args.term)
    interp = _bindings(args.interp, k)
    val = _bindings(args.val, k)
    if k is FREE:
        # unbound names stand for themselves
        for leaf in _leaves(t):
            table = interp if type(leaf) is Const else val
            table.setdefault(leaf.name, normalize(leaf))
    value = eval_term(t, interp, val, k)
    text = k.format_value(value)
    _emit(args, text, {"semiring": k.descriptor, "value": text})
    return OK


def _leaves(t: Term):
    stack = [t]
    while stack:
        u = stack.pop()
        if type(u) in (Const, Var):
            yield u
        elif hasattr(u, "left"):
            stack += [u.left, u.right]


def cmd_prove(args) -> int:
    goal = parse_formula(args.formula, "modal")
    d = prove(goal)
    if d is None:
        doc = {"provable": False}
        lines = ["not provable"]
        if args.countermodel:
            m = countermodel(goal, args.worlds)
            if m is not None:
                lines.append(f"countermodel: {m.describe()}")
                doc["countermodel"] = m.describe()
        _emit(args, "\n".join(lines), doc)
        return NEGATIVE
    _emit(args, "provable\n" + d.format(), {"provable": True, "derivation": d.to_dict()})
    return OK


def cmd_realize(args) -> int:
    goal = parse_formula(args.formula, "modal")
    d = prove(goal)
    if d is None:
        _emit(args, "not provable", {"provable": False})
        return NEGATIVE
    theory = _theory(args.theory)
    if args.normal:
        cert = realize_normal(d, theory)
    else:
        cert = realize_nonnormal(d, theory, shared_variable=not args.per_family)
    cert.check()
    if args.output:
        _write(args.output, cert.to_json() + "\n")
    if args.format == "json":
        print(cert.to_json())
        return OK
    lines = [format_formula(cert.formula)]
    if args.output:
        lines.append(f"certificate: {args.output}")
    print("\n".join(lines))
    return OK


def _load_document(path: str):
    doc = _load_json(path)
    schema = doc.get("schema")
    try:
        if schema == PROOF_SCHEMA:
            return SEProof.from_dict(doc)
        if schema == CERTIFICATE_SCHEMA:
            return RealizationCertificate.from_dict(doc)
    except (KeyError, TypeError) as e:
        raise UsageError(f"{path}: malformed document ({e})") from None
    raise UsageError(f"{path}: unknown document schema {schema!r}")


def cmd_check(args) -> int:
    obj = _load_document(args.file)
    try:
        if isinstance(obj, RealizationCertificate):
            theorem = obj.check()
        else:
            theorem = check_proof(_theory(args.theory), obj)
    except ProofCheckError as e:
        _emit(args, f"check failed at step {e.step}: {e.reason}",
              {"ok": False, "step": e.step, "reason": e.reason})
        return NEGATIVE
    except RealizationError as e:
        _emit(args, f"check failed: {e}", {"ok": False, "reason": str(e)})
        return NEGATIVE
    text = format_formula(theorem)
    _emit(args, f"ok: {text}", {"ok": True, "theorem": text})
    return OK


def cmd_project(args) -> int:
    if args.certificate:
        obj = _load_document(args.certificate)
        if not isinstance(obj, RealizationCertificate):
            raise UsageError("--certificate needs a realization certificate")
        f = obj.formula
    elif args.formula is not None:
        f = parse_formula(args.formula)
    else:
        raise UsageError("give a formula or --certificate")
    out = project_propositional(f) if args.to == "propositional" else project_modal(f)
    text = format_formula(out)
    _emit(args, text, {"target": args.to, "formula": text})
    return OK


def cmd_internalize(args) -> int:
    obj = _load_document(args.file)
    if not isinstance(obj, SEProof):
        raise UsageError("internalize needs a proof document")
    try:
        res = internalize(_theory(args.theory), obj)
    except ProofCheckError as e:
        _emit(args, f"check failed at step {e.step}: {e.reason}",
              {"ok": False, "step": e.step, "reason": e.reason})
        return NEGATIVE
    if args.output:
        _write(args.output, res.proof.to_json() + "\n")
    text = f"{format_term(res.term)}\n{format_formula(res.statement)}"
    _emit(args, text, {"term": format_term(res.term), "statement": format_formula(res.statement),
                       "proof": res.proof.to_dict()})
    return OK


def cmd_model_check(args) -> int:
    desc = ModelDescription.from_dict(_load_json(args.model))
    if args.proof:
        obj = _load_document(args.proof)
        f = obj.formula if isinstance(obj, RealizationCertificate) else obj.theorem
    elif args.formula is not None:
        f = parse_formula(args.formula, allow_reserved=True)
    else:
        raise UsageError("give --formula or --proof")
    m = desc.build()
    verdict = holds_universally(m, f, samples=args.samples, seed=args.seed)
    _emit(args, verdict.describe(m.semiring),
          {"holds": verdict.holds, "exhaustive": verdict.exhaustive, "checked": verdict.checked,
           "witness": None if verdict.witness is None else
           {x: m.semiring.format_value(v) for x, v in sorted(verdict.witness.items())}})
    return OK if verdict.holds else NEGATIVE


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")

    p = argparse.ArgumentParser(prog="sevidence", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    s = sub.add_parser("parse", parents=[common], help="parse and reprint a formula")
    s.add_argument("formula")
    s.add_argument("--language", choices=LANGUAGES, default="justification")
    s.add_argument("--full", action="store_true", help="fully parenthesized output")
    s.add_argument("--sugar", action="store_true", help="print derived connectives")
    s.set_defaults(func=cmd_parse)

    s = sub.add_parser("normalize", parents=[common], help="free-semiring normal form of a term")
    s.add_argument("term")
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("eq", parents=[common], help="decide equality in the free semiring")
    s.add_argument("left")
    s.add_argument("right")
    s.set_defaults(func=cmd_eq)

    s = sub.add_parser("eval", parents=[common], help="evaluate a term in a semiring")
    s.add_argument("term")
    s.add_argument("--semiring", help=f"descriptor (default: ${SEMIRING_ENV} or free)")
    s.add_argument("--interp", action="append", metavar="CONST=VALUE")
    s.add_argument("--val", action="append", metavar="VAR=VALUE")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("prove", parents=[common], help="prove a modal formula in GK")
    s.add_argument("formula")
    s.add_argument("--countermodel", action="store_true", help="report a Kripke countermodel")
    s.add_argument("--worlds", type=int, default=4)
    s.set_defaults(func=cmd_prove)

    s = sub.add_parser("realize", parents=[common], help="realize a modal theorem in SE")
    s.add_argument("formula")
    s.add_argument("--normal", action="store_true", help="normal realization (star terms)")
    s.add_argument("--per-family", action="store_true",
                   help="non-normal mode: separate variables where possible")
    s.add_argument("--theory", metavar="CAPS", help=f"comma list from {', '.join(CAPABILITIES)}")
    s.add_argument("-o", "--output", help="write the certificate here")
    s.set_defaults(func=cmd_realize)

    s = sub.add_parser("check", parents=[common], help="check a proof or certificate")
    s.add_argument("file", help="JSON document, or - for stdin")
    s.add_argument("--theory", metavar="CAPS")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("project", parents=[common], help="forgetful projection")
    s.add_argument("formula", nargs="?")
    s.add_argument("--certificate", metavar="FILE")
    s.add_argument("--to", choices=("modal", "propositional"), default="modal")
    s.set_defaults(func=cmd_project)

    s = sub.add_parser("internalize", parents=[common], help="internalize a proof")
    s.add_argument("file")
    s.add_argument("--theory", metavar="CAPS")
    s.add_argument("-o", "--output", help="write the resulting proof here")
    s.set_defaults(func=cmd_internalize)

    s = sub.add_parser("model-check", parents=[common], help="truth in a semiring model")
    s.add_argument("model", help="model description (JSON)")
    s.add_argument("--formula")
    s.add_argument("--proof", metavar="FILE", help="check the theorem of a proof or certificate")
    s.add_argument("--samples", type=int, default=200)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_model_check)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, UsageError, SemiringError, CapabilityError, EvaluationError,
            ClosureError, UniverseError, ValueError) as e:
        print(f"sevidence {args.command}: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
