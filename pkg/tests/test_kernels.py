import os
import random
import subprocess
import sys

import pytest

from sevidence import _kernels_py, kernels
from sevidence.kripke import compile_modal, rooted_frames
from sevidence.parser import parse_formula
from sevidence.printer import format_formula
from sevidence.syntax import BOT, Atom, Imp
from sevidence.taut import compile_skeleton, is_tautology

try:
    from sevidence import _kernels as compiled
except ImportError:
    compiled = None

needs_compiled = pytest.mark.skipif(compiled is None, reason="compiled kernels not built")


def truth_table(f, atoms, row) -> bool:
    t = type(f)
    if t is Atom:
        return row[atoms.index(f.name)]
    if t is Imp:
        return not truth_table(f.left, atoms, row) or truth_table(f.right, atoms, row)
    return False


def random_prop(rng, size, names="PQRS"):
    if size <= 1:
        return rng.choice([Atom(n) for n in names] + [BOT])
    k = rng.randint(1, size - 2) if size > 2 else 1
    return Imp(random_prop(rng, k, names), random_prop(rng, max(1, size - 1 - k), names))


def names_of(f):
    if type(f) is Atom:
        return {f.name}
    if type(f) is Imp:
        return names_of(f.left) | names_of(f.right)
    return set()


def test_backend_reported():
    assert kernels.BACKEND in ("compiled", "python")


def test_taut_against_truth_table():
    rng = random.Random(2)
    for _ in range(400):
        f = random_prop(rng, rng.randint(1, 11))
        atoms = sorted(names_of(f))
        expected = all(truth_table(f, atoms, [bool(r >> i & 1) for i in range(len(atoms))])
                       for r in range(1 << len(atoms)))
        assert is_tautology(f) == expected


def test_taut_over_evidence_atoms():
    assert is_tautology(parse_formula("x:P -> x:P"))
    assert not is_tautology(parse_formula("x:P -> y:P"))


def test_many_atoms():
    # wider than one machine word of truth-table rows
    names = [f"P{i}" for i in range(9)]
    f = parse_formula(" & ".join(names) + " -> P8")
    assert is_tautology(f)
    assert not is_tautology(parse_formula(" & ".join(names[:-1]) + " -> P8"))


@needs_compiled
def test_backends_agree():
    rng = random.Random(9)
    frames = rooted_frames(3)
    for _ in range(150):
        f = random_prop(rng, rng.randint(1, 9), "PQ")
        prog, atoms = compile_skeleton(f)
        assert compiled.taut_check(prog, len(atoms)) == _kernels_py.taut_check(prog, len(atoms))
        f = parse_formula(f"[]({format_formula(f)}) -> []P", "modal") if rng.random() < 0.5 else \
            parse_formula(f"[][]P -> ({format_formula(f)})", "modal")
        prog, atoms = compile_modal(f)
        n = max(1, len(atoms))
        assert compiled.kripke_first_failure(prog, frames, n, 3) == \
            _kernels_py.kripke_first_failure(prog, frames, n, 3)


def test_fallback_selected_by_environment():
    code = "from sevidence import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, SEVIDENCE_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True,
                         check=True)
    assert out.stdout.strip() == "python"
