"""Compiled vs pure-Python kernels on the prover-oracle workload.

    python3 benchmarks/bench_kernels.py [--formulas N] [--repeat R]

Both backends run the same compiled programs; their answers are compared
before any timing is reported.
"""

from __future__ import annotations

import argparse
import time

from sevidence import _kernels_py, kernels
from sevidence.kripke import compile_modal, modal_formulas, rooted_frames
from sevidence.syntax import project_propositional
from sevidence.taut import compile_skeleton

try:
    from sevidence import _kernels as _compiled
except ImportError:
    _compiled = None


def kripke_workload(backend, programs, frames) -> list[int]:
    return [backend.kripke_first_failure(prog, frames, max(1, len(atoms)), frames.shape[1])
            for prog, atoms in programs]


def taut_workload(backend, programs) -> list[bool]:
    return [backend.taut_check(prog, len(atoms)) for prog, atoms in programs]


def best_of(repeat: int, fn):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--formulas", type=int, default=2000, help="fragment prefix to use")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    if _compiled is None:
        print("compiled kernels not built; only the fallback is available")
        return 1

    formulas = modal_formulas()
    # the large end of the fragment, where evaluation dominates
    sample = formulas[-args.formulas:]
    frames = rooted_frames(4)
    kripke_progs = [compile_modal(f) for f in sample]
    taut_progs = [compile_skeleton(project_propositional(f)) for f in sample]

    rows = []
    for name, run in (("kripke", lambda b: kripke_workload(b, kripke_progs, frames)),
                      ("taut", lambda b: taut_workload(b, taut_progs))):
        t_c, out_c = best_of(args.repeat, lambda: run(_compiled))
        t_p, out_p = best_of(args.repeat, lambda: run(_kernels_py))
        if out_c != out_p:
            print(f"{name}: backends disagree")
            return 1
        rows.append((name, t_c, t_p))

    print(f"default backend: {kernels.BACKEND}; {len(sample)} formulas; {len(frames)} frames")
    print(f"{'kernel':<8} {'compiled s':>11} {'python s':>10} {'speedup':>8}")
    for name, t_c, t_p in rows:
        print(f"{name:<8} {t_c:11.3f} {t_p:10.3f} {t_p / t_c:7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
