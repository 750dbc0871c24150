"""Compare the compiled kernels with the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Times ``bilinear`` (batched octonion products), ``rref_insert`` (incremental
elimination over GF(p)) and a full solver run with each backend.  The solver
runs happen in subprocesses because the backend is chosen at import.
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from splitoct import _core
from splitoct.batch import PrimeAlgebra
from splitoct.fields import FieldSpec

SOLVE_SNIPPET = (
    "import time; from splitoct.solver import AlgebraHandle, solve; from splitoct.fields import parse_field;"
    "t = time.perf_counter(); solve(AlgebraHandle('octonion', parse_field('{field}')));"
    "print(time.perf_counter() - t)"
)


def bench_bilinear(backend, field, count, repeat):
    alg = PrimeAlgebra(field)
    rng = np.random.default_rng(0)
    X, Y = alg.random(rng, count), alg.random(rng, count)
    return min(timeit.repeat(lambda: backend.bilinear(X, Y, alg.triples, alg.p, alg.n), number=1, repeat=repeat))


def bench_rref(backend, p, m, rows, repeat):
    rng = np.random.default_rng(1)
    R = np.ascontiguousarray(rng.integers(0, p, size=(rows, m)), dtype=np.int64)

    def run():
        basis = np.zeros((m, m), dtype=np.int64)
        pivots = np.zeros(m, dtype=np.int64)
        backend.rref_insert(basis, pivots, 0, R.copy(), p)

    return min(timeit.repeat(run, number=1, repeat=repeat))


def bench_solve(field: str, pure: bool) -> float:
    env = dict(os.environ, SPLITOCT_PURE="1" if pure else "0")
    out = subprocess.run([sys.executable, "-c", SOLVE_SNIPPET.format(field=field)], env=env,
                         capture_output=True, text=True, check=True)
    return float(out.stdout)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if _core.compiled_backend is None:
        print("compiled extension not built; only the fallback is available", file=sys.stderr)
        return 1
    backends = {"python": _core.python_backend, "cython": _core.compiled_backend}
    rows = []
    for field, count in ((FieldSpec(3), 200_000), (FieldSpec(2, 2), 100_000)):
        t = {name: bench_bilinear(b, field, count, args.repeat) for name, b in backends.items()}
        rows.append((f"bilinear {field.literal()} x{count}", t["python"], t["cython"]))
    for p, m, n in ((3, 128, 2000), (2, 512, 1500)):
        t = {name: bench_rref(b, p, m, n, args.repeat) for name, b in backends.items()}
        rows.append((f"rref_insert p={p} {n}x{m}", t["python"], t["cython"]))
    for field in ("gf:3", "gf:4", "gf:5"):
        rows.append((f"solve octonion {field}", bench_solve(field, True), bench_solve(field, False)))
    print(f"{'case':32s} {'python [s]':>11s} {'cython [s]':>11s} {'speedup':>8s}")
    for name, py, cy in rows:
        print(f"{name:32s} {py:11.4f} {cy:11.4f} {py / cy:7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
