"""Compiled vs pure-Python elimination kernels.

Usage: python benchmarks/bench_kernels.py [--repeat R]

Times the three kernels on workloads shaped like the library's own: a large
modular RREF, a stream of dependent rows into a modular echelon, and the
fraction-free integer echelon on moment-curve products.
"""

from __future__ import annotations

import argparse
import random
import timeit

from lgpideal.exact_linalg import _backend, _kernels_py

try:
    from lgpideal.exact_linalg import _kernels as _compiled
except ImportError:
    _compiled = None

P = 32003


def modp_rref(k, rows, ncols):
    k.rref_modp(rows, ncols, P)


def modp_stream(k, rows, ncols):
    e = k.ModpEchelon(ncols, P)
    for r in rows:
        e.add(r)


def int_stream(k, rows, ncols):
    e = k.IntEchelon(ncols)
    for r in rows:
        e.add(r)


def workloads(rng):
    ncols = 126
    basis = [[rng.randrange(P) for _ in range(ncols)] for _ in range(60)]
    dense = [[rng.randrange(P) for _ in range(ncols)] for _ in range(150)]
    # rank-60 stream: 600 rows that mostly reduce to zero
    stream = [[sum(rng.randrange(5) * b[j] for b in rng.sample(basis, 4)) % P
               for j in range(ncols)] for _ in range(600)]
    ints = [[rng.randint(-50, 50) for _ in range(35)] for _ in range(20)]
    int_rows = [[sum(rng.randint(-3, 3) * r[j] for r in rng.sample(ints, 3)) for j in range(35)]
                for _ in range(300)]
    return [
        ("rref_modp 150x126", modp_rref, dense, ncols),
        ("ModpEchelon 600 rows rank 60", modp_stream, stream, ncols),
        ("IntEchelon 300 rows rank 20", int_stream, int_rows, 35),
    ]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    rng = random.Random(0)
    print(f"selected backend: {_backend.BACKEND}")
    if _compiled is None:
        print("compiled extension not built; only the pure kernels are timed")
    print(f"{'workload':32} {'pure (s)':>10} {'compiled (s)':>13} {'speedup':>8}")
    for name, fn, rows, ncols in workloads(rng):
        pure = min(timeit.repeat(lambda: fn(_kernels_py, rows, ncols), number=1, repeat=args.repeat))
        if _compiled is None:
            print(f"{name:32} {pure:10.4f} {'-':>13} {'-':>8}")
            continue
        comp = min(timeit.repeat(lambda: fn(_compiled, rows, ncols), number=1, repeat=args.repeat))
        print(f"{name:32} {pure:10.4f} {comp:13.4f} {pure / comp:7.1f}x")


if __name__ == "__main__":
    main()
