#!/usr/bin/env python3
"""Benchmark the compiled kernels against the numpy fallback.

Times the three hot loops (Cayley diameter-2 trials, Latin square graph
diameter-2 trials, and the random Latin square chain) on representative
sizes and prints trials/second for each backend.

Usage: python benchmarks/bench_kernels.py [--quick]
"""

import argparse
import math
import time

import numpy as np

from cayleylab import _kernels
from cayleylab._kernels import fallback
from cayleylab.graphs import latin_from_group, stream
from cayleylab.groups import build_group


def time_fn(fn, reps):
    t0 = time.perf_counter()
    for _ in range(reps):
        fn()
    return time.perf_counter() - t0


def bench_cayley(spec, c, reps):
    g = build_group(spec)
    n = g.order
    p = min(1.0, math.sqrt(c * math.log(n) / n))
    rng = stream(1, 0)
    members = [rng.random(n) < p for _ in range(reps)]
    closures = [_kernels.closure_indices(m, g.inv_all()) for m in members]
    rows = []
    impls = [("python", fallback.cayley_diam2)]
    if _kernels._fastcore is not None:
        impls.append(("cython", _kernels._fastcore.cayley_diam2))
    for name, fn in impls:
        it = iter(closures * 2)
        took = time_fn(lambda: fn(g._table, next(it)), reps)
        rows.append((name, reps / took))
    return f"cayley {spec} (n={n}, c={c})", rows


def bench_latin(spec, c, reps):
    g = build_group(spec)
    sq = latin_from_group(g)
    n = g.order
    p = min(1.0, math.sqrt(c * math.log(n) / n))
    rng = stream(2, 0)
    members = [rng.random(n) < p for _ in range(reps)]
    rows = []
    impls = [("python", fallback.latin_diam2)]
    if _kernels._fastcore is not None:
        impls.append(("cython", lambda e, m: _kernels._fastcore.latin_diam2(
            e, np.ascontiguousarray(m, dtype=np.uint8))))
    for name, fn in impls:
        it = iter(members * 2)
        took = time_fn(lambda: fn(sq.entries, next(it)), reps)
        rows.append((name, reps / took))
    return f"latin  {spec} (n={n}, c={c})", rows


def bench_jm(n, reps):
    rows = []
    impls = [("python", lambda i: fallback.jm_square(n, stream(3, i)))]
    if _kernels._fastcore is not None:
        impls.append(("cython", lambda i: _kernels._fastcore.jm_square(
            n, stream(3, i), fallback.DRAW_BUFFER)))
    for name, fn in impls:
        counter = iter(range(2 * reps))
        took = time_fn(lambda: fn(next(counter)), reps)
        rows.append((name, reps / took))
    return f"jm-square n={n}", rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()
    scale = 5 if args.quick else 1

    print(f"backend selected at import: {_kernels.BACKEND}")
    if _kernels._fastcore is None:
        print("compiled kernels unavailable; timing the fallback only")
    cases = [
        bench_cayley("cyclic:1024", 0.6, 400 // scale),
        bench_cayley("cyclic:4096", 0.6, 200 // scale),
        bench_cayley("z2^:12", 2.0, 200 // scale),
        bench_latin("cyclic:256", 26.0, 100 // scale),
        bench_jm(10, 200 // scale),
        bench_jm(16, 50 // scale),
    ]
    print(f"{'case':38s} {'backend':8s} {'trials/s':>12s} {'speedup':>9s}")
    for label, rows in cases:
        base = rows[0][1]
        for name, rate in rows:
            speedup = f"{rate / base:7.1f}x" if name != "python" else "      1x"
            print(f"{label:38s} {name:8s} {rate:12.1f} {speedup:>9s}")


if __name__ == "__main__":
    main()
