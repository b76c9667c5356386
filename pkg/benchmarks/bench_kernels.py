#!/usr/bin/env python3
"""Benchmark the compiled kernels against their pure-Python twins.

Covers the three hot loops: exact series convolution (the verification
suites), the plane-tree label walk and the binary-tree growth (the Monte
Carlo suite). Run from the repository root:

    python benchmarks/bench_kernels.py [--order 24] [--n 100000]
"""

import argparse
import time

import numpy as np

from embtrees import _fallback
from embtrees import families as fm

try:
    from embtrees import _speedups
except ImportError:
    _speedups = None


def timeit(fn, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_series(order):
    comp = fm.computation("pm1", order)
    mu = comp.mu
    offs = [c.off for c in mu.c]
    runs = [c.c for c in mu.c]

    def full_product(impl):
        def run():
            for m in range(order + 1):
                impl.uconv_at(offs, runs, offs, runs, m)
        return run

    return "u-series product (order %d)" % order, full_product


def bench_plane(n):
    rng = np.random.default_rng(0)
    seq = np.concatenate([np.ones(n, np.int8), -np.ones(n + 1, np.int8)])
    rng.shuffle(seq)
    k = int(np.argmin(np.cumsum(seq)))
    steps = np.concatenate([seq[k + 1:], seq[:k + 1]])[:-1]
    incs = rng.choice(np.array([-1, 1], np.int64), size=n)

    def factory(impl):
        return lambda: impl.plane_walk_labels(steps, incs)

    return "plane-tree label walk (n = %d)" % n, factory


def bench_remy(n):
    rng = np.random.default_rng(0)
    highs = 4 * np.arange(1, n + 1, dtype=np.uint64) - 2
    choices = rng.integers(0, highs, dtype=np.uint64)

    def factory(impl):
        return lambda: impl.remy_labels(choices, n)

    return "binary-tree growth + labels (n = %d)" % n, factory


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--order", type=int, default=24)
    ap.add_argument("--n", type=int, default=100_000)
    args = ap.parse_args()

    if _speedups is None:
        print("compiled extension not built; showing pure backend only")

    rows = []
    for name, factory in (bench_series(args.order),
                          bench_plane(args.n),
                          bench_remy(args.n)):
        pure = timeit(factory(_fallback))
        if _speedups is not None:
            fast = timeit(factory(_speedups))
            rows.append((name, fast, pure, pure / fast))
        else:
            rows.append((name, None, pure, None))

    width = max(len(r[0]) for r in rows)
    print(f"{'benchmark':{width}}  {'compiled':>10}  {'pure':>10}  {'speedup':>8}")
    for name, fast, pure, ratio in rows:
        fast_s = f"{fast * 1e3:9.2f}ms" if fast is not None else "       n/a"
        ratio_s = f"{ratio:7.1f}x" if ratio is not None else "     n/a"
        print(f"{name:{width}}  {fast_s}  {pure * 1e3:9.2f}ms  {ratio_s}")


if __name__ == "__main__":
    main()
