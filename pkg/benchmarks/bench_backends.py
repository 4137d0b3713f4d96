#!/usr/bin/env python3
"""Benchmark the compiled t-norm kernels against the pure-Python twin.

Times the operations that dominate classification and sweep workloads,
verifies along the way that both backends return bit-identical results,
and prints a per-operation comparison table.

Usage: python benchmarks/bench_backends.py [--repeats N]
"""

import argparse
import time

from riskrules import _pykernels
from riskrules.benchmark import SplitMix64

try:
    from riskrules import _kernels
except ImportError:
    _kernels = None


def _timed(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def _workloads():
    rng = SplitMix64(8675309)
    pairs = [(rng.random(), rng.random()) for _ in range(200_000)]
    chains3 = [[rng.random() for _ in range(3)] for _ in range(100_000)]
    long_chain = [rng.uniform(0.5, 1.0) for _ in range(2000)]
    grid = [i / 100.0 for i in range(101)]

    def binary_apply(k):
        def run():
            ap = k.tnorm_apply
            for a, b in pairs:
                ap(0, a, b)
                ap(1, a, b)
                ap(2, a, b)
        return run

    def fold3(k):
        def run():
            fold = k.tnorm_fold
            for chain in chains3:
                fold(0, chain)
                fold(1, chain)
                fold(2, chain)
        return run

    def fold_long(k):
        def run():
            fold = k.tnorm_fold
            fold_log = k.tnorm_fold_log
            for _ in range(500):
                fold(1, long_chain)
                fold_log(long_chain)
        return run

    def grid_identity(k):
        def run():
            fold = k.tnorm_fold
            for a in grid:
                for b in grid:
                    for c in grid:
                        fold(0, [a, b, c])
        return run

    return [
        ("binary apply x600k", binary_apply),
        ("3-chain fold x300k", fold3),
        ("2000-chain fold+log x500", fold_long),
        ("lukasiewicz 0.01 grid (1.03M folds)", grid_identity),
    ]


def _check_parity():
    rng = SplitMix64(42)
    for _ in range(20_000):
        kind = rng.randrange(4)
        chain = [rng.random() for _ in range(1 + rng.randrange(10))]
        assert _kernels.tnorm_fold(kind, chain) == _pykernels.tnorm_fold(kind, chain)
        assert _kernels.tnorm_fold_log(chain) == _pykernels.tnorm_fold_log(chain)
        assert (_kernels.tnorm_apply(kind, chain[0], chain[-1])
                == _pykernels.tnorm_apply(kind, chain[0], chain[-1]))
    print("parity: compiled and pure backends bit-identical on 20k random workloads\n")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=3,
                        help="timing repeats per workload (best is reported)")
    args = parser.parse_args()

    if _kernels is None:
        print("compiled backend not built; nothing to compare "
              "(reinstall with a working compiler to build it)")
        return

    _check_parity()
    print(f"{'workload':<40} {'pure (s)':>10} {'compiled (s)':>13} {'speedup':>9}")
    for name, make in _workloads():
        pure_t = _timed(make(_pykernels), args.repeats)
        comp_t = _timed(make(_kernels), args.repeats)
        print(f"{name:<40} {pure_t:>10.3f} {comp_t:>13.3f} {pure_t / comp_t:>8.1f}x")


if __name__ == "__main__":
    main()
