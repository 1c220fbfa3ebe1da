"""Benchmark the compiled split kernel against the pure-numpy fallback.

Times the best-split scan itself and a full boosted-ensemble fit, checks that
both kernel paths agree exactly, and prints a small table. Run:

    python benchmarks/bench_split_kernel.py [--repeats N]
"""

import argparse
import time

import numpy as np

from surfplan.ml import _kernels
from surfplan.ml.ensemble import BoostConfig, fit_boosted
from surfplan.ml.tree import TreeConfig


def time_call(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_split(repeats):
    print(f"{'rows':>9}  {'pure (ms)':>10}  {'compiled (ms)':>13}  {'speedup':>8}")
    rng = np.random.default_rng(0)
    for n in (1_000, 10_000, 100_000, 1_000_000):
        values = np.sort(rng.normal(size=n))
        targets = rng.normal(size=n)
        pure = time_call(lambda: _kernels.pure_best_split(values, targets, 1), repeats)
        if _kernels.compiled_best_split is None:
            print(f"{n:>9}  {pure * 1e3:>10.3f}  {'(not built)':>13}  {'-':>8}")
            continue
        fast = time_call(lambda: _kernels.compiled_best_split(values, targets, 1), repeats)
        agree = (_kernels.pure_best_split(values, targets, 1)
                 == _kernels.compiled_best_split(values, targets, 1))
        print(f"{n:>9}  {pure * 1e3:>10.3f}  {fast * 1e3:>13.3f}  "
              f"{pure / fast:>7.1f}x  {'' if agree else '  MISMATCH!'}")


def bench_boost(repeats):
    rng = np.random.default_rng(1)
    n, f = 4000, 5
    features = rng.normal(size=(n, f))
    targets = features @ rng.normal(size=f) + 0.1 * rng.normal(size=n)
    config = BoostConfig(n_estimators=50, learning_rate=0.1,
                         tree=TreeConfig(max_depth=6, min_child_weight=5, gamma=0.0))

    saved = _kernels._active, _kernels._active_name
    try:
        _kernels._active, _kernels._active_name = _kernels.pure_best_split, "pure"
        pure = time_call(lambda: fit_boosted(features, targets, config), repeats)
        if _kernels.compiled_best_split is None:
            print(f"boosted fit ({n} rows, 50 stages): pure {pure:.2f}s, compiled not built")
            return
        _kernels._active, _kernels._active_name = _kernels.compiled_best_split, "compiled"
        fast = time_call(lambda: fit_boosted(features, targets, config), repeats)
    finally:
        _kernels._active, _kernels._active_name = saved
    print(f"boosted fit ({n} rows, 50 stages): pure {pure:.2f}s, "
          f"compiled {fast:.2f}s, speedup {pure / fast:.1f}x")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()
    print(f"active kernel: {_kernels.active_kernel()}")
    bench_split(args.repeats)
    bench_boost(max(1, args.repeats // 3))


if __name__ == "__main__":
    main()
