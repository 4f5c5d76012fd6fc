"""Microbenchmark: numba kernels against the pure-numpy fallback.

Times both implementations of the two hot kernels on identical inputs
and prints one table row per case.  Run from the repository root:

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import time

import numpy as np

from ridgeboot._kernels import (
    HAS_NUMBA,
    _numpy_contrast_draws,
    _numpy_w2sq_sorted,
)

if HAS_NUMBA:
    from ridgeboot._kernels import _numba_contrast_draws, _numba_w2sq_sorted


def best_of(fn, args, repeat):
    fn(*args)  # warm up (and compile, for the numba path)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5, help="timing repetitions")
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    rows = []

    for m, k in ((1_000, 1_000), (10_000, 10_000), (100_000, 100_000), (300_000, 50_000)):
        x = np.sort(rng.standard_normal(m))
        y = np.sort(rng.standard_normal(k))
        t_np = best_of(_numpy_w2sq_sorted, (x, y), args.repeat)
        t_nb = best_of(_numba_w2sq_sorted, (x, y), args.repeat) if HAS_NUMBA else float("nan")
        rows.append((f"w2sq_sorted m={m} k={k}", t_np, t_nb))

    for B, n in ((1_000, 100), (10_000, 100), (2_000, 500)):
        atoms = rng.standard_normal(n)
        weights = rng.standard_normal(n)
        idx = rng.integers(0, n, size=(B, n))
        t_np = best_of(_numpy_contrast_draws, (atoms, weights, idx), args.repeat)
        t_nb = (
            best_of(_numba_contrast_draws, (atoms, weights, idx), args.repeat)
            if HAS_NUMBA
            else float("nan")
        )
        rows.append((f"contrast_draws B={B} n={n}", t_np, t_nb))

    width = max(len(r[0]) for r in rows)
    print(f"{'case':<{width}}  {'numpy':>10}  {'numba':>10}  {'speedup':>8}")
    for name, t_np, t_nb in rows:
        speed = t_np / t_nb if t_nb == t_nb and t_nb > 0 else float("nan")
        print(f"{name:<{width}}  {t_np * 1e3:>8.3f}ms  {t_nb * 1e3:>8.3f}ms  {speed:>7.2f}x")
    if not HAS_NUMBA:
        print("numba not importable; only the numpy fallback was timed")


if __name__ == "__main__":
    main()
