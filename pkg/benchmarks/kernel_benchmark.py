#!/usr/bin/env python3
"""Compare the sliding-sums kernel backends (numba jit vs numpy fallback).

The fused kernel computes, per lag, the seven window sums every similarity
profile is assembled from.  This script times both implementations on the
benchmark-sized problem and a few larger shapes, and verifies they agree.

Run:  python3 benchmarks/kernel_benchmark.py [--repeats N] [--profile-sets K]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from mfcorr.kernels import HAS_NUMBA, sliding_sums_numba, sliding_sums_numpy

SHAPES = (
    ("benchmark grid", 640, 121),
    ("long object", 4096, 121),
    ("wide template", 4096, 1025),
)


def time_backend(func, f, g, k0, n_lags, repeats):
    best = float("inf")
    result = None
    for _ in range(repeats):
        start = time.perf_counter()
        result = func(f, g, k0, n_lags)
        best = min(best, time.perf_counter() - start)
    return best, result


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5,
                        help="timing repetitions per shape (best-of)")
    parser.add_argument("--seed", type=int, default=42)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    print(f"numba available: {HAS_NUMBA}")
    if not HAS_NUMBA:
        print("numba missing or disabled; timing the numpy fallback only")

    for name, n, m in SHAPES:
        f = rng.normal(size=n)
        g = rng.normal(size=m)
        k0 = -((m - 1) // 2)
        n_lags = n

        t_np, res_np = time_backend(sliding_sums_numpy, f, g, k0, n_lags,
                                    args.repeats)
        line = f"{name:14s} n={n:5d} m={m:5d}  numpy {t_np * 1e3:8.2f} ms"
        if HAS_NUMBA:
            sliding_sums_numba(f, g, k0, n_lags)  # compile outside the timer
            t_nb, res_nb = time_backend(sliding_sums_numba, f, g, k0, n_lags,
                                        args.repeats)
            scale = max(1.0, float(np.abs(res_np[0]).max()))
            diff = float(np.abs(res_np[0] - res_nb[0]).max()) / scale
            line += (f"  numba {t_nb * 1e3:8.2f} ms  speedup {t_np / t_nb:6.1f}x"
                     f"  max rel diff {diff:.2e}")
        print(line)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
