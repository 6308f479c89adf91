"""Benchmark the compiled grid kernels against the pure-Python fallback.

Run: python benchmarks/bench_kernels.py [--m 1000] [--reps 2000]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from causaltrust._kernels import pyfallback
from causaltrust.density import EPS_SMOOTH, beta_pdf_grid

try:
    from causaltrust._kernels import _gridkernels
except ImportError:
    _gridkernels = None


def _time(fn, reps: int) -> float:
    # one warmup, then best of 3 batches
    fn()
    best = float("inf")
    for _ in range(3):
        t0 = time.perf_counter()
        for _ in range(reps):
            fn()
        best = min(best, (time.perf_counter() - t0) / reps)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--m", type=int, default=1000, help="grid cells")
    parser.add_argument("--reps", type=int, default=2000, help="repetitions")
    args = parser.parse_args()

    p = np.ascontiguousarray(beta_pdf_grid(16.0, 4.0, args.m).values)
    q = np.ascontiguousarray(beta_pdf_grid(15.0, 5.0, args.m).values)

    cases = {
        "normalize": lambda mod: mod.normalize(p),
        "smooth": lambda mod: mod.smooth(p, EPS_SMOOTH),
        "entropy": lambda mod: mod.entropy(p),
        "kl": lambda mod: mod.kl(p, q, EPS_SMOOTH),
        "fuse": lambda mod: mod.fuse(p, q, EPS_SMOOTH),
    }

    print(f"grid m={args.m}, reps={args.reps}")
    header = f"{'kernel':<12}{'python (us)':>14}{'cython (us)':>14}{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for name, call in cases.items():
        t_py = _time(lambda: call(pyfallback), args.reps) * 1e6
        if _gridkernels is None:
            print(f"{name:<12}{t_py:>14.2f}{'(not built)':>14}{'-':>10}")
            continue
        t_cy = _time(lambda: call(_gridkernels), args.reps) * 1e6
        print(f"{name:<12}{t_py:>14.2f}{t_cy:>14.2f}{t_py / t_cy:>9.1f}x")


if __name__ == "__main__":
    main()
