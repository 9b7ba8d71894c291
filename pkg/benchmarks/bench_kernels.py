"""Time the numba kernels against their numpy/python fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat N] [--pipeline]

Kernels are toggled in-process through ``_kernels.USE_NUMBA`` after a JIT
warm-up. ``--pipeline`` also times ``capitul scan 60`` in subprocesses with and
without CAPITUL_DISABLE_NUMBA, to show how little of the exact pipeline the
compiled kernels cover.
"""
import argparse
import os
import subprocess
import sys
import time

import numpy as np

from capitul import _kernels as kern


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def cases():
    rng = np.random.default_rng(0)
    primes = np.array([p for p in range(3, 4000) if all(p % q for q in range(2, int(p**0.5) + 1))], dtype=np.int64)
    res = rng.integers(0, 2**31, size=(64, len(primes))) % primes
    return {
        "legendre_matrix 64x%d" % len(primes): lambda: kern.legendre_matrix(res, primes),
        "count_reduced_imag |D|=4000036": lambda: kern.count_reduced_imag(4_000_036),
        "count_form_cycles D=8*149*137": lambda: kern.count_form_cycles(8 * 149 * 137),
        "minimal_pell_search d=151": lambda: kern.minimal_pell_search(151, 2 * 10**8, False),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--pipeline", action="store_true")
    args = ap.parse_args()

    if not kern.USE_NUMBA:
        sys.exit("numba is disabled (CAPITUL_DISABLE_NUMBA set or numba missing); nothing to compare")
    print(f"{'kernel':40s} {'numba':>10s} {'fallback':>10s} {'speedup':>8s}")
    for name, fn in cases().items():
        fn()  # JIT warm-up, and the cache=True compile
        fast = _time(fn, args.repeat)
        kern.USE_NUMBA = False
        try:
            slow = _time(fn, 1)
        finally:
            kern.USE_NUMBA = True
        print(f"{name:40s} {fast:10.4f} {slow:10.4f} {slow / fast:7.1f}x")

    if args.pipeline:
        for flag in ("", "1"):
            env = dict(os.environ, CAPITUL_DISABLE_NUMBA=flag)
            t0 = time.perf_counter()
            subprocess.run([sys.executable, "-m", "capitul", "scan", "60", "--format", "csv"],
                           env=env, check=True, capture_output=True)
            label = "fallback" if flag else "numba"
            print(f"capitul scan 60 ({label}): {time.perf_counter() - t0:.2f}s")


if __name__ == "__main__":
    main()
