#!/usr/bin/env python3
"""Benchmark the F_p rank kernel: numba JIT vs the pure-numpy fallback.

Run as `python benchmarks/bench_modp_rank.py`.  Set MILNORTOR_NO_NUMBA=1
to confirm the fallback is selected at import time.
"""

import argparse
import time

import numpy as np

from milnortor import _modp


def bench(fn, a, p, repeats):
    # warm up (JIT compilation on the numba path)
    fn(a.copy(), p)
    best = float("inf")
    for _ in range(repeats):
        work = a.copy()
        t = time.perf_counter()
        fn(work, p)
        best = min(best, time.perf_counter() - t)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="50,200,600",
                    help="comma-separated square matrix sizes")
    ap.add_argument("--prime", type=int, default=1000003)
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    p = args.prime
    print(f"prime {p}, numba available: {_modp.USING_NUMBA}")
    print(f"{'size':>6} {'numpy (s)':>12} {'numba (s)':>12} {'speedup':>9}")
    for n in (int(s) for s in args.sizes.split(",")):
        a = rng.integers(0, p, size=(n, n), dtype=np.int64)
        t_np = bench(_modp._rank_mod_p_numpy, a, p, args.repeats)
        if _modp.USING_NUMBA:
            t_nb = bench(lambda w, q: _modp._numba_kernel(w % q, q), a, p,
                         args.repeats)
            print(f"{n:>6} {t_np:>12.4f} {t_nb:>12.4f} {t_np / t_nb:>8.1f}x")
        else:
            print(f"{n:>6} {t_np:>12.4f} {'-':>12} {'-':>9}")


if __name__ == "__main__":
    main()
