"""Row reduction over F_p: compiled kernel against the pure-Python fallback.

Usage: python benchmarks/bench_rref.py [--sizes 8 32 64 128] [--primes 2 101] [--repeat 5]
"""

import argparse
import time

import numpy as np

from bifiltered.exactlin.kernels import BACKEND, rref_modp


def best_time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[8, 32, 64, 128])
    parser.add_argument("--primes", type=int, nargs="+", default=[2, 101])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    if BACKEND != "cython":
        print("compiled kernel unavailable; only the pure-Python timings are shown")
    rng = np.random.default_rng(args.seed)
    print(f"{'p':>5} {'n':>5} {'python (ms)':>12} {'cython (ms)':>12} {'speedup':>8}")
    for p in args.primes:
        for n in args.sizes:
            a = rng.integers(0, p, size=(n, n), dtype=np.int64)
            py = best_time(lambda: rref_modp(a.copy(), p, "python"), args.repeat)
            if BACKEND == "cython":
                x, y = a.copy(), a.copy()
                if list(rref_modp(x, p, "python")) != list(rref_modp(y, p, "cython")) or not np.array_equal(x, y):
                    raise SystemExit(f"backends disagree for p={p}, n={n}")
                cy = best_time(lambda: rref_modp(a.copy(), p, "cython"), args.repeat)
                print(f"{p:>5} {n:>5} {py * 1e3:>12.3f} {cy * 1e3:>12.3f} {py / cy:>7.1f}x")
            else:
                print(f"{p:>5} {n:>5} {py * 1e3:>12.3f} {'-':>12} {'-':>8}")


if __name__ == "__main__":
    main()
