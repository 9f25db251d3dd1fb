"""Benchmark the compiled Jacobi eigensolver kernel against the numpy
fallback.

Usage: python3 benchmarks/bench_eig.py [--sizes 2,4,8,16,32] [--reps 20]
"""

import argparse
import time

import numpy as np

from mostowgeo._jacobi_py import jacobi_sweeps as jacobi_python

try:
    from mostowgeo._jacobi import jacobi_sweeps as jacobi_compiled
except ImportError:
    jacobi_compiled = None


def random_hermitian(r, n):
    m = r.standard_normal((n, n)) + 1j * r.standard_normal((n, n))
    return 0.5 * (m + m.conj().T)


def bench(fn, mats, reps):
    best = np.inf
    for _ in range(reps):
        start = time.perf_counter()
        for h in mats:
            a = h.copy()
            q = np.eye(h.shape[0], dtype=np.complex128)
            fn(a, q, 1e-14, 100)
        best = min(best, time.perf_counter() - start)
    return best / len(mats)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="2,4,8,16,32")
    parser.add_argument("--reps", type=int, default=20)
    parser.add_argument("--batch", type=int, default=10)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    r = np.random.default_rng(args.seed)
    sizes = [int(s) for s in args.sizes.split(",")]
    print(f"{'n':>4}  {'python (us)':>12}  {'compiled (us)':>14}  {'speedup':>8}")
    for n in sizes:
        mats = [random_hermitian(r, n) for _ in range(args.batch)]
        t_py = bench(jacobi_python, mats, args.reps)
        if jacobi_compiled is None:
            print(f"{n:>4}  {t_py * 1e6:>12.1f}  {'unavailable':>14}  {'-':>8}")
            continue
        t_c = bench(jacobi_compiled, mats, args.reps)
        print(f"{n:>4}  {t_py * 1e6:>12.1f}  {t_c * 1e6:>14.1f}  {t_py / t_c:>8.1f}x")


if __name__ == "__main__":
    main()
