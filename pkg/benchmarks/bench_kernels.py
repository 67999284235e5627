"""Compare the compiled and pure-Python mod-p row reduction kernels.

Usage: python3 benchmarks/bench_kernels.py [--sizes 16 32 64 128] [--prime 2]
"""

import argparse
import random
import time

import numpy as np

from flowcat import _kernels_py

try:
    from flowcat import _kernels
except ImportError:
    _kernels = None


def _time(fn, a, p, repeat):
    best = float("inf")
    for _ in range(repeat):
        b = a.copy()
        t0 = time.perf_counter()
        piv = fn(b, p)
        best = min(best, time.perf_counter() - t0)
    return best, b, list(piv)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[16, 32, 64, 128, 256])
    ap.add_argument("--prime", type=int, default=2)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    if _kernels is None:
        print("compiled kernel not built; only the Python kernel is timed")
    print(f"{'n':>5} {'python (ms)':>12} {'cython (ms)':>12} {'speedup':>8}")
    for n in args.sizes:
        a = np.array([[rng.randrange(args.prime) for _ in range(n + 3)] for _ in range(n)], dtype=np.int64)
        tp, bp, pp = _time(_kernels_py.rref_modp, a, args.prime, args.repeat)
        if _kernels is None:
            print(f"{n:>5} {tp * 1e3:>12.2f} {'-':>12} {'-':>8}")
            continue
        tc, bc, pc = _time(_kernels.rref_modp, a, args.prime, args.repeat)
        assert pp == pc and np.array_equal(bp, bc), "kernels disagree"
        print(f"{n:>5} {tp * 1e3:>12.2f} {tc * 1e3:>12.2f} {tp / tc:>7.1f}x")


if __name__ == "__main__":
    main()
