"""Benchmark the 2-d corner-sweep kernels: compiled extension vs fallback.

Generates two-dimensional point sets from the bundled sequence generator,
scales them to integers once, and times both kernel implementations on the
same arrays.  Results are checked for exact agreement before timings are
reported.

Usage:
    python3 benchmarks/bench_discrepancy.py --sizes 128,256,512,1024 --repeats 5
"""

import argparse
import math
import time

import numpy as np

from rbqmc._kernels import BACKEND
from rbqmc._kernels.fallback import corner_max_2d as fallback_kernel
from rbqmc.numeration import RationalBase
from rbqmc.sequence import GeneratorConfig, point_set

try:
    from rbqmc._kernels._disc2d import corner_max_2d as compiled_kernel
except ImportError:
    compiled_kernel = None


def scaled_arrays(n, t):
    config = GeneratorConfig.identity((RationalBase(2, 1), RationalBase(3, 2)))
    ps = point_set(config, 0, n, t)
    cols = []
    denoms = []
    for i in range(2):
        d = 1
        for p in ps.points:
            d = math.lcm(d, p[i].denominator)
        cols.append(np.array([int(p[i] * d) for p in ps.points], dtype=np.int64))
        denoms.append(d)
    return cols[0], cols[1], denoms[0], denoms[1]


def best_time(fn, args, repeats):
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="128,256,512,1024,2048",
                        help="comma-separated point counts")
    parser.add_argument("--t", type=int, default=12, help="truncation depth")
    parser.add_argument("--repeats", type=int, default=5,
                        help="repetitions per size (best time wins)")
    args = parser.parse_args()

    sizes = [int(x) for x in args.sizes.split(",")]
    print(f"active backend: {BACKEND}")
    if compiled_kernel is None:
        print("compiled extension unavailable; timing the fallback only")
    header = f"{'N':>6}  {'fallback ms':>12}"
    if compiled_kernel is not None:
        header += f"  {'compiled ms':>12}  {'speedup':>8}"
    print(header)
    for n in sizes:
        ax, ay, dx, dy = scaled_arrays(n, args.t)
        want = fallback_kernel(ax, ay, dx, dy)
        t_fb = best_time(fallback_kernel, (ax, ay, dx, dy), args.repeats)
        line = f"{n:>6}  {t_fb * 1e3:>12.3f}"
        if compiled_kernel is not None:
            got = compiled_kernel(ax, ay, dx, dy)
            if got != want:
                raise SystemExit(
                    f"kernel mismatch at N={n}: compiled {got} != fallback {want}"
                )
            t_c = best_time(compiled_kernel, (ax, ay, dx, dy), args.repeats)
            line += f"  {t_c * 1e3:>12.3f}  {t_fb / t_c:>8.1f}x"
        print(line)


if __name__ == "__main__":
    main()
