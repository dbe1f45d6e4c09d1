"""Benchmark the hot kernels: pure NumPy vs Numba jit.

Times the normalized-eigenfunction recurrence (grid evaluation, the cost
center of density/field images) and the fixed-degree Laguerre table (the
cost center of photon distributions), then prints per-size timings and
speedups.

Usage:
    python benchmarks/bench_kernels.py [--repeats N]
"""

import argparse
import time

import numpy as np

from gcslib import kernels


def time_fn(fn, repeats):
    fn()  # warmup (first numba call compiles)
    start = time.perf_counter()
    for _ in range(repeats):
        fn()
    return (time.perf_counter() - start) / repeats


def bench_case(name, numpy_fn, numba_fn, repeats):
    t_np = time_fn(numpy_fn, repeats)
    t_nb = time_fn(numba_fn, repeats)
    print(
        f"{name:<44} {t_np * 1e3:>10.3f} ms {t_nb * 1e3:>10.3f} ms "
        f"{t_np / t_nb:>7.2f}x"
    )


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=20)
    args = parser.parse_args()

    if not kernels.HAS_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare")

    print(f"{'case':<44} {'numpy':>13} {'numba':>13} {'speedup':>8}")

    for n, points in ((2, 100_000), (40, 100_000), (40, 1_000_000)):
        y = np.linspace(-12.0, 12.0, points)
        bench_case(
            f"eigenfunction n={n}, {points:,} points",
            lambda n=n, y=y: kernels.hermite_functions_numpy(n, 1.0, y),
            lambda n=n, y=y: kernels.hermite_functions_numba(n, 1.0, y),
            args.repeats,
        )

    # field-density image workload: one row per phase value
    y2 = np.linspace(-12.0, 12.0, 256 * 2048).reshape(-1)
    bench_case(
        "field image n=2, 256x2048 samples",
        lambda: kernels.hermite_functions_numpy(2, 1.0, y2),
        lambda: kernels.hermite_functions_numba(2, 1.0, y2),
        args.repeats,
    )

    for s, count in ((2, 2_000), (8, 20_000)):
        d = np.arange(float(count))
        bench_case(
            f"laguerre table s={s}, {count:,} indices",
            lambda s=s, d=d: kernels.laguerre_table_numpy(s, d, 100.0),
            lambda s=s, d=d: kernels.laguerre_table_numba(s, d, 100.0),
            args.repeats,
        )


if __name__ == "__main__":
    main()
