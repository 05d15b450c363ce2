"""Time the numba kernels against their numpy fallbacks.

    python benchmarks/bench_kernels.py [--sizes 8 12 16 20] [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from pbquad import kernels
from pbquad._accel import HAVE_NUMBA


def random_masks(rng, n, n_terms):
    masks = rng.integers(0, 1 << n, size=n_terms, dtype=np.int64)
    coeffs = rng.integers(-10, 11, size=n_terms).astype(np.int64)
    return masks, coeffs


def submodular_table(n):
    # -sum x_i x_{i+1}: no violation, so the scans run to completion
    vals = np.zeros(1 << n, dtype=np.int64)
    idx = np.arange(1 << n, dtype=np.int64)
    for k in range(n - 1):
        vals -= ((idx >> k) & 1) * ((idx >> (k + 1)) & 1)
    return vals


def bench(fn, *args, repeat):
    fn(*args)  # warm-up (compilation for jit versions)
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[8, 12, 16, 20])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not HAVE_NUMBA:
        print("numba is not installed; only the numpy path can be timed")
    rng = np.random.default_rng(0)

    print(f"{'kernel':<14}{'n':>4}{'numba [ms]':>14}{'numpy [ms]':>14}{'speedup':>10}")
    for n in args.sizes:
        masks, coeffs = random_masks(rng, n, 4 * n)
        vals = submodular_table(n)
        cases = [("values_table", kernels._values_table_jit, kernels._values_table_numpy, (n, masks, coeffs))]
        if n <= 12:
            cases.append(("lattice", kernels._lattice_violation_jit, kernels._lattice_violation_numpy, (vals,)))
        cases.append(("second_diff", kernels._second_diff_violation_jit, kernels._second_diff_violation_numpy, (vals, n)))
        for name, jit_fn, np_fn, fargs in cases:
            t_np = bench(np_fn, *fargs, repeat=args.repeat)
            if HAVE_NUMBA:
                t_jit = bench(jit_fn, *fargs, repeat=args.repeat)
                print(f"{name:<14}{n:>4}{t_jit * 1e3:>14.3f}{t_np * 1e3:>14.3f}{t_np / t_jit:>10.1f}")
            else:
                print(f"{name:<14}{n:>4}{'-':>14}{t_np * 1e3:>14.3f}{'-':>10}")


if __name__ == "__main__":
    main()
