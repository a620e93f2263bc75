"""Time the numba kernels against their numpy counterparts.

Usage:  python3 benchmarks/bench_kernels.py [--repeat N]

Both paths are called directly, so the CQM_DISABLE_NUMBA flag does not
matter here.  Outputs are compared before timing; a mismatch aborts.
"""

import argparse
import timeit

import numpy as np

from cqm import kernels


def grid_tests(rows, cols):
    """Row and column tests of a rows x cols grid: many exact transversals."""
    n = rows * cols
    tests = []
    for r in range(rows):
        tests.append(sum(1 << (r * cols + c) for c in range(cols)))
    for c in range(cols):
        tests.append(sum(1 << (r * cols + c) for r in range(rows)))
    return np.array(tests, dtype=np.int64), n


def cases(rng):
    tm, n = grid_tests(6, 6)
    rows = rng.integers(0, 1 << 40, size=40, dtype=np.int64)
    masks = rng.integers(0, 1 << 40, size=20000, dtype=np.int64)
    u = rng.normal(size=(300, 16)) + 1j * rng.normal(size=(300, 16))
    u /= np.linalg.norm(u, axis=1, keepdims=True)
    return {
        "exact_transversals (6x6 grid)": (
            kernels.exact_transversals_numba, kernels.exact_transversals_numpy, (tm, n)),
        "images (40 rows, 20000 masks)": (
            kernels.images_numba, kernels.images_numpy, (rows, masks)),
        "colinearity (300 x 300, dim 16)": (
            kernels.colinearity_numba, kernels.colinearity_numpy, (u, u)),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    print(f"numba available: {kernels.HAVE_NUMBA}")
    print(f"{'kernel':36s} {'numba ms':>10s} {'numpy ms':>10s} {'speedup':>8s}")
    for name, (fast, slow, a) in cases(rng).items():
        got, want = fast(*a), slow(*a)  # also triggers compilation
        if not np.allclose(got, want):
            raise SystemExit(f"{name}: numba and numpy disagree")
        t_fast = min(timeit.repeat(lambda: fast(*a), number=1, repeat=args.repeat))
        t_slow = min(timeit.repeat(lambda: slow(*a), number=1, repeat=args.repeat))
        print(f"{name:36s} {1e3 * t_fast:10.2f} {1e3 * t_slow:10.2f} {t_slow / t_fast:8.1f}x")


if __name__ == "__main__":
    main()
