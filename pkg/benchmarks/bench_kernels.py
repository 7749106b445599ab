"""Time the numba kernels against their pure-numpy fallbacks.

Run with ``python benchmarks/bench_kernels.py [--repeat N]``.  Each kernel is
called once before timing so numba compilation is excluded; the two backends
are checked to agree on every input before they are timed.
"""

import argparse
import time

import numpy as np

from cosgame.kernels import HAS_NUMBA, NUMBA_KERNELS, NUMPY_KERNELS


def _cases(rng):
    weights = rng.integers(1, 60, size=16).astype(np.int64)
    costs = rng.integers(0, 1000, size=16).astype(np.int64)
    values = rng.integers(0, 4, size=1 << 12).astype(np.int64)
    values[0] = 0
    return {
        "subset_sums": (rng.integers(0, 100, size=20).astype(np.int64),),
        "min_cost_by_weight": (weights, costs),
        "max_weight_by_cost": (rng.integers(0, 200, size=16).astype(np.int64), weights, 2000),
        "partition_dp": (values,),
    }


def _same(name, a, b) -> bool:
    if name in ("min_cost_by_weight", "max_weight_by_cost"):
        # table entries are only defined where ``reach`` is set
        return np.array_equal(a[1], b[1]) and np.array_equal(a[0][a[1]], b[0][b[1]])
    if isinstance(a, tuple):
        return all(np.array_equal(x, y) for x, y in zip(a, b))
    return np.array_equal(a, b)


def _best_time(fn, args, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if not HAS_NUMBA:
        raise SystemExit("numba is unavailable or disabled (COSGAME_DISABLE_NUMBA); nothing to compare")

    cases = _cases(np.random.default_rng(args.seed))
    print(f"{'kernel':<20} {'numpy [s]':>11} {'numba [s]':>11} {'speedup':>8}")
    for name, inputs in cases.items():
        slow, fast = NUMPY_KERNELS[name], NUMBA_KERNELS[name]
        if not _same(name, slow(*inputs), fast(*inputs)):  # also triggers compilation
            raise SystemExit(f"{name}: backends disagree")
        t_np = _best_time(slow, inputs, args.repeat)
        t_nb = _best_time(fast, inputs, args.repeat)
        print(f"{name:<20} {t_np:>11.5f} {t_nb:>11.5f} {t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
