"""Time the numba kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 3]

Both paths must return identical results; the script aborts otherwise.
"""

import argparse
import random
import time

import numpy as np

from pmsehrhart import _accel
from pmsehrhart.cli.families import cycle_complement
from pmsehrhart.ehrhart import stable_set_hrep
from pmsehrhart.enumerate import random_graph


def best_of(fn, repeat):
    times, out = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def bench_pm_table(repeat):
    rng = random.Random(0)
    for n in (12, 16, 18, 20):
        g = random_graph(n, 0.35, rng)
        t_jit, a = best_of(lambda: _accel.perfect_matching_table(n, g.masks, "numba"), repeat)
        t_np, b = best_of(lambda: _accel.perfect_matching_table(n, g.masks, "numpy"), repeat)
        assert np.array_equal(a, b)
        yield f"pm_table n={n}", t_jit, t_np


def bench_counts(repeat):
    for n, t in ((7, 7), (9, 9), (11, 6), (11, 11)):
        coef, rhs = stable_set_hrep(cycle_complement(n), allow_minimal_imperfect=True).arrays()
        t_jit, a = best_of(lambda: _accel.count_lattice_points(coef, rhs, t, "numba"), repeat)
        t_np, b = best_of(lambda: _accel.count_lattice_points(coef, rhs, t, "numpy"), repeat)
        assert a == b
        yield f"count complement(C_{n}) t={t}", t_jit, t_np


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not _accel.HAVE_NUMBA:
        raise SystemExit("numba unavailable (or PMSEHRHART_PURE_NUMPY set); nothing to compare")
    # compile outside the timed region
    _accel.perfect_matching_table(4, [2, 1, 8, 4], "numba")
    _accel.count_lattice_points(np.eye(2, dtype=np.int64), [1, 1], 1, "numba")
    print(f"{'kernel':<32}{'numba s':>10}{'numpy s':>10}{'ratio':>8}")
    for name, t_jit, t_np in [*bench_pm_table(args.repeat), *bench_counts(args.repeat)]:
        print(f"{name:<32}{t_jit:>10.4f}{t_np:>10.4f}{t_np / t_jit:>8.1f}")


if __name__ == "__main__":
    main()
