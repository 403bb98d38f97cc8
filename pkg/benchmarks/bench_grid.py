"""Time the grid residual reduction on each available backend.

    python benchmarks/bench_grid.py [--sizes 201 401 801] [--repeat 5]
"""
import argparse
import time

import numpy as np

from cauchymeans import FamilyParams, Interval, build_family, kernels
from cauchymeans.checker import _operands, cell_grid
from cauchymeans.families import Equation


def operands(n):
    t = build_family(FamilyParams(1, 1, 0.5, -0.2, 1), Interval.open(0.5, 3))
    xs, mids = cell_grid(t.domain, n)
    return _operands(t, Equation.MINUS, xs, mids, 1e-8, None)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[201, 401, 801, 1601])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = kernels.available_backends()
    print(f"{'n':>6} " + " ".join(f"{b + ' [ms]':>15}" for b in backends) + f" {'speedup':>9}")
    for n in args.sizes:
        P, u, w, sign, ms, ps = operands(n)
        results = {}
        timing = {}
        for b in backends:
            timing[b] = best_of(lambda: kernels.grid_max_residual(P, u, w, sign, ms, ps, backend=b), args.repeat)
            results[b] = kernels.grid_max_residual(P, u, w, sign, ms, ps, backend=b)
        if len(set(results.values())) != 1:
            raise SystemExit(f"backends disagree at n={n}: {results}")
        speed = timing["python"] / timing["compiled"] if "compiled" in timing else float("nan")
        print(f"{n:>6} " + " ".join(f"{1e3 * timing[b]:>15.3f}" for b in backends) + f" {speed:>8.1f}x")


if __name__ == "__main__":
    np.seterr(all="ignore")
    main()
