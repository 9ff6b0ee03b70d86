"""Benchmark the RK4 propagation kernel against the pure-Python fallback.

Usage: python3 benchmarks/bench_propagate.py [--steps N] [--trunc A,B,C]

Both backends step the same Liouvillian from the same vacuum state; the
report includes the max elementwise deviation between their results so a
speedup never hides a numerical divergence.
"""

import argparse
import time

import numpy as np

from fwmpb import (
    DensityMatrix,
    FockTruncation,
    SystemParams,
    build_liouvillian,
    build_space,
    kernel_backend,
)
from fwmpb._propagate import rk4_propagate, rk4_propagate_python


def time_backend(fn, matrix, y0, dt, n_steps, repeats=3):
    best = float("inf")
    result = None
    for _ in range(repeats):
        y = y0.copy()
        t0 = time.perf_counter()
        result = fn(matrix, y, dt, n_steps)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--steps", type=int, default=2000)
    parser.add_argument("--trunc", default="5,2,2")
    args = parser.parse_args()

    ceilings = tuple(int(s) for s in args.trunc.split(","))
    space = build_space(FockTruncation(*ceilings))
    params = SystemParams(delta_a=0.0, delta_b=1.0, delta_c=-1.0, g=3.0, f_a=0.01)
    lv = build_liouvillian(params, space)
    matrix = lv.matrix.tocsr()
    y0 = DensityMatrix.vacuum(space).entries.flatten(order="F")
    dt = 0.01

    print(f"dim = {space.dim} (vectorized {matrix.shape[0]}), "
          f"nnz = {matrix.nnz}, steps = {args.steps}, dt = {dt}")
    print(f"active backend: {kernel_backend()}")

    # warm up both paths before timing
    rk4_propagate(matrix, y0.copy(), dt, 10)
    rk4_propagate_python(matrix, y0.copy(), dt, 10)

    t_py, y_py = time_backend(rk4_propagate_python, matrix, y0, dt, args.steps)
    print(f"python   {t_py:8.3f} s  ({args.steps / t_py:10.0f} steps/s)")

    if kernel_backend() == "compiled":
        t_c, y_c = time_backend(rk4_propagate, matrix, y0, dt, args.steps)
        print(f"compiled {t_c:8.3f} s  ({args.steps / t_c:10.0f} steps/s)")
        print(f"speedup  {t_py / t_c:8.2f} x")
        print(f"max deviation between backends: {np.abs(y_c - y_py).max():.3e}")
    else:
        print("compiled kernel not available; only the fallback was timed")


if __name__ == "__main__":
    main()
