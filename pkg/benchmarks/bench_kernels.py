"""Compare the compiled kernels with the numpy/scipy fallback.

    python benchmarks/bench_kernels.py [--repeat 5] [--sizes 1000,10000,100000]
"""
import argparse
import math
import timeit

import numpy as np

from massratio import Domain, _backend, make_grid, solve_logistic
from massratio.bvp import spike_problem


def _best(stmt, repeat, number):
    return min(timeit.repeat(stmt, repeat=repeat, number=number)) / number


def bench_tridiagonal(kernels, n, repeat):
    rng = np.random.default_rng(0)
    lower, upper = -rng.uniform(0, 1, n), -rng.uniform(0, 1, n)
    diag = 2.5 + rng.uniform(0, 1, n)
    rhs = rng.normal(size=n)
    return _best(lambda: kernels.solve_tridiagonal(lower, diag, upper, rhs), repeat, 20)


def bench_bessel(kernels, repeat):
    zs = np.linspace(0.0, 50.0, 2000).tolist()

    def run():
        for z in zs:
            kernels.bessel_j01(z)

    return _best(run, repeat, 3) / len(zs)


def bench_solve(kernels, repeat):
    eps = 1e-3
    grid = make_grid(Domain.interval(), 8192, eps)
    problem = spike_problem(eps, math.sqrt(eps), grid)
    saved = _backend.kernels
    _backend.kernels = kernels
    try:
        return _best(lambda: solve_logistic(problem, grid, lambda1=1.0), repeat, 3)
    finally:
        _backend.kernels = saved


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--sizes", default="1000,10000,100000")
    args = p.parse_args(argv)
    names = ["python"]
    try:
        _backend.get_kernels("compiled")
        names.append("compiled")
    except ImportError:
        print("compiled extension not available; timing the fallback only")
    rows = []
    for n in (int(s) for s in args.sizes.split(",")):
        rows.append((f"tridiagonal n={n}", {k: bench_tridiagonal(_backend.get_kernels(k), n, args.repeat)
                                            for k in names}))
    rows.append(("bessel_j01 per call", {k: bench_bessel(_backend.get_kernels(k), args.repeat)
                                         for k in names}))
    rows.append(("1D Dirichlet solve N=8192", {k: bench_solve(_backend.get_kernels(k), args.repeat)
                                               for k in names}))
    header = f"{'kernel':<28}" + "".join(f"{k:>14}" for k in names)
    if len(names) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for label, times in rows:
        line = f"{label:<28}" + "".join(f"{times[k] * 1e6:>12.1f}us" for k in names)
        if len(names) == 2:
            line += f"{times['python'] / times['compiled']:>9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
