"""Time the compiled kernels against the numpy fallback.

Usage: python benchmarks/bench_kernels.py [--sizes 50 200 400] [--repeat 5]

Also times one short end-to-end run per backend.
"""

import argparse
import timeit

import numpy as np

from commea import dominance, niching
from commea._ext import BACKENDS
from commea.coevolution import run
from commea.core import RunConfig
from commea.problems import make_problem


def kernel_cases(n, rng):
    F = rng.random((n, 3))
    X = rng.random((n, 10))
    py = BACKENDS["python"]
    dom = py.dominance_matrix(F)
    dist = py.pairwise_distances(X)
    distF = py.pairwise_distances(F)
    R = float(dist.sum()) / (2 * n * n)
    return {
        "dominance_matrix": lambda k: k.dominance_matrix(F),
        "nd_ranks": lambda k: k.nd_ranks(dom),
        "pairwise_distances": lambda k: k.pairwise_distances(X),
        "local_convergence": lambda k: k.local_convergence(dom, dist, R),
        "inverse_distance_sums": lambda k: k.inverse_distance_sums(dist),
        "crowd_truncate": lambda k: k.crowd_truncate(dist, distF, n // 2),
    }


def best_of(fn, repeat):
    number = 1
    while timeit.timeit(fn, number=number) < 0.05:
        number *= 2
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def full_run(backend):
    dominance.kernels = niching.kernels = BACKENDS[backend]
    cfg = RunConfig("dualdepth-d0.10", N=100, max_fe=5000, seed=0)
    return lambda: run(cfg, make_problem(cfg.problem))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[50, 200, 400])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if "cython" not in BACKENDS:
        raise SystemExit("compiled kernels are not built; run `pip install -e . --no-build-isolation`")
    rng = np.random.default_rng(0)
    print(f"{'kernel':<24}{'n':>6}{'python ms':>12}{'cython ms':>12}{'speedup':>9}")
    for n in args.sizes:
        for name, call in kernel_cases(n, rng).items():
            tp = best_of(lambda: call(BACKENDS["python"]), args.repeat)
            tc = best_of(lambda: call(BACKENDS["cython"]), args.repeat)
            print(f"{name:<24}{n:>6}{tp * 1e3:>12.3f}{tc * 1e3:>12.3f}{tp / tc:>9.1f}")
    times = {b: min(timeit.repeat(full_run(b), number=1, repeat=2)) for b in ("python", "cython")}
    print(f"{'run dualdepth N=100 5000FE':<30}{times['python']:>12.2f}s{times['cython']:>11.2f}s"
          f"{times['python'] / times['cython']:>8.1f}x")


if __name__ == "__main__":
    main()
