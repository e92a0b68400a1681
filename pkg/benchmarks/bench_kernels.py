"""Compiled vs fallback kernels on random quadratic forms.

    python benchmarks/bench_kernels.py [--sizes 12 16 20] [--repeat 3]

Both backends get the same inputs and their outputs are compared before
timings are printed.
"""

from __future__ import annotations

import argparse
import random
import time

import numpy as np

from homcmc import kernels


def instance(n: int, rng: random.Random):
    linear = [rng.randint(1, 1000) for _ in range(n)]
    quad = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.3:
                quad[i][j] = quad[j][i] = -2 * rng.randint(1, 500)
    return rng.randint(0, 1000), linear, quad


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[12, 16, 20])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)

    if kernels.BACKEND != "cython":
        print("compiled kernels unavailable; timing the fallback only")
    backends = ["python"] + (["cython"] if kernels.BACKEND == "cython" else [])
    rng = random.Random(args.seed)

    print(f"{'kernel':<14}{'n':>4}" + "".join(f"{b + ' s':>14}" for b in backends) + f"{'speedup':>10}")
    for n in args.sizes:
        const, linear, quad = instance(n, rng)
        vals = {b: kernels.subset_values(const, linear, quad, backend=b) for b in backends}
        dps = {b: kernels.chain_dp(vals[b], backend=b) for b in backends}
        ref = backends[0]
        for b in backends[1:]:
            assert np.array_equal(vals[b], vals[ref]), "subset_values mismatch"
            assert np.array_equal(np.asarray(dps[b]), np.asarray(dps[ref])), "chain_dp mismatch"

        for name, call in (
            ("subset_values", lambda b: kernels.subset_values(const, linear, quad, backend=b)),
            ("chain_dp", lambda b: kernels.chain_dp(vals[b], backend=b)),
        ):
            times = [best_of(lambda: call(b), args.repeat) for b in backends]
            ratio = f"{times[0] / times[-1]:.1f}x" if len(times) > 1 else "-"
            print(f"{name:<14}{n:>4}" + "".join(f"{t:>14.4f}" for t in times) + f"{ratio:>10}")


if __name__ == "__main__":
    main()
