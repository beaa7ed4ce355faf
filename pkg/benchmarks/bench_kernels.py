"""Compare the numba and numpy shooting kernels.

    python benchmarks/bench_kernels.py [--batch 20] [--steps 1000] [--repeat 5]

Prints the best-of-``repeat`` time per batch for each backend, the speedup,
and whether both backends returned bit-identical terminal states. The batch
size matches one optimizer generation at the default population.
"""

import argparse
import time

import numpy as np

from fskan import kernels


def best_time(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--batch", type=int, default=20)
    parser.add_argument("--steps", type=int, default=1000)
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    alpha = rng.uniform(0.0, 3.0, args.batch)
    eta_inf = rng.uniform(1.0, 12.0, args.batch)
    beta0, beta = 0.5, 0.0

    # first call compiles (or loads the on-disk cache)
    kernels.terminal_state_numba(alpha, eta_inf, beta0, beta, 2)

    results = {}
    timings = {}
    for name, fn in (("numba", kernels.terminal_state_numba), ("numpy", kernels.terminal_state_numpy)):
        results[name] = fn(alpha, eta_inf, beta0, beta, args.steps)
        timings[name] = best_time(lambda: fn(alpha, eta_inf, beta0, beta, args.steps), args.repeat)

    per_eval = {k: v / args.batch for k, v in timings.items()}
    print(f"batch={args.batch} steps={args.steps} repeat={args.repeat}")
    for name in ("numba", "numpy"):
        print(f"{name:>6}: {timings[name] * 1e3:9.3f} ms/batch  {per_eval[name] * 1e6:9.1f} us/eval")
    print(f"speedup: {timings['numpy'] / timings['numba']:.1f}x")
    same = np.array_equal(results["numba"], results["numpy"], equal_nan=True)
    print(f"bit-identical: {same}")
    return 0 if same else 1


if __name__ == "__main__":
    raise SystemExit(main())
