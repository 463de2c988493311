"""Compare the numba and pure-numpy weight kernels.

    python3 benchmarks/bench_kernels.py [--samples N] [--repeat R]

Times the weight evaluation alone on pre-drawn uniforms, then a full
integrate_mc run per backend, and checks both backends give the same weights.
"""
import argparse
import time

import numpy as np

from qmcount.montecarlo import BUILTIN_IDS, HAVE_NUMBA, builtin_integrand, integrate_mc
from qmcount.montecarlo import kernels
from qmcount.montecarlo.integrate import block_generator


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=1_000_000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()
    backends = ["numpy"] + (["numba"] if HAVE_NUMBA else [])

    print(f"weight kernels, {args.samples} samples, best of {args.repeat}")
    print(f"{'integrand':<16}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}{'max rel diff':>14}")
    for name in BUILTIN_IDS:
        f = builtin_integrand(name)
        u = block_generator(0, 0).random((args.samples, 2 * f.arity))
        outs, times = {}, {}
        for b in backends:
            kernels.weights(name, f.density, u[:100], b)  # compile / warm up
            times[b] = best_of(lambda: outs.__setitem__(b, kernels.weights(name, f.density, u, b)), args.repeat)
        row = f"{name:<16}" + "".join(f"{times[b]:>11.3f}s" for b in backends)
        if "numba" in times:
            diff = np.max(np.abs(outs["numba"] - outs["numpy"]) / np.maximum(np.abs(outs["numpy"]), 1e-300))
            row += f"{times['numpy'] / times['numba']:>9.1f}x{diff:>14.2e}"
        print(row)

    print(f"\nfull integrate_mc, {args.samples} samples, {args.threads} thread(s)")
    for name in BUILTIN_IDS:
        f = builtin_integrand(name)
        parts = []
        for b in backends:
            est = integrate_mc(f, args.samples, seed=0, threads=args.threads, backend=b)
            parts.append(f"{b} {est.wall_time:.3f}s ({est.format()})")
        print(f"{name:<16}" + "   ".join(parts))


if __name__ == "__main__":
    main()
