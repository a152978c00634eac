"""Timing of the compiled kernels against the pure-Python fallback.

Usage:
    python benchmarks/bench_kernels.py [--repeat 5] [--json out.json]
"""

import argparse
import json
import math
import timeit

import numpy as np

from notlimit import _kernels
from notlimit.channels import Implementation
from notlimit.conservation import random_conservative, random_pure_state


def response_tensor(seed=0, N=3):
    rng = np.random.default_rng(seed)
    impl = Implementation(N, random_conservative(N, rng), random_pure_state(2**N, rng))
    return impl.components().response().ravel()


def cases():
    G = response_tensor()
    ps = np.linspace(0, 1, 64)
    ts = np.linspace(0, 2 * math.pi, 128, endpoint=False)
    overlaps = np.random.default_rng(1).random((100_000, 11))
    return {
        "distance_grid 64x128": lambda k: k.distance_grid(G, ps, ts),
        "refine_max": lambda k: k.refine_max(G, 0.4, 1.0, 1 / 63, 2 * math.pi / 128, 1e-10, 200),
        "power_iteration l=64": lambda k: k.tridiag_power_iteration(64, 0.5, 1.0, 10_000, 1e-14),
        "overlap_sums 1e5x11": lambda k: k.overlap_sums(overlaps),
    }


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5, help="timing repeats; the best is reported")
    parser.add_argument("--json", default=None, help="also write results to this file")
    args = parser.parse_args(argv)

    backends = _kernels.available_backends()
    results = {}
    for name, fn in cases().items():
        row = {}
        for b in backends:
            k = _kernels.get_backend(b)
            timer = timeit.Timer(lambda: fn(k))
            number, _ = timer.autorange()
            row[b] = min(timer.repeat(repeat=args.repeat, number=number)) / number
        results[name] = row

    header = f"{'kernel':<24}" + "".join(f"{b:>14}" for b in backends)
    if "cython" in backends:
        header += f"{'speedup':>10}"
    print(header)
    for name, row in results.items():
        line = f"{name:<24}" + "".join(f"{row[b] * 1e3:>11.3f} ms" for b in backends)
        if "cython" in row:
            line += f"{row['python'] / row['cython']:>9.1f}x"
        print(line)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(results, fh, indent=2)


if __name__ == "__main__":
    main()
