"""Compare the compiled and pure-Python enumeration kernels.

    python3 benchmarks/bench_enumeration.py [--activities 8 11 14] [--points 4] [--repeat 3]

Both backends must return identical results; the script exits non-zero if not.
"""

import argparse
import sys
import time

import numpy as np

from fuzzycpm import kernel
from fuzzycpm.survey import random_network


def timed(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--activities", type=int, nargs="+", default=[8, 11, 14])
    ap.add_argument("--points", type=int, default=4)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    backends = kernel.available_backends()
    if "cython" not in backends:
        print("compiled kernel not built; only the Python fallback is available")
    rng = np.random.default_rng(args.seed)
    print(f"{'acts':>4} {'configs':>9} " + " ".join(f"{b + ' s':>10}" for b in backends)
          + ("    speedup" if len(backends) > 1 else ""))
    ok = True
    for n in args.activities:
        g = random_network(rng, activities=n, max_points=args.points, edge_prob=0.4)
        p = kernel.pack(g)
        times, results = [], []
        for b in backends:
            t, r = timed(lambda b=b: kernel.best_by_length(p, backend=b), args.repeat)
            times.append(t)
            results.append(r)
        ok &= all(r == results[0] for r in results)
        line = f"{n:>4} {p.total:>9} " + " ".join(f"{t:>10.4f}" for t in times)
        if len(times) > 1:
            line += f" {times[-1] / times[0]:>10.1f}x"
        print(line)
    if not ok:
        print("backends disagree", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
