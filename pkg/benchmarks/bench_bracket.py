"""Compare the state-sum backends and the contraction evaluator.

    python3 benchmarks/bench_bracket.py [--repeat N] [--max-crossings K]

Diagrams are long connected sums of catalog knots, so every size is a
genuine knot rather than a padded unknot.  Times are best of N, after one
warm-up call (the numba kernel compiles on first use).
"""

import argparse
import time

from skeincross import _kernels, catalog
from skeincross import diagram as dg
from skeincross.bracket import singular_bracket


def bench_diagrams(max_crossings):
    parts = ["3_1", "4_1", "6_3", "3_1", "4_1", "6_3"]
    d = dg.UNKNOT
    out = []
    for name in parts:
        d = dg.connected_sum(d, catalog.get(name).diagram)
        if len(d) > max_crossings:
            break
        out.append(d)
    return out


def best_of(fn, repeat):
    fn()
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main():
    ap = argparse.ArgumentParser(description="bracket evaluator timings")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--max-crossings", type=int, default=16)
    args = ap.parse_args()

    methods = [("naive/" + b, "naive", b) for b in _kernels.available_backends()]
    methods.append(("contract", "contract", None))
    print("crossings " + " ".join(f"{m:>14}" for m, _, _ in methods))
    for d in bench_diagrams(args.max_crossings):
        ref = singular_bracket(d, method="contract")
        row = []
        for _, method, backend in methods:
            assert singular_bracket(d, method=method, backend=backend) == ref
            row.append(best_of(lambda: singular_bracket(d, method=method, backend=backend), args.repeat))
        print(f"{len(d):>9} " + " ".join(f"{t * 1e3:>12.2f}ms" for t in row))


if __name__ == "__main__":
    main()
