#!/usr/bin/env python3
"""Deep-expansion profiling: timing and coefficient bit-size growth.

Runs a configurable-depth expansion (default 500) with a sparse direct-
recomputation cadence and reports the per-step coefficient bit sizes,
which grow linearly in the step index, plus the observed wall time.
"""
import argparse
import sys
import time

from cubicf.algnum import make_algebraic
from cubicf.cf import expand
from cubicf.cli import parse_poly


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--poly", default="x^3 - 2")
    ap.add_argument("--root", type=int, default=1)
    ap.add_argument("--depth", type=int, default=500)
    ap.add_argument("--crosscheck-every", type=int, default=10, dest="cadence")
    args = ap.parse_args()

    x = make_algebraic(parse_poly(args.poly), index=args.root)
    t0 = time.time()
    e = expand(x, args.depth, crosscheck_every=args.cadence)
    elapsed = time.time() - t0

    bits = [s.bits for s in e.steps]
    print(f"depth {args.depth}, crosscheck cadence {args.cadence}: {elapsed:.2f}s")
    print(f"{'n':>6} {'bits':>8} {'bits/n':>8} {'a_n':>10}")
    for n in range(49, args.depth, max(args.depth // 10, 1)):
        print(f"{n + 1:>6} {bits[n]:>8} {bits[n] / (n + 1):>8.3f} {e.steps[n].a:>10}")
    if args.depth >= 100:
        half = args.depth // 2
        s1 = (bits[half - 1] - bits[0]) / (half - 1)
        s2 = (bits[-1] - bits[half - 1]) / (args.depth - half)
        print(f"slope first half {s1:.3f} bits/step, second half {s2:.3f} bits/step")
    return 0


if __name__ == "__main__":
    sys.exit(main())
