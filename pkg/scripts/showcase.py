#!/usr/bin/env python3
"""Expand the two headline cubics and print their verification tables.

The discriminant-49 field (roots 2cos(2k*pi/7) of x^3 + x^2 - 2x - 1) and
the cube root of 2 make a nice contrast: one totally real and cyclic, one
with a complex conjugate pair.  For each, the table tracks the partial
quotients, the reduced flag of each tail, the scaled conjugate separation
q_n^2 |s1 - s2| converging to its limit constant, and the distance ratios
of the asymptotic law.
"""
import argparse
import sys
from fractions import Fraction

from cubicf import intervals as iv
from cubicf.algnum import make_algebraic
from cubicf.cf import expand
from cubicf.cli import parse_poly
from cubicf.conjugates import (
    asym_sequence,
    beta_constant,
    limit_sequence,
    reduced_flags,
    reducedness_onset,
)
from cubicf.poly import discriminant

SHOWCASES = [
    ("x^3 + x^2 - 2x - 1", 3),
    ("x^3 - 2", 1),
]


def run(source: str, root: int, depth: int) -> None:
    f = parse_poly(source)
    x = make_algebraic(f, index=root)
    e = expand(x, depth)
    d = discriminant(f)
    beta = beta_constant(x, Fraction(1, 10**12))
    flags = reduced_flags(e)
    print(f"\n=== {source} (root {root}), discriminant {d} ===")
    print(f"quotients: {e.quotients()}")
    print(f"reducedness onset: {reducedness_onset(e)}")
    print(f"beta = {float(iv.midpoint(beta)):.9f}")
    limit = limit_sequence(e, Fraction(1, 10**8))
    asym = asym_sequence(e, Fraction(1, 10**6))
    print(f"{'n':>4} {'a':>8} {'red':>4} {'q^2|s1-s2|':>14} {'ratio j=1':>12} {'ratio j=2':>12}")
    for rec, arec, step in zip(limit, asym, e.steps):
        print(
            f"{rec.n:>4} {step.a:>8} {int(flags[rec.n]):>4} "
            f"{float(iv.midpoint(rec.value)):>14.9f} "
            f"{float(iv.midpoint(arec.ratio_first)):>12.7f} "
            f"{float(iv.midpoint(arec.ratio_second)):>12.7f}"
        )
    print(f"limit target: {float(iv.midpoint(limit[-1].target)):.9f}; "
          f"asym target: {float(iv.midpoint(asym[-1].target)):.7f}")


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--depth", type=int, default=25)
    args = ap.parse_args()
    for source, root in SHOWCASES:
        run(source, root, args.depth)
    return 0


if __name__ == "__main__":
    sys.exit(main())
