#!/usr/bin/env python3
"""Convergence-ratio portraits: how hard different accelerations squeeze the
gap of a geometric approximation.

Writes one CSV per configuration (plot-ready: n, ratio, running minimum) and
prints the running minima, including the exact 2**-k contraction ladder
obtained by composing an affine map with itself.
"""

import argparse
import csv
import pathlib
from fractions import Fraction

from lce_lab import (
    affine_toward,
    amplify,
    check_total_speedup,
    geometric,
    identity_speedup,
    liminf_record,
    linear_speedup,
    speedup_from_translation,
)
from lce_lab.util import rational_str


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--horizon", type=int, default=16)
    ap.add_argument("--out-dir", default="portraits")
    ap.add_argument("--max-amplify", type=int, default=8)
    args = ap.parse_args()
    out_dir = pathlib.Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    x = geometric(Fraction(1), name="geometric1")
    speedups = [
        identity_speedup(),
        linear_speedup(2),
        linear_speedup(3),
        speedup_from_translation(x, affine_toward(Fraction(1), Fraction(1, 2))),
    ]
    for f in speedups:
        trace = liminf_record(x, f, args.horizon)
        path = out_dir / f"{f.name.replace('/', '_').replace('@', '_at_')}.csv"
        with path.open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["n", "ratio_num", "ratio_den", "running_min_num", "running_min_den"])
            writer.writerows(trace.csv_rows())
        print(f"{f.name:<28} running_min = {rational_str(trace.running_min):<12} -> {path}")

    print("\namplification ladder for the halving contraction:")
    g = affine_toward(Fraction(1), Fraction(1, 2))
    for k in range(1, args.max_amplify + 1):
        rho = Fraction(1, 1 << k)
        report = check_total_speedup(x, amplify(g, k), rho, args.horizon)
        state = "evidence" if report.evidence else "no evidence"
        print(f"  k={k:<3} rho=2^-{k:<3} {state}; every ratio {rational_str(report.trace.running_min)}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
