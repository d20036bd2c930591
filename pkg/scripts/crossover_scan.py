"""Scan Lambda_n across the predicted crossover for a tiny mass N.

    python3 scripts/crossover_scan.py [--alpha 0 --c -1 --N 1e-12] [--csv out.csv]

For n well below n_star, Lambda_n follows the N = 0 expansion; well above,
the N > 0 one.  The table shows the distance to each branch.
"""

import argparse
import csv
import sys

from laguerre_geronimus.asymptotics import crossover, lambda_asymptotic
from laguerre_geronimus.geronimus import GeronimusParams, lambda_sequence


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--alpha", type=float, default=0.0)
    ap.add_argument("--c", type=float, default=-1.0)
    ap.add_argument("--N", type=float, default=1e-12)
    ap.add_argument("--csv", default=None)
    args = ap.parse_args()
    p = GeronimusParams(args.alpha, args.c, args.N)
    info = crossover(p)
    print(f"D = {info.D:.7g}, n_star = {info.n_star}")
    if info.n_star is None:
        return
    ns = sorted({max(1, int(info.n_star * f)) for f in (0.1, 0.25, 0.5, 0.75, 0.9, 1, 1.1, 1.25, 1.5, 2, 4, 8)})
    lam = lambda_sequence(ns[-1], p)
    rows = []
    for n in ns:
        lo = lambda_asymptotic(n, p, sign=-1)
        hi = lambda_asymptotic(n, p, sign=1)
        rows.append({"n": n, "lambda": lam[n], "dist_N0_branch": abs(lam[n] - lo), "dist_Npos_branch": abs(lam[n] - hi)})
    out = open(args.csv, "w", newline="") if args.csv else sys.stdout
    w = csv.DictWriter(out, fieldnames=list(rows[0]))
    w.writeheader()
    w.writerows(rows)
    if args.csv:
        out.close()


if __name__ == "__main__":
    main()
