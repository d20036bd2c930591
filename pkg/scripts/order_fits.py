"""Fit empirical convergence orders for every large-n formula and print a table.

    python3 scripts/order_fits.py [--alpha 0 --c -1 --nmax 6400] [--json out.json]

Besides the acceptance cases this also reports the Casoratian product
L_{n-1} F_{n-1} against its leading form, and the n^{-3/2} coefficients of
the recurrence-coefficient profiles on both branches.
"""

import argparse
import json
import math

from laguerre_geronimus import asymptotics as asy
from laguerre_geronimus.checks import CheckConfig, order_fit_cases
from laguerre_geronimus.geronimus import GeronimusParams


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--alpha", type=float, default=0.0)
    ap.add_argument("--c", type=float, default=-1.0)
    ap.add_argument("--nmax", type=int, default=6400)
    ap.add_argument("--json", default=None)
    args = ap.parse_args()
    cfg = CheckConfig(alphas=(args.alpha,), cs=(args.c,), Ns=(1.0,), nmax_asymptotic=args.nmax)
    grid, cases = order_fit_cases(cfg)
    cases = cases + [("Casoratian product L F (leading form)", 0.5, lambda: asy.casoratian_product_errors(args.alpha, args.c, grid))]
    rows = []
    print(f"{'case':44s} {'claimed':>7s} {'p_hat':>7s} {'r2':>8s}  monotone")
    for name, claimed, thunk in cases:
        fit = asy.estimate_order(grid, thunk())
        print(f"{name:44s} {claimed:7.2f} {fit.p_hat:7.3f} {fit.r2:8.5f}  {fit.monotone}")
        rows.append({"case": name, "claimed": claimed, **fit.as_dict()})

    print("\nn^{-3/2} coefficients of the recurrence profiles at n =", grid[-1])
    r = math.sqrt(-args.c)
    for N in (1.0, 0.0):
        p = GeronimusParams(args.alpha, args.c, N)
        b = asy.beta_profile_errors(p, grid)[-1] * grid[-1] ** 1.5
        g = asy.gamma_profile_errors(p, grid)[-1] * grid[-1] ** 1.5
        print(f"  N={N:g}: beta {b:+.4f} (claimed {-p.sign * r / 4:+.4f})   gamma {g:+.4f} (claimed {-p.sign * r / 2:+.4f})")
        rows.append({"case": f"profile coefficients N={N:g}", "beta": b, "gamma": g})
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=1)


if __name__ == "__main__":
    main()
