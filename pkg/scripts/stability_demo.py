"""Forward recursion for F_n versus the backward continued fraction.

    python3 scripts/stability_demo.py [--alpha 0 --c -1 --nmax 160]

Prints the relative error of forward recursion seeded with correctly
rounded F_0, F_1 next to the growth model e^{4 sqrt(-c n)} (scaled to the
measured error at n = 10), and the first n at which the error exceeds 1.
"""

import argparse
import math

from laguerre_geronimus.checks import forward_divergence_index
from laguerre_geronimus.second_kind import f0_second_kind, forward_second_kind, second_kind_sequence


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--alpha", type=float, default=0.0)
    ap.add_argument("--c", type=float, default=-1.0)
    ap.add_argument("--nmax", type=int, default=160)
    args = ap.parse_args()
    a, c = args.alpha, args.c
    vals, _ = second_kind_sequence(args.nmax, a, c)
    fw = forward_second_kind(args.nmax, a, c, f0_second_kind(a, c), vals[1].to_float())
    def rel(n):
        ref = vals[n]
        return abs(fw[n] * math.exp(-ref.logmag) * ref.sign - 1) if ref.logmag < 700 else float("nan")

    scale = rel(10) / math.exp(4 * math.sqrt(-c * 10))
    print(f"{'n':>5s} {'rel err':>12s} {'model':>12s}")
    for n in range(10, args.nmax + 1, 10):
        print(f"{n:5d} {rel(n):12.3e} {scale * math.exp(4 * math.sqrt(-c * n)):12.3e}")
    print("first n with relative error > 1:", forward_divergence_index(a, c, args.nmax))


if __name__ == "__main__":
    main()
