"""|Delta_K^m(x)| across quadratic fields of growing discriminant at fixed x.

Compares the error with x^(1/2) and with the uniform shape
x^((2mn-3)/(2mn+1)) D^(2m/(2mn+1)).  The family (all fundamental
discriminants with |D| <= D_max) is a choice of this script.

    python scripts/conjecture_probe.py --x 1e6 --d-max 200 --m 1
"""

import argparse
import csv
import math
import sys

from piltz.analytic.laurent import main_term
from piltz.fields import fundamental_discriminant, make_quadratic_field
from piltz.sieve import count_ideals, piltz_table


def fundamental_discriminants(d_max):
    seen = set()
    for d in range(-d_max, d_max + 1):
        if d in (0, 1):
            continue
        try:
            D = fundamental_discriminant(d)
        except ValueError:
            continue
        if abs(D) <= d_max and D not in seen:
            seen.add(D)
            yield D


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--x", type=float, default=1e6)
    ap.add_argument("--d-max", type=int, default=100)
    ap.add_argument("--m", type=int, default=1)
    args = ap.parse_args(argv)

    x, m, n = args.x, args.m, 2
    k = m * n
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["D", "delta", "delta_over_sqrt_x", "delta_over_uniform_shape"])
    for D in sorted(fundamental_discriminants(args.d_max), key=abs):
        K = make_quadratic_field(D)
        delta = count_ideals(piltz_table(K, m, int(x)), x) - main_term(K, m, x)
        shape = x ** ((2 * k - 3) / (2 * k + 1)) * abs(D) ** (2 * m / (2 * k + 1))
        w.writerow([D, f"{delta:.6g}", f"{abs(delta) / math.sqrt(x):.6g}", f"{abs(delta) / shape:.6g}"])


if __name__ == "__main__":
    main()
