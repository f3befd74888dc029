"""V_ell^r(x, K) against rho_K^ell x^ell / zeta_K(r ell) for built-in fields.

    python scripts/rprime_table.py --x 1e5
"""

import argparse
import csv
import sys

from piltz.errors import PiltzError
from piltz.experiments import rprime_main_constant
from piltz.fields import builtin_fields
from piltz.sieve import count_rprime, sieve_dk, sieve_mobius

PAIRS = [(1, 2), (1, 3), (2, 1), (2, 2), (3, 1)]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--x", type=float, default=1e5)
    args = ap.parse_args(argv)

    X = int(args.x)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["field", "r", "ell", "x", "V", "main", "ratio"])
    for label, K in builtin_fields().items():
        dk, mob = sieve_dk(K, X), sieve_mobius(K, X)
        for r, ell in PAIRS:
            try:
                c, _ = rprime_main_constant(K, r, ell)
            except PiltzError as exc:
                print(f"skip {label} r={r} ell={ell}: {type(exc).__name__}", file=sys.stderr)
                continue
            V = count_rprime(K, r, ell, X, dk, mob)
            main_ = c * float(X) ** ell
            w.writerow([label, r, ell, X, V, f"{main_:.10g}", f"{V / main_:.8f}"])


if __name__ == "__main__":
    main()
