"""delta_nu, R, kappa and lambda for small permutation groups.

    python scripts/omega_table.py --m 1
"""

import argparse
import sys

from piltz.bounds.galois import omega_constants
from piltz.experiments import named_group

GROUPS = ["C2", "C3", "S3", "C4", "D4", "S4", "C5", "D5", "S5"]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, default=1)
    args = ap.parse_args(argv)
    print(f"{'group':6} {'|G|':>4} {'n':>2} {'R':>2} {'kappa':>10} {'lambda':>8}  delta")
    for name in GROUPS:
        data = named_group(name)
        oc = omega_constants(data, args.m)
        delta = " ".join(str(d) for d in oc.delta)
        print(f"{name:6} {len(data.G):>4} {data.n:>2} {oc.R:>2} {oc.kappa:>10.6f} {oc.lam:>8.4f}  {delta}")
    sys.stdout.flush()


if __name__ == "__main__":
    main()
