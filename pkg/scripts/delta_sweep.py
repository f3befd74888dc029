"""Fitted error-term exponents for every built-in field and several m.

    python scripts/delta_sweep.py --x-max 1e7 --out sweep.csv
"""

import argparse
import csv
import sys
import time

from piltz.bounds.catalog import best_bound, theta_cub
from piltz.errors import PiltzError
from piltz.experiments import ExperimentConfig, run_delta
from piltz.fields import builtin_fields


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--x-max", type=float, default=1e6)
    ap.add_argument("--m-max", type=int, default=3)
    ap.add_argument("--window", type=float, default=1.0)
    ap.add_argument("--out", help="CSV path (default: stdout)")
    args = ap.parse_args(argv)

    out = open(args.out, "w", newline="") if args.out else sys.stdout
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["field", "n", "m", "x_max", "theta_hat", "rms", "theta_cub", "best", "best_source", "seconds"])
    for label, K in builtin_fields().items():
        for m in range(1, args.m_max + 1):
            cfg = ExperimentConfig(kind="delta", field=label, m=m, x_max=int(args.x_max), window=args.window)
            start = time.perf_counter()
            try:
                rep = run_delta(cfg)
            except PiltzError as exc:
                print(f"skip {label} m={m}: {type(exc).__name__}", file=sys.stderr)
                continue
            if rep.fit is None:
                continue
            best = best_bound(K.degree, m)
            cub = theta_cub(K.degree, m) if K.degree * m >= 4 else None
            w.writerow([label, K.degree, m, int(args.x_max), f"{rep.fit.theta_hat:.5f}",
                        f"{rep.fit.rms_residual:.3g}", "" if cub is None else f"{float(cub):.5f}",
                        "" if best is None else f"{float(best.theta):.5f}", "" if best is None else best.source,
                        f"{time.perf_counter() - start:.2f}"])
            out.flush()
    if args.out:
        out.close()


if __name__ == "__main__":
    main()
