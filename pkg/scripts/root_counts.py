"""Roots of p_k in (0, 1) for a range of k, with timings, as CSV."""

import argparse
import csv
import sys
import time

from kunion.paperpoly import build_p, unit_interval_root_count


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--kmin", type=int, default=2)
    ap.add_argument("--kmax", type=int, default=8)
    args = ap.parse_args()

    w = csv.writer(sys.stdout)
    w.writerow(("k", "degree", "distinct", "with_multiplicity", "seconds"))
    for k in range(args.kmin, args.kmax + 1):
        t = time.perf_counter()
        rc = unit_interval_root_count(k)
        w.writerow((k, build_p(k).degree, rc.distinct, rc.with_multiplicity, f"{time.perf_counter() - t:.2f}"))
        sys.stdout.flush()


if __name__ == "__main__":
    main()
