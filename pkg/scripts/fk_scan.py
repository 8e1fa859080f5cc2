"""Write f_k(x) on a uniform grid of [0, 1] to one CSV per k."""

import argparse
from pathlib import Path

from kunion.analysis import fk_scan, write_scan_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, nargs="+", default=list(range(2, 9)))
    ap.add_argument("--points", type=int, default=2001)
    ap.add_argument("--out", type=Path, default=Path("fk_scans"))
    args = ap.parse_args()

    args.out.mkdir(parents=True, exist_ok=True)
    for k in args.k:
        rows = fk_scan(k, args.points)
        path = args.out / f"f_{k}.csv"
        write_scan_csv(path, rows)
        low = min(rows[1:-1], key=lambda r: r[1])
        print(f"{path}: interior minimum {low[1]:.3e} at x = {low[0]:.6f}")


if __name__ == "__main__":
    main()
