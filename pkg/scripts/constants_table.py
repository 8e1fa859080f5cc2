"""Print phi_k, psi_k, z_k, alpha_k, mu_k for a set of k."""

import argparse

from kunion.constants import check_table1, format_table1, table1


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, nargs="+", default=[2, 3, 4, 5, 6, 7, 8, 16])
    ap.add_argument("--prec", type=float, default=1e-8)
    ap.add_argument("--format", choices=("text", "csv", "json"), default="text")
    args = ap.parse_args()

    rows = table1(args.k, args.prec)
    print(format_table1(rows, args.format, args.prec), end="")
    rep = check_table1()
    for w in rep.witnesses:
        if not w.holds:
            print(f"# reference cell off by more than 1e-4: {w.expression} = {w.value} ({w.predicate})")


if __name__ == "__main__":
    main()
