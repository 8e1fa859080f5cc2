"""z_k / psi_k at k = 2^p against its limit log(1/phi_2)/log 2."""

import argparse

import mpmath

from kunion.constants import limit_ratio, mid, psi, z


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pmax", type=int, default=24)
    ap.add_argument("--bits", type=int, default=64)
    args = ap.parse_args()

    lim = mid(limit_ratio(args.bits))
    print(f"limit {mpmath.nstr(lim, 10)}")
    print(f"{'p':>3} {'z/psi':>12} {'gap':>10}")
    for p in range(1, args.pmax + 1):
        r = mid(z(2**p, args.bits) / psi(2**p, args.bits))
        print(f"{p:>3} {mpmath.nstr(r, 10):>12} {mpmath.nstr(r - lim, 4):>10}")


if __name__ == "__main__":
    main()
