"""Closure fraction and element frequency of the two-layer family as n grows.

The frequency approaches psi_k only at rate n^(-1/3); the ladder shows how
large n must be before it is within a given distance.
"""

import argparse
import csv
import sys

from kunion import constants
from kunion.simulate import FamilySpec, exact_element_frequency, simulate


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=3)
    ap.add_argument("--n", type=int, nargs="+", default=[200, 500, 1000, 2000, 5000])
    ap.add_argument("--trials", type=int, default=100_000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--exact-n", type=int, nargs="*", default=[10**4, 10**5, 10**6],
                    help="extra n for which only the exact frequency is printed")
    args = ap.parse_args()

    psi = float(constants.mid(constants.psi(args.k)))
    w = csv.writer(sys.stdout)
    w.writerow(("n", "t1", "t2", "closure", "closure_hw", "frequency", "exact_frequency", "freq_minus_psi"))
    for n in args.n:
        sim = simulate(n, args.k, args.trials, args.seed)
        exact = float(sim.exact_frequency)
        w.writerow((n, sim.spec.t1, sim.spec.t2, sim.closure_fraction, f"{sim.closure_half_width:.2e}",
                    f"{sim.element_frequency:.5f}", f"{exact:.5f}", f"{exact - psi:.5f}"))
    for n in args.exact_n:
        spec = FamilySpec.build(n, args.k)
        exact = float(exact_element_frequency(spec))
        w.writerow((n, spec.t1, spec.t2, "", "", "", f"{exact:.5f}", f"{exact - psi:.5f}"))


if __name__ == "__main__":
    main()
