"""Pair channels, total shifts and circular-state C3 for |100,0,0,0>^2."""

import argparse
import math

from rlandau.axial import RLQuantumNumbers
from rlandau.interactions import circular_c3, enumerate_channels, total_shift
from rlandau.landau import FieldConfig


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--Nz", type=int, default=100)
    ap.add_argument("--R", type=float, nargs="+", default=[2.0, 3.0])
    ap.add_argument("--theta", type=float, default=90.0, help="degrees")
    args = ap.parse_args()
    field = FieldConfig(2.5)
    chi = RLQuantumNumbers(args.Nz, 0, 0, 0)
    theta = math.radians(args.theta)
    chans = enumerate_channels(chi, field, theta=theta)
    print(f"{'combo':>13} {'psi_i':>12} {'psi_j':>12} {'C3':>9} {'delta':>9} {'C6':>11} {'R_cr':>7}")
    for c in chans:
        c6 = f"{c.c6:11.4g}" if c.c6 is not None else f"{'-':>11}"
        rcr = f"{c.r_cr:7.3f}" if c.r_cr is not None else f"{'-':>7}"
        print(f"{c.combo:>13} {str(c.psi[0]):>12} {str(c.psi[1]):>12} {c.c3:9.4g} "
              f"{c.delta:9.4g} {c6} {rcr}")
    for R in args.R:
        s = total_shift(chi, field, R, theta, channels=chans)
        print(f"R = {R:g} um: U_offres = {s.off_resonant * 1e3:.4g} MHz "
              f"(two-level {s.off_resonant_exact * 1e3:.4g} MHz), resonant C3 = "
              f"{s.resonant_c3 * 1e3:.4g} MHz um^3")
    print(f"{'M':>3} {'C3 computed':>12} {'C3 fit':>8}")
    for M in range(0, 11):
        r = circular_c3(M, field)
        print(f"{M:3d} {r.computed:12.4f} {r.fit:8.4f}")


if __name__ == "__main__":
    main()
