"""Fitted shift d and quantum defects for the reference (N_l, M) roster at 2.5 T."""

import argparse

from rlandau.axial import defect_row
from rlandau.landau import FieldConfig
from rlandau.reference import SHIFT_TABLE


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--B", type=float, default=2.5)
    ap.add_argument("--exact", action="store_true", help="add exact-potential defects")
    args = ap.parse_args()
    field = FieldConfig(args.B)
    print(f"{'N_l':>3} {'M':>3} {'d_fit':>8} {'d_ref':>7} {'odd':>6} {'even':>6} "
          f"{'odd@ref':>7} {'even@ref':>8} {'ref_odd':>7} {'ref_even':>8}"
          + ("  exact_odd exact_even" if args.exact else ""))
    for (nl, m), (d_ref, odd_ref, even_ref) in SHIFT_TABLE.items():
        r = defect_row(nl, m, field, exact=args.exact)
        g = defect_row(nl, m, field, d=d_ref, exact=False)
        line = (f"{nl:3d} {m:3d} {r.d:8.2f} {d_ref:7.3g} {r.delta_odd:6.3f} {r.delta_even:6.3f} "
                f"{g.delta_odd:7.3f} {g.delta_even:8.3f} {odd_ref:7.2f} {even_ref:8.2f}")
        if args.exact:
            line += f"  {r.exact_odd:9.3f} {r.exact_even:10.3f}"
        print(line)


if __name__ == "__main__":
    main()
