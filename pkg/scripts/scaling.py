"""Log-log exponents of the dominant pi-pi channel against N_z."""

import argparse

from rlandau.interactions import scaling_probe
from rlandau.landau import FieldConfig


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--start", type=int, default=40)
    ap.add_argument("--stop", type=int, default=100)
    ap.add_argument("--step", type=int, default=10)
    args = ap.parse_args()
    nz = range(args.start, args.stop + 1, args.step)
    field = FieldConfig(2.5)
    for q in ("pi_dipole", "defect", "c6"):
        r = scaling_probe(q, nz, field)
        vals = " ".join(f"{v:.4g}" for v in r.values)
        print(f"{q:>10}: exponent {r.exponent:7.3f}  values {vals}")


if __name__ == "__main__":
    main()
