"""M-ladder populations under a resonant sigma drive, with the reversal check."""

import argparse
import math

import numpy as np

from rlandau.excitation import coherent_populations, ladder_evolve


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rabi-mhz", type=float, default=1.0)
    ap.add_argument("--wt", type=float, nargs="+", default=[0.5, 1.0, 2.0, 3.0])
    args = ap.parse_args()
    omega = 2 * math.pi * args.rabi_mhz * 1e6
    for wt in args.wt:
        st = ladder_evolve(omega, wt / omega)
        ref = coherent_populations(wt, st.M_max)
        back = ladder_evolve(omega, wt / omega, initial=st, reverse=True)
        pops = " ".join(f"{p:.4f}" for p in st.populations[:8])
        print(f"Omega t = {wt:4.2f}: P(M) = {pops} ...  max |P - Poisson| = "
              f"{np.max(np.abs(st.populations - ref)):.1e}  reversed |c0|^2 = "
              f"{abs(back.amplitudes[0]) ** 2:.9f}")


if __name__ == "__main__":
    main()
