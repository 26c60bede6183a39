"""Decay budgets and lifetimes of rLandau states with the 87Rb configuration."""

import argparse
from pathlib import Path

from rlandau.axial import RLQuantumNumbers, ground_state
from rlandau.config import load_config
from rlandau.landau import FieldConfig
from rlandau.radiative import lifetime_budget

CONFIG = Path(__file__).resolve().parents[1] / "configs" / "rb87.ini"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--config", type=Path, default=CONFIG)
    ap.add_argument("--M", type=int, nargs="+", default=[0, 1, 3])
    args = ap.parse_args()
    cfg = load_config(args.config)
    field = FieldConfig(cfg.B)
    states = [RLQuantumNumbers(100, 0, 0, m) for m in args.M] + [ground_state(0, m, field)
                                                                 for m in args.M]
    temps = cfg.temperatures
    print(f"{'state':>14} {'G0_C':>10} {'G0_L':>10} "
          + " ".join(f"{'BBR' + format(T, 'g'):>10} {'tau' + format(T, 'g'):>10}" for T in temps))
    for qn in states:
        b = lifetime_budget(qn, field, temps, cfg.defects, cfg.mode, cfg.grid, cfg.decay)
        print(f"{str(qn):>14} {b.gamma0_C:10.4g} {b.gamma0_L:10.4g} "
              + " ".join(f"{b.gamma_bbr[T]:10.4g} {b.tau(T):10.4g}" for T in temps))


if __name__ == "__main__":
    main()
