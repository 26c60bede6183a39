"""Batch command line: ``rlandau {state,defects,lifetime,interaction,excite}``.

Exit codes: 0 success, 2 physics or solver failure, 3 configuration error.
Every output file starts with a provenance comment line followed by a
one-line column header (CSV) or carries a ``provenance`` object (JSON).
"""

from __future__ import annotations

import argparse
import csv
import datetime as _dt
import json
import math
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import __version__
from .axial import (
    RLQuantumNumbers,
    defect_row,
    grid_fingerprint,
    ground_state,
    solve_axial,
    total_energy_from,
)
from .config import RunConfig, load_config
from .constants import HARTREE_GHZ
from .errors import ConfigError, PhysicsError, RLandauError
from .excitation import coherent_populations, ladder_detunings, ladder_evolve
from .interactions import enumerate_channels, total_shift
from .landau import FieldConfig, TransverseState, radial_profile
from .radiative import lifetime_budget
from .reference import SHIFT_TABLE

EXIT_OK, EXIT_PHYSICS, EXIT_CONFIG = 0, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------- output


class Writer:
    """Writes tables as CSV or JSON with a provenance record."""

    def __init__(self, cfg: RunConfig, command: str, argv: list[str]):
        self.cfg = cfg
        self.provenance = {
            "tool": "rlandau", "version": __version__, "command": command,
            "config": cfg.digest, "grid": grid_fingerprint(cfg.grid), "mode": cfg.mode,
            "B": cfg.B, "args": " ".join(argv),
            "generated": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
        }
        self.written: list[Path] = []

    def write(self, stem: str, columns: list[str], rows: list[list]) -> Path:
        out = self.cfg.output_dir
        out.mkdir(parents=True, exist_ok=True)
        path = out / f"{stem}.{self.cfg.output_format}"
        if self.cfg.output_format == "csv":
            with path.open("w", newline="") as fh:
                fh.write("# " + " ".join(f"{k}={v}" for k, v in self.provenance.items()) + "\n")
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(columns)
                for r in rows:
                    w.writerow([_fmt(v) for v in r])
        else:
            recs = [{c: _json(v) for c, v in zip(columns, r)} for r in rows]
            path.write_text(json.dumps({"provenance": self.provenance, "columns": columns,
                                        "rows": recs}, indent=1) + "\n")
        self.written.append(path)
        return path


def _fmt(v):
    if isinstance(v, (float, np.floating)):
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return repr(float(v))
    return str(v)


def _json(v):
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else str(v)
    if isinstance(v, np.integer):
        return int(v)
    return v


# ---------------------------------------------------------------- commands


def _field(cfg: RunConfig) -> FieldConfig:
    return FieldConfig(cfg.B)


def _qn(args, field, cfg) -> RLQuantumNumbers:
    TransverseState(args.Nl, args.M, field)  # validates N_l, M
    if args.Nz is None or args.ground:
        return ground_state(args.Nl, args.M, field, cfg.mode)
    return RLQuantumNumbers(args.Nz, args.P, args.Nl, args.M)


def cmd_state(args, cfg: RunConfig, out: Writer) -> None:
    field = _field(cfg)
    ts = TransverseState(args.Nl, args.M, field)
    rc = field.rc
    rho = np.linspace(0.0, args.rho_max * rc, args.rho_points)
    g = radial_profile(ts, rho)
    dens = g * g
    radial = 2 * np.pi * rho * dens
    out.write("transverse", ["rho_a0", "density_a0^-2", "radial_density_a0^-1"],
              [[r, d, q] for r, d, q in zip(rho, dens, radial)])
    qn = _qn(args, field, cfg)
    sol = solve_axial(qn, field, cfg.mode, grid=cfg.grid)
    out.write("axial", ["z_a0", "f"], [[z, f] for z, f in zip(sol.z, sol.f) if z >= 0])
    e_tot = total_energy_from(sol, field)
    out.write("energy", ["state", "nu", "defect", "asymptotic_defect", "E_z_GHz", "E_total_GHz",
                         "mean_abs_z_over_rc", "ring_radius_over_rc"],
              [[str(qn), sol.nu, sol.defect, sol.asymptotic_defect, sol.E_z * HARTREE_GHZ,
                e_tot, sol.mean_abs_z() / rc, rho[int(np.argmax(radial))] / rc]])


def cmd_defects(args, cfg: RunConfig, out: Writer) -> int:
    field = _field(cfg)
    if args.Nl is None and args.M is None:
        roster = list(SHIFT_TABLE)
    else:
        nls = args.Nl if args.Nl is not None else [0]
        ms = args.M if args.M is not None else [0]
        roster = [(n, m) for n in nls for m in ms if m >= -n]
    rows, failures = [], 0
    for nl, m in roster:
        ref = SHIFT_TABLE.get((nl, m), (math.nan,) * 3)
        try:
            r = defect_row(nl, m, field, grid=cfg.grid, exact=not args.no_exact)
            given = (defect_row(nl, m, field, d=ref[0], grid=cfg.grid, exact=False)
                     if not math.isnan(ref[0]) else None)
            rows.append([nl, m, r.d, r.delta_odd, r.delta_even, r.exact_odd, r.exact_even,
                         given.delta_odd if given else math.nan,
                         given.delta_even if given else math.nan, *ref, ""])
        except RLandauError as exc:
            failures += 1
            rows.append([nl, m, *([math.nan] * 7), *ref, f"{type(exc).__name__}: {exc}"])
    out.write("defects", ["N_l", "M", "d_fit_a0", "delta_odd", "delta_even", "exact_odd",
                          "exact_even", "delta_odd_ref_d", "delta_even_ref_d", "ref_d_a0",
                          "ref_delta_odd", "ref_delta_even", "error"], rows)
    return failures


def cmd_lifetime(args, cfg: RunConfig, out: Writer) -> None:
    field = _field(cfg)
    qn = _qn(args, field, cfg)
    temps = tuple(args.T) if args.T else cfg.temperatures
    b = lifetime_budget(qn, field, temps, cfg.defects, cfg.mode, cfg.grid, cfg.decay)
    rows = [[c.final, c.omega, c.dipole.value, c.rate, c.mechanism, c.family]
            for c in b.channels]
    out.write("budget", ["final", "omega_rad_s", "dipole_a0", "A_s^-1", "mechanism", "family"],
              rows)
    summary = [[str(qn), T, b.gamma0_C, b.gamma0_L, b.gamma_bbr[T], b.tau(T)] for T in temps]
    out.write("lifetime", ["state", "T_K", "gamma0_C", "gamma0_L", "gamma_BBR", "tau_s"], summary)


def cmd_interaction(args, cfg: RunConfig, out: Writer) -> None:
    field = _field(cfg)
    qn = _qn(args, field, cfg)
    cc = cfg.channels
    theta = math.radians(args.theta) if args.theta is not None else cc.theta
    chans = enumerate_channels(qn, field, cc.max_defect_ghz, theta, cc.dnz_max, cc.resonance,
                               cfg.mode, cfg.grid)
    out.write("channels", ["psi_i", "psi_j", "N_zi", "N_zj", "combo", "d1_a0", "d2_a0",
                           "C3_GHz_um3", "C6_GHz_um6", "delta_GHz", "R_cr_um"],
              [[str(c.psi[0]), str(c.psi[1]), c.psi[0].N_z, c.psi[1].N_z, c.combo, c.d1, c.d2,
                c.c3, c.c6 if c.c6 is not None else math.nan, c.delta,
                c.r_cr if c.r_cr is not None else math.nan] for c in chans])
    rows = []
    for R in args.R:
        s = total_shift(qn, field, R, theta, channels=chans)
        att, rep = s.resonant
        rows.append([R, s.off_resonant, s.off_resonant_exact, s.resonant_c3, att, rep])
    out.write("shift", ["R_um", "U_offres_GHz", "U_offres_twolevel_GHz", "C3_resonant_GHz_um3",
                        "U_res_attractive_GHz", "U_res_repulsive_GHz"], rows)


def cmd_excite(args, cfg: RunConfig, out: Writer) -> None:
    omega = 2 * math.pi * args.rabi_mhz * 1e6
    times = np.linspace(0.0, args.t, args.samples) if args.t > 0 else np.array([0.0])
    det = None
    if args.drive_ghz is not None:
        det = ladder_detunings(args.Nz, args.drive_ghz, args.M_max, _field(cfg), mode=cfg.mode,
                               grid=cfg.grid)
    rows = []
    for t in times:
        st = ladder_evolve(omega, float(t), det, M_max=args.M_max if det is not None else None,
                           auto_extend=det is None)
        ref = coherent_populations(omega * t, st.M_max)
        for M, p in enumerate(st.populations):
            rows.append([float(t), M, float(p), float(ref[M])])
        if args.reverse:
            back = ladder_evolve(omega, float(t), det, initial=st, reverse=True,
                                 M_max=st.M_max, auto_extend=det is None)
            rows.append([float(t), "reversed_c0", float(back.populations[0]), 1.0])
    out.write("ladder", ["t_s", "M", "population", "resonant_poisson"], rows)


# ---------------------------------------------------------------- parser


def _add_state_flags(p):
    p.add_argument("--Nz", type=int)
    p.add_argument("--P", type=int, choices=(0, 1), default=0)
    p.add_argument("--Nl", type=int, default=0)
    p.add_argument("--M", type=int, default=0)
    p.add_argument("--ground", action="store_true",
                   help="use the axial ground state of (N_l, M) (also when --Nz is omitted)")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="rlandau", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"rlandau {__version__}")
    ap.add_argument("--config", type=Path, help="INI run configuration")
    ap.add_argument("--B", type=float, help="field in tesla (overrides the config)")
    ap.add_argument("--out", type=Path, help="output directory (overrides the config)")
    ap.add_argument("--format", choices=("csv", "json"), help="output format")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("state", help="wavefunctions and energy of one state")
    _add_state_flags(p)
    p.add_argument("--rho-max", type=float, default=8.0, help="transverse grid extent in rc")
    p.add_argument("--rho-points", type=int, default=801)

    p = sub.add_parser("defects", help="shift d and quantum defects per (N_l, M)")
    p.add_argument("--Nl", type=int, nargs="+")
    p.add_argument("--M", type=int, nargs="+")
    p.add_argument("--no-exact", action="store_true", help="skip the exact-potential columns")

    p = sub.add_parser("lifetime", help="decay budget and lifetimes")
    _add_state_flags(p)
    p.add_argument("--T", type=float, nargs="+", help="temperatures in K")

    p = sub.add_parser("interaction", help="pair channels and total shifts")
    _add_state_flags(p)
    p.add_argument("--R", type=float, nargs="+", default=[2.0, 3.0], help="separations in um")
    p.add_argument("--theta", type=float, help="angle to the field in degrees")

    p = sub.add_parser("excite", help="sigma-driven M-ladder time series")
    p.add_argument("--rabi-mhz", type=float, default=1.0, help="ladder Rabi frequency / 2 pi")
    p.add_argument("--t", type=float, default=1e-6, help="final time in s")
    p.add_argument("--samples", type=int, default=11)
    p.add_argument("--reverse", action="store_true", help="append the polarization-reversal check")
    p.add_argument("--drive-ghz", type=float, help="drive frequency; enables solved detunings")
    p.add_argument("--Nz", type=int, default=100)
    p.add_argument("--M-max", type=int, default=12)
    return ap


def _config(args) -> RunConfig:
    cfg = load_config(args.config) if args.config else RunConfig()
    over = {}
    if args.B is not None:
        over["B"] = args.B
    if args.out is not None:
        over["output_dir"] = args.out
    if args.format is not None:
        over["output_format"] = args.format
    if over:
        cfg = replace(cfg, **over)
    return cfg


COMMANDS = {"state": cmd_state, "defects": cmd_defects, "lifetime": cmd_lifetime,
            "interaction": cmd_interaction, "excite": cmd_excite}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        out = Writer(cfg, args.command, argv)
        COMMANDS[args.command](args, cfg, out)
    except ConfigError as exc:
        print(f"rlandau: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except PhysicsError as exc:
        print(f"rlandau: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PHYSICS
    for p in out.written:
        print(p)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
