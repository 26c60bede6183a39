"""Run configuration: a sectioned INI file holding every physics input of a batch run.

Schema
------
[field]        B (tesla), temperatures (kelvin, space separated)
[species]      name, lowest_n (lowest n of the s p d f valence series)
[defects]      ``n l = d0 [d2]``; ``n = *`` gives the Rydberg-Ritz series row
[grids]        mode, axial_step, zmax_factor, probes, nu_ref, nu_tol
[channels]     coulomb_n_max, bbr_window, bbr_window_max, bbr_rtol,
               max_defect_ghz, dnz_max, theta_deg, resonance, resonant_branch
[excitation]   dipole_5s_6p32, dipole_5s_6p12 (a0), tau_6p_ns, tau_5p_ns
[output]       directory, format (csv or json)

Every key is optional; missing keys take the defaults of the dataclasses below.
"""

from __future__ import annotations

import configparser
import hashlib
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .axial import EXACT, SHIFTED, AxialGridSpec
from .errors import ConfigError
from .hydrogenic import DefectTable
from .radiative import DecaySettings

FORMATS = ("csv", "json")
RESONANCE_MODES = ("landau", "exact")
BRANCHES = ("both", "attractive", "repulsive")


@dataclass(frozen=True)
class ChannelConfig:
    """Cutoffs of the pair-channel enumeration."""

    max_defect_ghz: float = 20.0
    dnz_max: int = 4
    theta_deg: float = 90.0
    resonance: str = "landau"
    resonant_branch: str = "both"

    @property
    def theta(self) -> float:
        return math.radians(self.theta_deg)


@dataclass(frozen=True)
class ExcitationConfig:
    dipole_5s_6p32: float = 0.528
    dipole_5s_6p12: float = 0.235
    tau_6p_ns: float = 129.0
    tau_5p_ns: float = 28.0


@dataclass(frozen=True)
class RunConfig:
    B: float = 2.5
    temperatures: tuple[float, ...] = (300.0, 70.0, 2.0)
    defects: DefectTable | None = None
    mode: str = EXACT
    grid: AxialGridSpec = AxialGridSpec()
    decay: DecaySettings = DecaySettings()
    channels: ChannelConfig = ChannelConfig()
    excitation: ExcitationConfig = ExcitationConfig()
    output_dir: Path = Path("out")
    output_format: str = "csv"
    source_text: str = field(default="", repr=False, compare=False)

    def __post_init__(self):
        if not (math.isfinite(self.B) and self.B > 0):
            raise ConfigError(f"B must be positive, got {self.B}")
        if any(not (math.isfinite(t) and t >= 0) for t in self.temperatures):
            raise ConfigError(f"temperatures must be >= 0, got {self.temperatures}")
        if self.output_format not in FORMATS:
            raise ConfigError(f"output format must be one of {FORMATS}, got {self.output_format!r}")
        if self.mode not in (EXACT, SHIFTED):
            raise ConfigError(f"mode must be {EXACT!r} or {SHIFTED!r}, got {self.mode!r}")
        if self.channels.resonance not in RESONANCE_MODES:
            raise ConfigError(f"resonance must be one of {RESONANCE_MODES}")
        if self.channels.resonant_branch not in BRANCHES:
            raise ConfigError(f"resonant_branch must be one of {BRANCHES}")

    @property
    def digest(self) -> str:
        """Short hash of the configuration text (or of the defaults when built in code)."""
        text = self.source_text or repr(
            {k: v for k, v in asdict(self).items() if k != "source_text"})
        return hashlib.sha256(text.encode()).hexdigest()[:16]


def _floats(text: str, what: str) -> tuple[float, ...]:
    try:
        return tuple(float(t) for t in text.split())
    except ValueError as exc:
        raise ConfigError(f"{what}: expected numbers, got {text!r}") from exc


def _get(sec, key, conv, default):
    if sec is None or key not in sec:
        return default
    raw = sec[key]
    try:
        return conv(raw)
    except ValueError as exc:
        raise ConfigError(f"[{sec.name}] {key}: cannot parse {raw!r}") from exc


def _parse_defects(sec, species: str, lowest_n) -> DefectTable | None:
    if sec is None:
        return None
    rows = []
    for key, value in sec.items():
        parts = key.split()
        if len(parts) != 2:
            raise ConfigError(f"[defects] key {key!r} must be 'n l'")
        try:
            n = None if parts[0] == "*" else int(parts[0])
            l = int(parts[1])
        except ValueError as exc:
            raise ConfigError(f"[defects] key {key!r} must be 'n l'") from exc
        vals = _floats(value, f"[defects] {key}")
        if len(vals) not in (1, 2):
            raise ConfigError(f"[defects] {key}: expected 'd0' or 'd0 d2'")
        rows.append((n, l, vals[0], vals[1] if len(vals) == 2 else 0.0))
    return DefectTable(species, tuple(rows), lowest_n)


def parse_config(text: str) -> RunConfig:
    """Build a ``RunConfig`` from INI text."""
    cp = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed configuration: {exc}") from exc
    sec = {name: cp[name] for name in cp.sections()}

    f = sec.get("field")
    B = _get(f, "B", float, 2.5)
    temps = _get(f, "temperatures", lambda s: _floats(s, "temperatures"), (300.0, 70.0, 2.0))

    sp = sec.get("species")
    species = _get(sp, "name", str, "H")
    lowest = _get(sp, "lowest_n", lambda s: tuple(int(v) for v in s.split()), (1, 2, 3, 4))
    defects = _parse_defects(sec.get("defects"), species, lowest)

    g = sec.get("grids")
    base = AxialGridSpec()
    grid = AxialGridSpec(
        step=_get(g, "axial_step", float, base.step),
        zmax_factor=_get(g, "zmax_factor", float, base.zmax_factor),
        probes=_get(g, "probes", int, base.probes),
        nu_ref=_get(g, "nu_ref", float, base.nu_ref),
        nu_tol=_get(g, "nu_tol", float, base.nu_tol),
    )
    mode = _get(g, "mode", str, EXACT)

    c = sec.get("channels")
    dd = DecaySettings()
    decay = DecaySettings(
        coulomb_n_max=_get(c, "coulomb_n_max", int, dd.coulomb_n_max),
        max_l=_get(c, "max_l", int, dd.max_l),
        bbr_window=_get(c, "bbr_window", int, dd.bbr_window),
        bbr_rtol=_get(c, "bbr_rtol", float, dd.bbr_rtol),
        bbr_window_max=_get(c, "bbr_window_max", int, dd.bbr_window_max),
    )
    cc = ChannelConfig()
    channels = ChannelConfig(
        max_defect_ghz=_get(c, "max_defect_ghz", float, cc.max_defect_ghz),
        dnz_max=_get(c, "dnz_max", int, cc.dnz_max),
        theta_deg=_get(c, "theta_deg", float, cc.theta_deg),
        resonance=_get(c, "resonance", str, cc.resonance),
        resonant_branch=_get(c, "resonant_branch", str, cc.resonant_branch),
    )

    e = sec.get("excitation")
    ec = ExcitationConfig()
    excitation = ExcitationConfig(**{k: _get(e, k, float, v) for k, v in asdict(ec).items()})

    o = sec.get("output")
    out_dir = Path(_get(o, "directory", str, "out"))
    fmt = _get(o, "format", str, "csv")
    return RunConfig(B, temps, defects, mode, grid, decay, channels, excitation, out_dir, fmt, text)


def load_config(path: str | Path) -> RunConfig:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read configuration {p}: {exc}") from exc
    return parse_config(text)
