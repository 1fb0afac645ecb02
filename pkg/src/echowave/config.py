"""Run configuration: INI-style files, overrides, hashing, builders.

Sections and keys (all values plain text):

[coefficient]
  preset   = paper | ramp | custom        (default paper)
  left     = constant value below the first breakpoint      (custom)
  b0       = positive lower bound                           (custom)
  piece.N  = "<breakpoint> : c0 c1 c2 c3" (ordered, N = 1, 2, ...)

[mollifier]
  epsilon   = mollifier scale (default 0.01)
  sharpness = bump sharpness s in exp(s/(t^2-1)) (default 1.0)

[grid]
  xmin, xmax = domain ends
  dx         = node spacing (or n = node count)
  periodic   = true | false (default true)

[pulse]
  kind   = gaussian | lorentzian
  center = gaussian center (default 0)
  width  = gaussian width (default 0.3)
  scale  = lorentzian scale

[run]
  dt             = time step
  t_end          = final time
  snapshot_times = comma-separated times
  diag_stride    = record diagnostics every k-th step (default 10)
  cfl_max        = dt/dx guard (default 0.4)
  cone_guard     = error | warn | off (default warn)

[experiment]
  kind           = simulate|sweep|moderateness|sensitivity|echo|decay|dashboard
  eps_list       = comma-separated epsilons
  compare_time   = comparison time for sweeps (default 60)
  derivative_order = k for moderateness scans (default 1)
  sharpness2     = second mollifier sharpness for sensitivity (default 2.0)
  window         = "t0,t1" scan window (default 0,20)
  jump_time      = coefficient jump time for echo tracking (default 5)

[impedance]   (transform subcommand only)
  density.left / density.piece.N, speed.left / speed.piece.N, z
"""

from __future__ import annotations

import configparser
import hashlib
import os

from .coefficient import BreakpointFunction, ImpedanceProfile, PiecewisePolynomial, make_paper_coefficient, make_smooth_ramp
from .errors import ConfigError
from .grid import Grid1D
from .initial_data import GaussianPulse, LorentzianPulse
from .solver_fd import SolverConfig

SCHEMA_VERSION = "1"

_VALID_KEYS = {
    "coefficient": {"preset", "left", "b0"},
    "mollifier": {"epsilon", "sharpness"},
    "grid": {"xmin", "xmax", "dx", "n", "periodic"},
    "pulse": {"kind", "center", "width", "scale"},
    "run": {"dt", "t_end", "snapshot_times", "diag_stride", "cfl_max", "cone_guard"},
    "experiment": {"kind", "eps_list", "compare_time", "derivative_order", "sharpness2", "window", "jump_time"},
    "impedance": {"density.left", "speed.left", "z"},
}


def _check_key(section: str, key: str):
    valid = _VALID_KEYS.get(section)
    if valid is None:
        raise ConfigError(f"unknown config section [{section}]; valid: {sorted(_VALID_KEYS)}")
    if key in valid:
        return
    prefixes = ("piece.",) if section == "coefficient" else ("density.piece.", "speed.piece.") if section == "impedance" else ()
    if any(key.startswith(p) for p in prefixes):
        return
    raise ConfigError(f"unknown key {section}.{key}; valid keys: {sorted(valid)}" + (f" plus {list(prefixes)}N" if prefixes else ""))


def load_config(path) -> dict[str, dict[str, str]]:
    if not os.path.exists(path):
        raise ConfigError(f"config file not found: {path}")
    parser = configparser.ConfigParser()
    parser.optionxform = str
    parser.read(path)
    cfg: dict[str, dict[str, str]] = {}
    for section in parser.sections():
        for key, value in parser.items(section):
            _check_key(section, key)
            cfg.setdefault(section, {})[key] = value.strip()
    return cfg


def apply_overrides(cfg: dict, overrides) -> dict:
    out = {s: dict(kv) for s, kv in cfg.items()}
    for item in overrides:
        if "=" not in item:
            raise ConfigError(f"override must look like section.key=value, got: {item}")
        dotted, value = item.split("=", 1)
        if "." not in dotted:
            raise ConfigError(f"override key must be section.key, got: {dotted}")
        section, key = dotted.split(".", 1)
        _check_key(section, key)
        out.setdefault(section, {})[key] = value.strip()
    return out


def config_hash(cfg: dict) -> str:
    lines = sorted(f"{s}.{k}={v}" for s, kv in cfg.items() for k, v in kv.items())
    return hashlib.sha256("\n".join(lines).encode()).hexdigest()[:12]


def write_config(cfg: dict, path):
    parser = configparser.ConfigParser()
    parser.optionxform = str
    for section in sorted(cfg):
        parser[section] = dict(sorted(cfg[section].items()))
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w") as fh:
        parser.write(fh)


def _get(cfg: dict, section: str, key: str, default=None, required=False) -> str | None:
    value = cfg.get(section, {}).get(key)
    if value is None:
        if required:
            raise ConfigError(f"missing required key {section}.{key}")
        return default
    return value


def _float(cfg, section, key, default=None, required=False) -> float | None:
    raw = _get(cfg, section, key, None, required)
    if raw is None:
        return default
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"{section}.{key} must be a number, got: {raw}") from None


def _float_list(raw: str) -> list[float]:
    return [float(tok) for tok in raw.replace(";", ",").split(",") if tok.strip()]


def _parse_pieces(kv: dict[str, str], prefix: str) -> list[tuple[float, tuple[float, ...]]]:
    entries = []
    for key, value in kv.items():
        if not key.startswith(prefix):
            continue
        idx = int(key[len(prefix):])
        if ":" not in value:
            raise ConfigError(f"{prefix}{idx} must look like '<breakpoint> : c0 c1 ...'")
        bp_raw, coeff_raw = value.split(":", 1)
        coeffs = tuple(float(tok) for tok in coeff_raw.split())
        entries.append((idx, float(bp_raw), coeffs))
    entries.sort()
    return [(bp, coeffs) for _, bp, coeffs in entries]


def build_coefficient(cfg: dict) -> BreakpointFunction:
    preset = _get(cfg, "coefficient", "preset", "paper")
    if preset == "paper":
        return make_paper_coefficient()
    if preset == "ramp":
        return make_smooth_ramp()
    if preset != "custom":
        raise ConfigError(f"coefficient.preset must be paper|ramp|custom, got: {preset}")
    pieces = _parse_pieces(cfg.get("coefficient", {}), "piece.")
    if not pieces:
        raise ConfigError("custom coefficient needs at least one coefficient.piece.N entry")
    left = _float(cfg, "coefficient", "left", pieces[0][1][0] if pieces[0][1] else 1.0)
    b0 = _float(cfg, "coefficient", "b0", required=True)
    poly = PiecewisePolynomial(
        breakpoints=tuple(bp for bp, _ in pieces),
        pieces=tuple(coeffs for _, coeffs in pieces),
        left_extension=left,
    )
    return BreakpointFunction(poly=poly, lower_bound=b0)


def build_pulse(cfg: dict):
    kind = _get(cfg, "pulse", "kind", "gaussian")
    if kind == "gaussian":
        return GaussianPulse(center=_float(cfg, "pulse", "center", 0.0), width=_float(cfg, "pulse", "width", 0.3))
    if kind == "lorentzian":
        return LorentzianPulse(scale=_float(cfg, "pulse", "scale", required=True))
    raise ConfigError(f"pulse.kind must be gaussian|lorentzian, got: {kind}")


def build_grid(cfg: dict, ci_factor: int = 1) -> Grid1D:
    xmin = _float(cfg, "grid", "xmin", required=True)
    xmax = _float(cfg, "grid", "xmax", required=True)
    periodic_raw = _get(cfg, "grid", "periodic", "true").lower()
    if periodic_raw not in ("true", "false", "1", "0", "yes", "no"):
        raise ConfigError(f"grid.periodic must be a boolean, got: {periodic_raw}")
    periodic = periodic_raw in ("true", "1", "yes")
    dx = _float(cfg, "grid", "dx")
    n_raw = _get(cfg, "grid", "n")
    if dx is None and n_raw is None:
        raise ConfigError("grid needs either grid.dx or grid.n")
    if dx is not None:
        return Grid1D.from_spacing(xmin, xmax, dx * ci_factor, periodic)
    return Grid1D(xmin, xmax, max(8, int(n_raw) // ci_factor), periodic)


def build_solver_config(cfg: dict, ci_factor: int = 1) -> SolverConfig:
    grid = build_grid(cfg, ci_factor)
    snapshot_raw = _get(cfg, "run", "snapshot_times", "")
    try:
        return SolverConfig(
            grid=grid,
            dt=_float(cfg, "run", "dt", required=True) * ci_factor,
            t_end=_float(cfg, "run", "t_end", required=True),
            epsilon=_float(cfg, "mollifier", "epsilon", 0.01),
            coefficient=build_coefficient(cfg),
            pulse=build_pulse(cfg),
            snapshot_times=tuple(_float_list(snapshot_raw)),
            diag_stride=int(_get(cfg, "run", "diag_stride", "10")),
            cfl_max=_float(cfg, "run", "cfl_max", 0.4),
            cone_guard=_get(cfg, "run", "cone_guard", "warn"),
            mollifier_sharpness=_float(cfg, "mollifier", "sharpness", 1.0),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def build_impedance(cfg: dict) -> tuple[ImpedanceProfile, float]:
    kv = cfg.get("impedance", {})
    if not kv:
        raise ConfigError("transform needs an [impedance] section")

    def piecewise(prefix: str) -> PiecewisePolynomial:
        pieces = _parse_pieces(kv, f"{prefix}.piece.")
        if not pieces:
            raise ConfigError(f"impedance needs {prefix}.piece.N entries")
        left = float(kv.get(f"{prefix}.left", pieces[0][1][0]))
        return PiecewisePolynomial(
            breakpoints=tuple(bp for bp, _ in pieces),
            pieces=tuple(coeffs for _, coeffs in pieces),
            left_extension=left,
        )

    z = kv.get("z")
    if z is None:
        raise ConfigError("missing required key impedance.z")
    return ImpedanceProfile(density=piecewise("density"), wave_speed=piecewise("speed")), float(z)


def eps_list(cfg: dict, default=(0.2, 0.1, 0.05, 0.02, 0.01)) -> list[float]:
    raw = _get(cfg, "experiment", "eps_list")
    return _float_list(raw) if raw else list(default)
