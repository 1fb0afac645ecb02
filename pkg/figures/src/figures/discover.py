"""Map simulator run directories to figure specifications.

A run directory is any directory containing an `effective.cfg`. Each one is
classified by the CSV files it holds:

  coefficient.csv                      -> figure 1 (2 curves: b, b_eps)
  convergence.csv + snap_*.csv         -> figure 2 (one curve per epsilon)
  >= 13 snapshots in t = 4.8 .. 7.2    -> figure 3 (13 curves)
  decay_series_eps*.csv                -> figure 4 (one curve per epsilon)
  lorentzian pulse + snapshots         -> figure 5/6/7 by scale (1 curve, last time)
"""

from __future__ import annotations

import configparser
import os
import re
from pathlib import Path

from .spec import FIGURE_COUNT, FigureError, FigureSpec

__all__ = ["OUTPUT_NAMES", "build_specs"]

_SNAP_RE = re.compile(r"^snap_t(?P<t>[0-9.eE+-]+)_eps(?P<eps>[0-9.eE+-]+)\.csv$")

_MONTAGE_WINDOW = (4.8, 7.2)
_MONTAGE_CURVES = 13
# snapshot filenames carry the actual step time, which can sit up to half a
# snapshot spacing off the nominal 0.2 grid
_MONTAGE_TOL = 0.1

_DELTA_FIGURES = {0.05: 5, 0.03: 6, 0.01: 7}

OUTPUT_NAMES = {
    1: "fig1_coefficient.png",
    2: "fig2_epsilon_comparison.png",
    3: "fig3_splitting_montage.png",
    4: "fig4_decay.png",
    5: "fig5_delta_e0.05.png",
    6: "fig6_delta_e0.03.png",
    7: "fig7_delta_e0.01.png",
}


def _snapshots(run_dir: Path) -> list[tuple[float, float, Path]]:
    """(time, epsilon, path) triples, sorted by time then epsilon."""
    out = []
    for p in run_dir.iterdir():
        m = _SNAP_RE.match(p.name)
        if m:
            out.append((float(m.group("t")), float(m.group("eps")), p))
    return sorted(out)


def _pulse(run_dir: Path) -> tuple[str, float | None]:
    cfg = configparser.ConfigParser()
    cfg.read(run_dir / "effective.cfg")
    if not cfg.has_section("pulse"):
        return "", None
    kind = cfg.get("pulse", "kind", fallback="")
    scale = cfg.getfloat("pulse", "scale", fallback=None)
    return kind, scale


def _classify(run_dir: Path, out_dir: str) -> FigureSpec | None:
    snaps = _snapshots(run_dir)
    if (run_dir / "coefficient.csv").exists():
        return FigureSpec(1, (str(run_dir / "coefficient.csv"),), os.path.join(out_dir, OUTPUT_NAMES[1]), labels=("b", "b_eps"))
    if (run_dir / "convergence.csv").exists() and snaps:
        by_eps = sorted(snaps, key=lambda s: -s[1])
        return FigureSpec(
            2,
            tuple(str(p) for _, _, p in by_eps),
            os.path.join(out_dir, OUTPUT_NAMES[2]),
            labels=tuple(f"eps={e:g}" for _, e, _ in by_eps),
        )
    series = sorted(run_dir.glob("decay_series_eps*.csv"), key=lambda p: -float(p.stem.removeprefix("decay_series_eps")))
    if series:
        return FigureSpec(
            4,
            tuple(str(p) for p in series),
            os.path.join(out_dir, OUTPUT_NAMES[4]),
            labels=tuple(f"eps={p.stem.removeprefix('decay_series_eps')}" for p in series),
        )
    kind, scale = _pulse(run_dir)
    if kind == "lorentzian" and scale in _DELTA_FIGURES and snaps:
        fid = _DELTA_FIGURES[scale]
        t, _, path = snaps[-1]
        return FigureSpec(fid, (str(path),), os.path.join(out_dir, OUTPUT_NAMES[fid]), labels=(f"t={t:g}",))
    montage = [(t, p) for t, _, p in snaps if _MONTAGE_WINDOW[0] - _MONTAGE_TOL <= t <= _MONTAGE_WINDOW[1] + _MONTAGE_TOL]
    if len(montage) >= _MONTAGE_CURVES:
        return FigureSpec(
            3,
            tuple(str(p) for _, p in montage),
            os.path.join(out_dir, OUTPUT_NAMES[3]),
            labels=tuple(f"t={t:g}" for t, _ in montage),
        )
    return None


def build_specs(run_root, out_dir) -> dict[int, FigureSpec]:
    """Scan `run_root` recursively and return the figures it can supply."""
    root = Path(run_root)
    if not root.is_dir():
        raise FigureError(f"run directory {run_root} does not exist")
    specs: dict[int, FigureSpec] = {}
    for cfg_path in sorted(root.rglob("effective.cfg")):
        spec = _classify(cfg_path.parent, out_dir)
        if spec is not None and spec.figure_id not in specs:
            specs[spec.figure_id] = spec
    return specs


def require_all(specs: dict[int, FigureSpec], run_root) -> list[FigureSpec]:
    missing = sorted(set(range(1, FIGURE_COUNT + 1)) - specs.keys())
    if missing:
        raise FigureError(f"no run directory under {run_root} supplies figure(s) {', '.join(map(str, missing))}")
    return [specs[i] for i in range(1, FIGURE_COUNT + 1)]
