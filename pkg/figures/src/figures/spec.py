"""Figure specifications and the renderer.

Each figure id maps to one plot of the study: the coefficient overlay (1),
the cross-epsilon comparison at the long horizon (2), the pulse-splitting
montage (3), the decay curves (4) and the three near-delta snapshots (5-7).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["FIGURE_COUNT", "FIGURE_TITLES", "FigureError", "FigureSpec", "RenderResult", "read_columns", "render"]

FIGURE_COUNT = 7

FIGURE_TITLES = {
    1: "coefficient b and its regularization",
    2: "solution across epsilon at the long horizon",
    3: "pulse splitting at the coefficient jump",
    4: "decay of the L2 norm per epsilon",
    5: "near-delta pulse, scale 0.05",
    6: "near-delta pulse, scale 0.03",
    7: "near-delta pulse, scale 0.01",
}


class FigureError(Exception):
    """Missing or ill-formed input; the message names the file and column."""


@dataclass(frozen=True)
class FigureSpec:
    figure_id: int
    csv_paths: tuple[str, ...]
    out_path: str
    labels: tuple[str, ...] = ()
    xlim: tuple[float, float] | None = None
    ylim: tuple[float, float] | None = None


@dataclass(frozen=True)
class RenderResult:
    figure_id: int
    out_path: str
    curve_count: int


def read_columns(path, columns) -> list[np.ndarray]:
    """Read named float columns from a CSV, never modifying the file."""
    try:
        fh = open(path, newline="")
    except OSError as exc:
        raise FigureError(f"cannot read {path}: {exc}") from exc
    with fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise FigureError(f"{path}: empty CSV")
        for c in columns:
            if c not in header:
                raise FigureError(f"{path}: missing column '{c}' (header: {','.join(header)})")
        idx = [header.index(c) for c in columns]
        rows = []
        for lineno, row in enumerate(reader, start=2):
            try:
                rows.append([float(row[i]) for i in idx])
            except (ValueError, IndexError) as exc:
                raise FigureError(f"{path}: bad value on line {lineno} (columns {','.join(columns)}): {exc}") from exc
    if not rows:
        raise FigureError(f"{path}: no data rows")
    return [np.array(col) for col in zip(*rows)]


def _labels(spec: FigureSpec) -> tuple[str, ...]:
    if len(spec.labels) == len(spec.csv_paths):
        return spec.labels
    return tuple(str(p).rsplit("/", 1)[-1].removesuffix(".csv") for p in spec.csv_paths)


def render(spec: FigureSpec) -> RenderResult:
    """Render one figure to a raster image; deterministic given the inputs."""
    if spec.figure_id not in FIGURE_TITLES:
        raise FigureError(f"unknown figure id {spec.figure_id} (valid: 1-{FIGURE_COUNT})")
    if not spec.csv_paths:
        raise FigureError(f"figure {spec.figure_id}: no input CSVs")
    labels = _labels(spec)
    fig, ax = plt.subplots(figsize=(9, 5), dpi=130)
    try:
        if spec.figure_id == 1:
            t, b, b_eps = read_columns(spec.csv_paths[0], ("t", "b", "b_eps"))
            ax.plot(t, b, label="b", linewidth=1.8)
            ax.plot(t, b_eps, label="b_eps", linewidth=1.2, linestyle="--")
            ax.set_xlabel("t")
            ax.set_ylabel("coefficient")
        elif spec.figure_id == 4:
            for path, label in zip(spec.csv_paths, labels):
                t, l2 = read_columns(path, ("t", "l2_u"))
                ax.plot(t, l2, label=label, linewidth=1.0)
            ax.set_xlabel("t")
            ax.set_ylabel("L2(u)")
        else:
            for path, label in zip(spec.csv_paths, labels):
                x, u = read_columns(path, ("x", "u"))
                ax.plot(x, u, label=label, linewidth=0.9)
            ax.set_xlabel("x")
            ax.set_ylabel("u")
        if spec.xlim is not None:
            ax.set_xlim(spec.xlim)
        if spec.ylim is not None:
            ax.set_ylim(spec.ylim)
        ax.set_title(FIGURE_TITLES[spec.figure_id])
        ax.legend(fontsize=7, ncol=2)
        curve_count = len(ax.get_lines())
        fig.savefig(spec.out_path)
    finally:
        plt.close(fig)
    return RenderResult(figure_id=spec.figure_id, out_path=spec.out_path, curve_count=curve_count)
