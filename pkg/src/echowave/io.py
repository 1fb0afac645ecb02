"""CSV writers for snapshots, diagnostics and reports."""

from __future__ import annotations

import csv
import os

import numpy as np

__all__ = ["fmt", "write_csv", "write_snapshot", "write_diagnostics", "snapshot_filename"]


def fmt(v) -> str:
    """Floating-point text with 17 significant digits (round-trip safe)."""
    return format(float(v), ".17g")


def write_csv(path, header, rows):
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow([c if isinstance(c, str) else (fmt(c) if isinstance(c, (float, np.floating)) else c) for c in row])


def snapshot_filename(time: float, epsilon: float) -> str:
    return f"snap_t{time:g}_eps{epsilon:g}.csv"


def write_snapshot(path, x, p, u):
    write_csv(path, ["x", "p", "u"], zip(x.tolist(), p.tolist(), u.tolist()))


def write_diagnostics(path, trajectory):
    write_csv(
        path,
        ["t", "l2_u", "sup_u", "energy"],
        zip(trajectory.times.tolist(), trajectory.l2_u.tolist(), trajectory.sup_u.tolist(), trajectory.energy.tolist()),
    )
