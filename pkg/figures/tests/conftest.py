"""Synthetic run directories with the documented CSV layouts."""

import numpy as np
import pytest

from figutil import DELTA_SCALES, EPS_LIST, MONTAGE_TIMES, write_csv


def _write_effective(run_dir, pulse_kind="gaussian", scale=None):
    lines = ["[pulse]", f"kind = {pulse_kind}"]
    if scale is not None:
        lines.append(f"scale = {scale:g}")
    (run_dir / "effective.cfg").write_text("\n".join(lines) + "\n")


def _write_snapshot(path, center):
    x = np.linspace(-10.0, 10.0, 200)
    u = np.exp(-((x - center) ** 2))
    write_csv(path, ["x", "p", "u"], zip(x, u, u))


@pytest.fixture
def run_root(tmp_path):
    """Seven synthetic run directories, one per figure."""
    root = tmp_path / "runs"

    dash = root / "run_dash"
    dash.mkdir(parents=True)
    _write_effective(dash)
    t = np.linspace(0.0, 20.0, 100)
    b = np.where(t < 5.0, 1.0, t / 10.0 + 1.5)
    write_csv(dash / "coefficient.csv", ["t", "b", "b_eps"], zip(t, b, b))

    sweep = root / "run_sweep"
    sweep.mkdir()
    _write_effective(sweep)
    write_csv(sweep / "convergence.csv", ["eps_hi", "eps_lo", "l2_difference", "observed_order"], [[0.2, 0.1, 0.01, 1.0]])
    for e in EPS_LIST:
        _write_snapshot(sweep / f"snap_t60_eps{e:g}.csv", center=0.0)

    sim = root / "run_sim"
    sim.mkdir()
    _write_effective(sim)
    for snap_t in MONTAGE_TIMES:
        _write_snapshot(sim / f"snap_t{snap_t:g}_eps0.01.csv", center=snap_t - 5.0)

    decay = root / "run_decay"
    decay.mkdir()
    _write_effective(decay)
    t = np.linspace(8.0, 60.0, 80)
    for e in EPS_LIST:
        write_csv(decay / f"decay_series_eps{e:g}.csv", ["t", "l2_u", "l2_u_times_b"], zip(t, 1.0 / t, np.ones_like(t)))

    for scale in DELTA_SCALES:
        d = root / f"run_delta_{scale:g}"
        d.mkdir()
        _write_effective(d, pulse_kind="lorentzian", scale=scale)
        (d / "echo.csv").write_text("epsilon,birth_time,amp_ratio,width_ratio,direction\n0.01,5.2,0.4,0.8,-1\n")
        for snap_t in (7.8, 8.0):
            _write_snapshot(d / f"snap_t{snap_t:g}_eps0.01.csv", center=snap_t - 5.0)

    return root
