"""Trajectory diagnostics: norms, peak detection, echo tracking, decay fits."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DiagnosticsError
from .grid import Grid1D

__all__ = [
    "PeakRecord",
    "EchoReport",
    "DecayFit",
    "UniformBoundSummary",
    "l2_norm",
    "sup_norm",
    "detect_peaks",
    "track_echo",
    "fit_decay",
    "uniform_bound_summary",
]


def l2_norm(field: np.ndarray, grid: Grid1D) -> float:
    """Discrete L2 norm; trapezoid end-weights on bounded grids."""
    w = np.asarray(field, dtype=float) ** 2
    if grid.periodic:
        return float(np.sqrt(np.sum(w) * grid.dx))
    return float(np.sqrt((np.sum(w) - 0.5 * (w[0] + w[-1])) * grid.dx))


def sup_norm(field: np.ndarray) -> float:
    return float(np.max(np.abs(field)))


@dataclass(frozen=True)
class PeakRecord:
    time: float
    location: float
    amplitude: float
    fwhm: float
    velocity: float = float("nan")


def _refine_peak(x: np.ndarray, a: np.ndarray, i: int, h: float) -> tuple[float, float]:
    """Quadratic sub-grid refinement through (i-1, i, i+1)."""
    n = len(a)
    if i == 0 or i == n - 1:
        return float(x[i]), float(a[i])
    denom = a[i - 1] - 2.0 * a[i] + a[i + 1]
    if denom >= -1e-300:
        return float(x[i]), float(a[i])
    shift = 0.5 * (a[i - 1] - a[i + 1]) / denom
    shift = float(np.clip(shift, -0.5, 0.5))
    amp = a[i] - 0.25 * (a[i - 1] - a[i + 1]) * shift
    return float(x[i] + shift * h), float(amp)


def _half_crossing(x: np.ndarray, a: np.ndarray, i: int, half: float, step: int) -> float | None:
    """Walk from peak index i in direction `step` to the half-height crossing
    (linear interpolation); stop at a valley if the pulse overlaps another."""
    j = i
    n = len(a)
    while 0 <= j + step < n:
        nxt = j + step
        if a[nxt] <= half:
            # interpolate between j and nxt
            frac = (a[j] - half) / (a[j] - a[nxt])
            return float(x[j] + frac * (x[nxt] - x[j]))
        if a[nxt] > a[j] and j != i:
            return float(x[j])  # rising again: bounded by the valley
        j = nxt
    return float(x[j])


def detect_peaks(field: np.ndarray, grid: Grid1D, min_amplitude_fraction: float = 0.05, time: float = float("nan")) -> list[PeakRecord]:
    """Local maxima of |field| above a fraction of the global max, with
    quadratic location refinement and linear-interpolated FWHM."""
    if not 0.0 < min_amplitude_fraction < 1.0:
        raise ValueError("min_amplitude_fraction must lie in (0, 1)")
    a = np.abs(np.asarray(field, dtype=float))
    gmax = a.max()
    if gmax <= 0.0:
        return []
    thresh = min_amplitude_fraction * gmax
    x = grid.nodes
    h = grid.dx
    interior = np.arange(1, len(a) - 1)
    is_peak = (a[interior] >= a[interior - 1]) & (a[interior] > a[interior + 1]) & (a[interior] > thresh)
    records = []
    for i in interior[is_peak]:
        loc, amp = _refine_peak(x, a, int(i), h)
        left = _half_crossing(x, a, int(i), 0.5 * amp, -1)
        right = _half_crossing(x, a, int(i), 0.5 * amp, +1)
        records.append(PeakRecord(time=time, location=loc, amplitude=amp, fwhm=max(right - left, h)))
    return records


@dataclass(frozen=True)
class EchoReport:
    birth_time: float
    primary_peak: PeakRecord
    echo_peak: PeakRecord
    amplitude_ratio: float
    width_ratio: float
    echo_direction: int

    def csv_row(self, epsilon: float) -> list:
        return [epsilon, self.birth_time, self.amplitude_ratio, self.width_ratio, self.echo_direction]


def track_echo(trajectory, jump_time: float, min_amplitude_fraction: float = 0.05, persistence: int = 3) -> EchoReport | None:
    """Report the secondary wave born at the coefficient jump, if any.

    The primary pulse is the per-snapshot global maximum.  The echo is the
    strongest peak strictly behind the point where the primary crossed the
    jump, and must recede from that point monotonically, opposite to the
    primary, over at least `persistence` consecutive snapshots up to the
    final one.  Dispersive stencil ripples trail the primary on the far
    side of the crossing point, so they never qualify.
    """
    snaps = trajectory.snapshots
    times = np.array([s[0] for s in snaps])
    if times[0] > jump_time or times[-1] < jump_time:
        raise DiagnosticsError("snapshots must bracket the jump time")
    near = (times >= jump_time - 0.6) & (times <= jump_time + 1.6)
    idx = np.flatnonzero(near)
    if idx.size >= 2 and np.max(np.diff(times[idx])) > 0.4 + 1e-9:
        raise DiagnosticsError("snapshot spacing exceeds 0.4 near the jump time")

    grid = trajectory.grid
    snapshot_peaks = [(float(t), detect_peaks(fp.u, grid, min_amplitude_fraction, time=float(t))) for t, fp in snaps]
    dt_snap = float(np.median(np.diff(times))) if len(times) > 1 else 1.0

    primaries = []
    for _, peaks in snapshot_peaks:
        if not peaks:
            return None
        primaries.append(max(peaks, key=lambda p: p.amplitude))
    locs = np.array([p.location for p in primaries])
    v_primary = float((locs[-1] - locs[0]) / (times[-1] - times[0]))
    if v_primary == 0.0:
        return None
    direction = 1.0 if v_primary > 0.0 else -1.0
    x_birth = float(np.interp(jump_time, times, locs))

    # strongest peak strictly behind the crossing point, per post-jump snapshot
    series: list[PeakRecord | None] = []
    for (t, peaks), prim in zip(snapshot_peaks, primaries):
        if t < jump_time:
            continue
        behind = [p for p in peaks if p is not prim and (p.location - x_birth) * direction < -grid.dx]
        series.append(max(behind, key=lambda p: p.amplitude) if behind else None)

    # longest suffix receding from the crossing point (walk backwards in time)
    suffix: list[PeakRecord] = []
    for p in reversed(series):
        if p is None:
            break
        if suffix and (p.location - suffix[-1].location) * direction <= 1e-12:
            break
        suffix.append(p)
    suffix.reverse()
    if len(suffix) < persistence:
        return None
    birth = suffix[0]
    if not jump_time - 2.0 * dt_snap <= birth.time <= jump_time + 2.0:
        return None
    v_echo = (suffix[-1].location - suffix[0].location) / (suffix[-1].time - suffix[0].time)
    if v_echo * v_primary >= 0.0:
        return None

    prim_last = primaries[-1]
    echo_last = suffix[-1]
    prim = PeakRecord(prim_last.time, prim_last.location, prim_last.amplitude, prim_last.fwhm, v_primary)
    ech = PeakRecord(echo_last.time, echo_last.location, echo_last.amplitude, echo_last.fwhm, v_echo)
    return EchoReport(
        birth_time=birth.time,
        primary_peak=prim,
        echo_peak=ech,
        amplitude_ratio=ech.amplitude / prim.amplitude,
        width_ratio=ech.fwhm / prim.fwhm,
        echo_direction=int(np.sign(ech.velocity)),
    )


@dataclass(frozen=True)
class DecayFit:
    slope_time: float
    intercept: float
    slope_coefficient: float | None = None

    def csv_row(self, epsilon: float) -> list:
        sb = "" if self.slope_coefficient is None else self.slope_coefficient
        return [epsilon, self.slope_time, sb, self.intercept]


def fit_decay(times, values, coefficient=None) -> DecayFit:
    """Least-squares slope of log(value) against log(time), and optionally
    against log(b(t)) for a decay-vs-coefficient comparison."""
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    if times.size < 4:
        raise ValueError("need at least 4 samples to fit a decay")
    if np.any(values <= 0.0) or np.any(times <= 0.0):
        raise ValueError("decay fit requires positive times and values")
    slope_t, intercept = np.polyfit(np.log(times), np.log(values), 1)
    slope_b = None
    if coefficient is not None:
        bvals = np.asarray([float(coefficient(t)) for t in times])
        logs = np.log(bvals)
        # a (nearly) constant coefficient makes the fit singular
        if np.ptp(logs) > 1e-12:
            slope_b = float(np.polyfit(logs, np.log(values), 1)[0])
    return DecayFit(slope_time=float(slope_t), intercept=float(intercept), slope_coefficient=slope_b)


@dataclass(frozen=True)
class UniformBoundSummary:
    epsilons: tuple[float, ...]
    max_l2: tuple[float, ...]
    spread: float


def uniform_bound_summary(trajectories) -> UniformBoundSummary:
    """Max-over-time L2(u) per epsilon and its relative spread."""
    if len(trajectories) < 2:
        raise ValueError("need at least 2 trajectories")
    ref = trajectories[0]
    for tr in trajectories[1:]:
        if tr.grid != ref.grid:
            raise ValueError("trajectories must share the grid")
        if tr.config is not None and ref.config is not None:
            if (tr.config.coefficient, tr.config.pulse, tr.config.t_end) != (
                ref.config.coefficient,
                ref.config.pulse,
                ref.config.t_end,
            ):
                raise ValueError("trajectories must differ only in epsilon")
    eps = tuple(tr.epsilon for tr in trajectories)
    maxima = tuple(float(np.max(tr.l2_u)) for tr in trajectories)
    spread = (max(maxima) - min(maxima)) / min(maxima)
    return UniformBoundSummary(epsilons=eps, max_l2=maxima, spread=spread)
