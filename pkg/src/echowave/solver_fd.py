"""Physical-space solver: FD4 in space, classical RK4 in time.

Solves the first-order system p_t = -b_eps(t) u_x, u_t = -(1/b_eps(t)) p_x
with p(0, x) = u(0, x) = f(x), which carries the velocity datum
u_t(0) = -f'/b_eps(0) implicitly.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .coefficient import BreakpointFunction
from .diagnostics import l2_norm, sup_norm
from .errors import ConfigError, InstabilityError
from .grid import Grid1D
from .initial_data import PulseSpec, sample_u0
from .mollifier import Mollifier, RegularizedCoefficient, bump_mollifier, regularize

__all__ = [
    "FieldPair",
    "SolverConfig",
    "Trajectory",
    "fd4_derivative",
    "system_rhs",
    "rk4_step",
    "run",
]


@dataclass(frozen=True)
class FieldPair:
    """Discrete state of the first-order system: traction-like p, velocity-like u."""

    p: np.ndarray
    u: np.ndarray

    def __post_init__(self):
        if self.p.shape != self.u.shape:
            raise ValueError("p and u must have the same shape")


@dataclass(frozen=True)
class SolverConfig:
    grid: Grid1D
    dt: float
    t_end: float
    epsilon: float
    coefficient: BreakpointFunction
    pulse: PulseSpec
    snapshot_times: tuple[float, ...] = ()
    diag_stride: int = 10
    cfl_max: float = 0.4
    cone_guard: str = "warn"  # "error" | "warn" | "off"
    mollifier_sharpness: float = 1.0

    def __post_init__(self):
        if self.dt <= 0.0:
            raise ConfigError("run.dt must be positive")
        if self.t_end < 0.0:
            raise ConfigError("run.t_end must be non-negative")
        if self.diag_stride < 1:
            raise ConfigError("run.diag_stride must be >= 1")
        if self.cone_guard not in ("error", "warn", "off"):
            raise ConfigError("run.cone_guard must be one of error|warn|off")

    @classmethod
    def from_cfl(cls, grid: Grid1D, cfl: float, **kwargs) -> "SolverConfig":
        return cls(grid=grid, dt=cfl * grid.dx, **kwargs)

    def scaled(self, factor: int) -> "SolverConfig":
        """Coarsen dx and dt by an integer factor (CI mode)."""
        g = self.grid
        grid = Grid1D(g.xmin, g.xmax, max(8, g.n // factor), g.periodic)
        return replace(self, grid=grid, dt=self.dt * factor)


@dataclass(frozen=True)
class Trajectory:
    """Snapshots plus diagnostic time series of a single run."""

    grid: Grid1D
    epsilon: float
    snapshots: tuple[tuple[float, FieldPair], ...]
    times: np.ndarray
    l2_u: np.ndarray
    sup_u: np.ndarray
    energy: np.ndarray
    config: SolverConfig | None = None
    warnings: tuple[str, ...] = field(default=())

    def snapshot_at(self, t: float) -> tuple[float, FieldPair]:
        """Snapshot closest to the requested time."""
        idx = int(np.argmin([abs(s[0] - t) for s in self.snapshots]))
        return self.snapshots[idx]


_INTERIOR = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0
# fourth-order one-sided first-derivative rows for the two boundary layers
_EDGE0 = np.array([-25.0, 48.0, -36.0, 16.0, -3.0]) / 12.0
_EDGE1 = np.array([-3.0, -10.0, 18.0, -6.0, 1.0]) / 12.0


def fd4_derivative(f: np.ndarray, grid: Grid1D) -> np.ndarray:
    """Fourth-order first derivative; periodic wrap or one-sided edges."""
    n = grid.n
    if n < 8:
        raise ValueError("grid needs at least 8 nodes")
    h = grid.dx
    f = np.asarray(f, dtype=float)
    out = np.empty_like(f)
    if grid.periodic:
        fp1 = np.roll(f, -1)
        fp2 = np.roll(f, -2)
        fm1 = np.roll(f, 1)
        fm2 = np.roll(f, 2)
        np.subtract(fp1, fm1, out=out)
        out *= 8.0
        out += fm2
        out -= fp2
        out /= 12.0 * h
        return out
    out[2:-2] = (f[:-4] - 8.0 * f[1:-3] + 8.0 * f[3:-1] - f[4:]) / (12.0 * h)
    out[0] = np.dot(_EDGE0, f[:5]) / h
    out[1] = np.dot(_EDGE1, f[:5]) / h
    out[-1] = -np.dot(_EDGE0, f[-5:][::-1]) / h
    out[-2] = -np.dot(_EDGE1, f[-5:][::-1]) / h
    return out


def system_rhs(state: FieldPair, t: float, coeff: RegularizedCoefficient, grid: Grid1D) -> FieldPair:
    b = coeff.b_eps(t)
    return FieldPair(p=-b * fd4_derivative(state.u, grid), u=-(1.0 / b) * fd4_derivative(state.p, grid))


def rk4_step(state: FieldPair, t: float, dt: float, rhs) -> FieldPair:
    """One classical RK4 step; rhs(state, t) -> FieldPair."""
    if dt == 0.0:
        raise ValueError("dt must be nonzero")
    k1 = rhs(state, t)
    s2 = FieldPair(state.p + 0.5 * dt * k1.p, state.u + 0.5 * dt * k1.u)
    k2 = rhs(s2, t + 0.5 * dt)
    s3 = FieldPair(state.p + 0.5 * dt * k2.p, state.u + 0.5 * dt * k2.u)
    k3 = rhs(s3, t + 0.5 * dt)
    s4 = FieldPair(state.p + dt * k3.p, state.u + dt * k3.u)
    k4 = rhs(s4, t + dt)
    p = state.p + (dt / 6.0) * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p)
    u = state.u + (dt / 6.0) * (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u)
    for idx, arr in enumerate((k1.u, k2.u, k3.u, k4.u)):
        if not np.all(np.isfinite(arr)):
            raise InstabilityError(f"non-finite values in RK4 stage {idx + 1}", time=t)
    return FieldPair(p, u)


def _cone_check(config: SolverConfig) -> list[str]:
    pulse = config.pulse
    half = getattr(pulse, "half_support", float("inf"))
    if not np.isfinite(half):
        return []
    g = config.grid
    left = pulse.center - config.t_end - half
    right = pulse.center + config.t_end + half
    messages = []
    if left < g.xmin or right > g.xmax:
        kind = "wraps around the periodic domain" if g.periodic else "reaches the boundary stencils"
        messages.append(
            f"domain of dependence [{left:.3g}, {right:.3g}] {kind} [{g.xmin}, {g.xmax}] before t_end={config.t_end}"
        )
    return messages


def _energy(p: np.ndarray, u: np.ndarray, grid: Grid1D) -> float:
    w = p * p + u * u
    if grid.periodic:
        return float(np.sum(w) * grid.dx)
    return float((np.sum(w) - 0.5 * (w[0] + w[-1])) * grid.dx)


def run(config: SolverConfig, mollifier: Mollifier | None = None) -> Trajectory:
    """Advance the system from t = 0 to t_end; deterministic given config."""
    g = config.grid
    dx = g.dx
    if config.dt / dx > config.cfl_max + 1e-12:
        raise ConfigError(
            f"run.dt violates the CFL guard: dt/dx = {config.dt / dx:.4g} > cfl_max = {config.cfl_max}"
        )
    warnings_ = _cone_check(config)
    if warnings_ and config.cone_guard == "error":
        raise ConfigError(warnings_[0])
    if config.cone_guard == "off":
        warnings_ = []

    if mollifier is None:
        mollifier = bump_mollifier(sharpness=config.mollifier_sharpness)
    coeff = regularize(config.coefficient, mollifier, config.epsilon)

    n_steps = int(round(config.t_end / config.dt))
    dt = config.dt
    step_times = dt * np.arange(n_steps + 1)
    b_full = coeff.b_eps_many(step_times)
    b_half = coeff.b_eps_many(step_times[:-1] + 0.5 * dt) if n_steps else np.empty(0)

    u = sample_u0(config.pulse, g).astype(float)
    p = u.copy()

    snap_steps: dict[int, float] = {}
    for t_req in config.snapshot_times:
        snap_steps.setdefault(min(n_steps, max(0, int(round(t_req / dt)))), t_req)
    if not config.snapshot_times:
        snap_steps = {0: 0.0, n_steps: config.t_end}

    snapshots: list[tuple[float, FieldPair]] = []
    diag_t, diag_l2, diag_sup, diag_en = [], [], [], []

    def record_diag(i: int):
        diag_t.append(step_times[i])
        diag_l2.append(l2_norm(u, g))
        diag_sup.append(sup_norm(u))
        diag_en.append(_energy(p, u, g))

    def record_snap(i: int):
        snapshots.append((float(step_times[i]), FieldPair(p.copy(), u.copy())))

    if 0 in snap_steps or not config.snapshot_times:
        record_snap(0)
    record_diag(0)

    deriv = fd4_derivative
    for i in range(n_steps):
        t = step_times[i]
        b1, b2, b4 = b_full[i], b_half[i], b_full[i + 1]
        k1p = -b1 * deriv(u, g)
        k1u = -deriv(p, g) / b1
        p2 = p + 0.5 * dt * k1p
        u2 = u + 0.5 * dt * k1u
        k2p = -b2 * deriv(u2, g)
        k2u = -deriv(p2, g) / b2
        p3 = p + 0.5 * dt * k2p
        u3 = u + 0.5 * dt * k2u
        k3p = -b2 * deriv(u3, g)
        k3u = -deriv(p3, g) / b2
        p4 = p + dt * k3p
        u4 = u + dt * k3u
        k4p = -b4 * deriv(u4, g)
        k4u = -deriv(p4, g) / b4
        p = p + (dt / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
        u = u + (dt / 6.0) * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
        j = i + 1
        if not (np.isfinite(u[0]) and np.isfinite(p[0])) or not np.all(np.isfinite(u)):
            raise InstabilityError(f"solution became non-finite at t = {step_times[j]:.6g}", time=float(step_times[j]), step=j)
        if j in snap_steps and j != 0:
            record_snap(j)
        if j % config.diag_stride == 0 or j == n_steps:
            record_diag(j)

    return Trajectory(
        grid=g,
        epsilon=config.epsilon,
        snapshots=tuple(snapshots),
        times=np.asarray(diag_t),
        l2_u=np.asarray(diag_l2),
        sup_u=np.asarray(diag_sup),
        energy=np.asarray(diag_en),
        config=config,
        warnings=tuple(warnings_),
    )
