"""Spectral oracle: per-mode ODE integration on periodic grids.

Each Fourier mode obeys u'' + xi^2 u + (b_eps'/b_eps) u' = f.  The modes
are integrated with the same classical RK4 as the physical-space solver but
with exact (spectral) spatial derivatives, so the two paths share nothing
except time stepping.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .diagnostics import l2_norm
from .errors import ConfigError, InstabilityError
from .grid import Grid1D
from .initial_data import sample_u0, sample_u1
from .mollifier import Mollifier, RegularizedCoefficient, bump_mollifier, regularize
from .solver_fd import SolverConfig

__all__ = [
    "SpectralField",
    "ModeState",
    "OracleTrajectory",
    "dft_forward",
    "dft_inverse",
    "mode_rhs",
    "run_oracle",
    "sobolev_norm",
    "mode_energy_series",
]


@dataclass(frozen=True)
class SpectralField:
    """Fourier-series coefficients (trigonometric normalization: fft / n)."""

    coefficients: np.ndarray
    period: float

    @property
    def wavenumbers(self) -> np.ndarray:
        n = len(self.coefficients)
        return 2.0 * np.pi * np.fft.fftfreq(n, d=self.period / n)


def dft_forward(field: np.ndarray, grid: Grid1D) -> SpectralField:
    if not grid.periodic:
        raise ValueError("spectral transform requires a periodic grid")
    coeffs = np.fft.fft(np.asarray(field, dtype=float)) / grid.n
    return SpectralField(coefficients=coeffs, period=grid.length)


def dft_inverse(spec: SpectralField) -> np.ndarray:
    n = len(spec.coefficients)
    return np.fft.ifft(spec.coefficients * n).real


@dataclass(frozen=True)
class ModeState:
    """Symmetric-system state per mode: V = (i|xi| u_hat, d/dt u_hat)."""

    v1: np.ndarray
    v2: np.ndarray
    xi: np.ndarray

    def energy(self) -> np.ndarray:
        return np.abs(self.v1) ** 2 + np.abs(self.v2) ** 2


def mode_rhs(state: ModeState, t: float, coeff: RegularizedCoefficient, forcing=None) -> ModeState:
    """Rate of the symmetric first-order form V' = K(t) V + F(t) with
    K = [[0, i|xi|], [i|xi|, -b'/b]]."""
    r = coeff.dissipation_ratio(t)
    a = 1j * np.abs(state.xi)
    f = forcing(t) if forcing is not None else 0.0
    return ModeState(v1=a * state.v2, v2=a * state.v1 - r * state.v2 + f, xi=state.xi)


@dataclass(frozen=True)
class OracleTrajectory:
    grid: Grid1D
    epsilon: float
    snapshots: tuple[tuple[float, np.ndarray], ...]  # (time, u)
    spectra: tuple[tuple[float, np.ndarray, np.ndarray], ...]  # (time, u_hat, u_t_hat)
    mode_times: np.ndarray
    mode_energy: np.ndarray  # (n_times, n_modes)
    xi: np.ndarray
    times: np.ndarray
    l2_u: np.ndarray
    config: SolverConfig | None = None

    def snapshot_at(self, t: float) -> tuple[float, np.ndarray]:
        idx = int(np.argmin([abs(s[0] - t) for s in self.snapshots]))
        return self.snapshots[idx]


def run_oracle(config: SolverConfig, forcing=None, mollifier: Mollifier | None = None) -> OracleTrajectory:
    """Integrate every mode of the second-order equation with RK4.

    `forcing`, when given, maps t to the per-mode complex forcing array.
    """
    g = config.grid
    if not g.periodic:
        raise ConfigError("the spectral oracle requires a periodic grid")
    xi = 2.0 * np.pi * np.fft.fftfreq(g.n, d=g.dx)
    if config.dt * np.max(np.abs(xi)) > 2.82:
        raise ConfigError(
            f"run.dt = {config.dt} exceeds the RK4 stability limit for the highest mode (dt*xi_max <= 2.82)"
        )
    if mollifier is None:
        mollifier = bump_mollifier(sharpness=config.mollifier_sharpness)
    coeff = regularize(config.coefficient, mollifier, config.epsilon)

    u0 = sample_u0(config.pulse, g)
    b0 = coeff.b_eps(0.0)
    u1 = sample_u1(config.pulse, g, b0)
    w1 = np.fft.fft(u0) / g.n  # u_hat
    w2 = np.fft.fft(u1) / g.n  # d/dt u_hat

    n_steps = int(round(config.t_end / config.dt))
    dt = config.dt
    step_times = dt * np.arange(n_steps + 1)
    r_full = np.array([coeff.dissipation_ratio(float(t)) for t in step_times])
    r_half = np.array([coeff.dissipation_ratio(float(t) + 0.5 * dt) for t in step_times[:-1]])
    xi2 = xi * xi

    def f_hat(t):
        return forcing(t) if forcing is not None else 0.0

    snap_steps: dict[int, float] = {}
    for t_req in config.snapshot_times:
        snap_steps.setdefault(min(n_steps, max(0, int(round(t_req / dt)))), t_req)
    if not config.snapshot_times:
        snap_steps = {0: 0.0, n_steps: config.t_end}

    snapshots: list[tuple[float, np.ndarray]] = []
    spectra: list[tuple[float, np.ndarray, np.ndarray]] = []
    mode_times, mode_energy = [], []
    diag_t, diag_l2 = [], []

    def physical_u():
        return np.fft.ifft(w1 * g.n).real

    def record(i: int):
        mode_times.append(step_times[i])
        mode_energy.append(xi2 * np.abs(w1) ** 2 + np.abs(w2) ** 2)
        uu = physical_u()
        diag_t.append(step_times[i])
        diag_l2.append(l2_norm(uu, g))

    if 0 in snap_steps:
        snapshots.append((0.0, physical_u()))
        spectra.append((0.0, w1.copy(), w2.copy()))
    record(0)

    for i in range(n_steps):
        t = float(step_times[i])
        r1, r2, r4 = r_full[i], r_half[i], r_full[i + 1]
        k1a = w2
        k1b = f_hat(t) - xi2 * w1 - r1 * w2
        a2 = w1 + 0.5 * dt * k1a
        b2_ = w2 + 0.5 * dt * k1b
        k2a = b2_
        k2b = f_hat(t + 0.5 * dt) - xi2 * a2 - r2 * b2_
        a3 = w1 + 0.5 * dt * k2a
        b3 = w2 + 0.5 * dt * k2b
        k3a = b3
        k3b = f_hat(t + 0.5 * dt) - xi2 * a3 - r2 * b3
        a4 = w1 + dt * k3a
        b4 = w2 + dt * k3b
        k4a = b4
        k4b = f_hat(t + dt) - xi2 * a4 - r4 * b4
        w1 = w1 + (dt / 6.0) * (k1a + 2.0 * k2a + 2.0 * k3a + k4a)
        w2 = w2 + (dt / 6.0) * (k1b + 2.0 * k2b + 2.0 * k3b + k4b)
        j = i + 1
        if not np.all(np.isfinite(w1)):
            raise InstabilityError(f"oracle modes became non-finite at t = {step_times[j]:.6g}", time=float(step_times[j]), step=j)
        if j in snap_steps:
            snapshots.append((float(step_times[j]), physical_u()))
            spectra.append((float(step_times[j]), w1.copy(), w2.copy()))
        if j % config.diag_stride == 0 or j == n_steps:
            record(j)

    return OracleTrajectory(
        grid=g,
        epsilon=config.epsilon,
        snapshots=tuple(snapshots),
        spectra=tuple(spectra),
        mode_times=np.asarray(mode_times),
        mode_energy=np.asarray(mode_energy),
        xi=xi,
        times=np.asarray(diag_t),
        l2_u=np.asarray(diag_l2),
        config=config,
    )


def sobolev_norm(field: np.ndarray, grid: Grid1D, s: float) -> float:
    """Discrete H^s norm via the Fourier multiplier (1 + xi^2)^(s/2);
    negative s quantifies near-delta data."""
    spec = dft_forward(field, grid)
    weights = (1.0 + spec.wavenumbers**2) ** s
    return float(np.sqrt(np.sum(weights * np.abs(spec.coefficients) ** 2) * spec.period))


def mode_energy_series(trajectory: OracleTrajectory):
    """(times, xi, energy) with energy[t_index, mode] = xi^2 |u|^2 + |u_t|^2."""
    return trajectory.mode_times, trajectory.xi, trajectory.mode_energy
