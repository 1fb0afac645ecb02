"""Cauchy data families: Gaussian pulse, Lorentzian near-delta, raw samples.

The velocity datum is u_t(0, x) = -(1/b_eps(0)) f'(x) with the analytic
derivative of f, so data error never pollutes convergence studies.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import Grid1D

__all__ = ["GaussianPulse", "LorentzianPulse", "SamplesPulse", "PulseSpec", "sample_u0", "sample_u1"]


@dataclass(frozen=True)
class GaussianPulse:
    """f(x) = exp(-(x - center)^2 / width)."""

    center: float = 0.0
    width: float = 0.3

    def __post_init__(self):
        if self.width <= 0.0:
            raise ValueError("Gaussian width must be positive")

    def values(self, x):
        x = np.asarray(x, dtype=float)
        return np.exp(-((x - self.center) ** 2) / self.width)

    def derivative(self, x):
        x = np.asarray(x, dtype=float)
        return -2.0 * (x - self.center) / self.width * self.values(x)

    @property
    def half_support(self) -> float:
        # where the tail drops below ~1e-14
        return float(np.sqrt(self.width * 33.0))


@dataclass(frozen=True)
class LorentzianPulse:
    """f(x) = (1/pi) * e / (x^2 + e^2), unit mass, delta-like as e -> 0."""

    scale: float

    def __post_init__(self):
        if self.scale <= 0.0:
            raise ValueError("Lorentzian scale must be positive")

    @property
    def center(self) -> float:
        return 0.0

    def values(self, x):
        x = np.asarray(x, dtype=float)
        return self.scale / (np.pi * (x * x + self.scale * self.scale))

    def derivative(self, x):
        x = np.asarray(x, dtype=float)
        return -2.0 * self.scale * x / (np.pi * (x * x + self.scale * self.scale) ** 2)

    @property
    def half_support(self) -> float:
        # heavy tails: treat the whole pulse body out to 1e-6 of the peak
        return float(self.scale * 1e3)


@dataclass(frozen=True)
class SamplesPulse:
    """Raw nodal values; the solver's own FD4 stencil supplies f'."""

    samples: tuple[float, ...]

    @property
    def center(self) -> float:
        return 0.0

    def values(self, x):
        raise TypeError("SamplesPulse carries nodal values; use sample_u0")

    @property
    def half_support(self) -> float:
        return float("inf")


PulseSpec = GaussianPulse | LorentzianPulse | SamplesPulse


def sample_u0(spec: PulseSpec, grid: Grid1D) -> np.ndarray:
    if isinstance(spec, SamplesPulse):
        vals = np.asarray(spec.samples, dtype=float)
        if vals.shape != (grid.n,):
            raise ValueError("sample count must match the grid")
        return vals
    return spec.values(grid.nodes)


def sample_u1(spec: PulseSpec, grid: Grid1D, b_eps_at_0: float) -> np.ndarray:
    if b_eps_at_0 <= 0.0:
        raise ValueError("b_eps(0) must be positive")
    if isinstance(spec, SamplesPulse):
        from .solver_fd import fd4_derivative

        return -fd4_derivative(sample_u0(spec, grid), grid) / b_eps_at_0
    return -spec.derivative(grid.nodes) / b_eps_at_0
