"""Uniform 1-D grids."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["Grid1D"]


@dataclass(frozen=True)
class Grid1D:
    xmin: float
    xmax: float
    n: int
    periodic: bool = True

    def __post_init__(self):
        if self.n < 8:
            raise ValueError("grid needs at least 8 nodes")
        if self.xmax <= self.xmin:
            raise ValueError("xmax must exceed xmin")

    @property
    def length(self) -> float:
        return self.xmax - self.xmin

    @property
    def dx(self) -> float:
        return self.length / self.n if self.periodic else self.length / (self.n - 1)

    @property
    def nodes(self) -> np.ndarray:
        if self.periodic:
            return self.xmin + self.dx * np.arange(self.n)
        return np.linspace(self.xmin, self.xmax, self.n)

    @classmethod
    def from_spacing(cls, xmin: float, xmax: float, dx: float, periodic: bool = True) -> "Grid1D":
        span = xmax - xmin
        n = int(round(span / dx)) if periodic else int(round(span / dx)) + 1
        return cls(xmin=xmin, xmax=xmax, n=n, periodic=periodic)
