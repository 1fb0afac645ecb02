"""Piecewise-polynomial time coefficients and the impedance travel-time map.

The dissipation coefficient b(t) is a positive, non-decreasing, piecewise
polynomial with finitely many jump points.  Pieces are left-closed: at a
breakpoint the right piece's value is returned.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "BreakpointFunction",
    "PiecewisePolynomial",
    "ImpedanceProfile",
    "ValidationReport",
    "make_paper_coefficient",
    "make_smooth_ramp",
    "make_exponential_ramp",
    "validate",
    "travel_time_transform",
]


@dataclass(frozen=True)
class PiecewisePolynomial:
    """Piecewise polynomial on the real line.

    ``breakpoints`` are strictly increasing; ``pieces[i]`` holds the
    polynomial coefficients (constant first) on
    ``[breakpoints[i], breakpoints[i+1])``, with the last piece extending to
    +inf.  Below the first breakpoint the function is the constant
    ``left_extension``.
    """

    breakpoints: tuple[float, ...]
    pieces: tuple[tuple[float, ...], ...]
    left_extension: float

    def __post_init__(self):
        if len(self.breakpoints) != len(self.pieces):
            raise ValueError("need one piece per breakpoint")
        if len(self.breakpoints) == 0:
            raise ValueError("need at least one breakpoint")
        bps = self.breakpoints
        if any(b2 <= b1 for b1, b2 in zip(bps, bps[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        for coeffs in self.pieces:
            if len(coeffs) == 0 or len(coeffs) > 4:
                raise ValueError("piece degree must be between 0 and 3")

    def piece_index(self, t: float) -> int:
        """Index of the piece covering t; -1 for the left extension."""
        return bisect.bisect_right(self.breakpoints, t) - 1

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = np.full(t.shape, self.left_extension)
        for i, coeffs in enumerate(self.pieces):
            lo = self.breakpoints[i]
            hi = self.breakpoints[i + 1] if i + 1 < len(self.breakpoints) else np.inf
            mask = (t >= lo) & (t < hi)
            if np.any(mask):
                out[mask] = np.polynomial.polynomial.polyval(t[mask], coeffs)
        return out if out.shape else float(out)

    def piece_degree(self, t: float) -> int:
        """Effective polynomial degree of the piece covering t (0 for the
        left extension)."""
        i = self.piece_index(t)
        if i < 0:
            return 0
        coeffs = self.pieces[i]
        deg = 0
        for j, c in enumerate(coeffs):
            if c != 0.0:
                deg = j
        return deg

    def breakpoints_in(self, lo: float, hi: float) -> list[float]:
        """Breakpoints strictly inside (lo, hi)."""
        i = bisect.bisect_right(self.breakpoints, lo)
        j = bisect.bisect_left(self.breakpoints, hi)
        return list(self.breakpoints[i:j])


@dataclass(frozen=True)
class BreakpointFunction:
    """Non-decreasing positive piecewise-polynomial coefficient b(t).

    ``lower_bound`` is the stored b0 > 0 with b(t) >= b0 for t >= 0.
    Monotonicity and positivity are asserted by :func:`validate`, not by the
    constructor.
    """

    poly: PiecewisePolynomial
    lower_bound: float

    def __post_init__(self):
        if self.lower_bound <= 0.0:
            raise ValueError("lower bound b0 must be positive")

    @property
    def breakpoints(self) -> tuple[float, ...]:
        return self.poly.breakpoints

    def __call__(self, t):
        """Evaluate b; negative times use the constant left extension (needed
        by the mollifier convolution near t = 0)."""
        return self.poly(t)

    def eval(self, t: float) -> float:
        """Evaluate b(t) for t >= 0; raises on negative time."""
        if np.any(np.asarray(t) < 0.0):
            raise ValueError("coefficient is defined for t >= 0")
        return self.poly(t)

    def jump_at(self, t: float) -> float:
        """Right-limit minus left-limit at t (0 away from breakpoints)."""
        eps = 1e-12 * max(1.0, abs(t))
        return float(self.poly(t) - self.poly(t - eps))


def make_paper_coefficient() -> BreakpointFunction:
    """Synthetic jump coefficient: 1 for t < 5, t/10 + 3/2 for t >= 5."""
    poly = PiecewisePolynomial(
        breakpoints=(5.0,),
        pieces=((1.5, 0.1),),
        left_extension=1.0,
    )
    return BreakpointFunction(poly=poly, lower_bound=1.0)


def make_smooth_ramp(slope: float = 0.1, offset: float = 1.0) -> BreakpointFunction:
    """Continuous ramp offset + slope*t for t >= 0 (constant before 0)."""
    poly = PiecewisePolynomial(
        breakpoints=(0.0,),
        pieces=((offset, slope),),
        left_extension=offset,
    )
    return BreakpointFunction(poly=poly, lower_bound=offset)


def make_exponential_ramp(t_max: float = 20.0) -> BreakpointFunction:
    """Piecewise-cubic approximation of exp(t) on [0, t_max].

    Each unit interval carries the cubic Taylor polynomial of exp anchored at
    its left end, so every piece is increasing and the junction jumps are
    small and positive.  Useful as a growing-dissipation test coefficient
    whose statistic t*b'/b grows like t.
    """
    import math

    bps, pieces = [], []
    for k in range(int(math.ceil(t_max)) + 1):
        ek = math.exp(k)
        # expand ek * (1 + (t-k) + (t-k)^2/2 + (t-k)^3/6) in powers of t
        local = np.array([1.0, 1.0, 0.5, 1.0 / 6.0]) * ek
        shifted = np.polynomial.polynomial.polyfit(
            np.linspace(k, k + 1, 8), np.polynomial.polynomial.polyval(np.linspace(0, 1, 8), local), 3
        )
        bps.append(float(k))
        pieces.append(tuple(float(c) for c in shifted))
    poly = PiecewisePolynomial(breakpoints=tuple(bps), pieces=tuple(pieces), left_extension=1.0)
    return BreakpointFunction(poly=poly, lower_bound=1.0)


@dataclass(frozen=True)
class ValidationReport:
    min_value: float
    monotone: bool
    positive: bool
    detected_lower_bound: float
    violations: tuple[float, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return self.monotone and self.positive


def validate(b: BreakpointFunction, grid_step: float, t_max: float | None = None) -> ValidationReport:
    """Sample b on [0, t_max] and report positivity/monotonicity.

    Violations are reported, not raised; the caller decides.
    """
    if grid_step <= 0.0:
        raise ValueError("grid_step must be positive")
    if t_max is None:
        t_max = b.breakpoints[-1] + 10.0
    ts = np.arange(0.0, t_max + 0.5 * grid_step, grid_step)
    # include both sides of every breakpoint so jumps are sampled
    extra = []
    for bp in b.breakpoints:
        if 0.0 <= bp <= t_max:
            extra.extend([max(0.0, bp - 1e-9), bp])
    ts = np.unique(np.concatenate([ts, np.array(extra)]))
    vals = b(ts)
    diffs = np.diff(vals)
    bad = ts[1:][diffs < -1e-12]
    monotone = bad.size == 0
    min_value = float(vals.min())
    positive = min_value >= b.lower_bound - 1e-12 and min_value > 0.0
    return ValidationReport(
        min_value=min_value,
        monotone=monotone,
        positive=positive,
        detected_lower_bound=min_value,
        violations=tuple(float(t) for t in bad[:16]),
    )


@dataclass(frozen=True)
class ImpedanceProfile:
    """Layered medium: density rho(z) and wave speed c(z), both piecewise
    polynomial and strictly positive."""

    density: PiecewisePolynomial
    wave_speed: PiecewisePolynomial

    def impedance(self, z):
        return self.density(z) * self.wave_speed(z)


# Gauss-Legendre panel rule shared with the mollifier quadrature.
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


def _panel_integral(f, a: float, b: float) -> float:
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    return half * float(np.dot(_GL_WEIGHTS, f(mid + half * _GL_NODES)))


def travel_time_transform(profile: ImpedanceProfile, z: float) -> float:
    """Travel-time coordinate x(z) = integral of 1/c over [0, z].

    Constant pieces are integrated exactly; polynomial pieces by Gauss
    panels (1/c is analytic on each piece since c stays positive).
    """
    if z < 0.0:
        raise ValueError("depth z must be non-negative")
    c = profile.wave_speed
    cuts = [0.0] + [bp for bp in c.breakpoints if 0.0 < bp < z] + [z]
    total = 0.0
    for lo, hi in zip(cuts, cuts[1:]):
        if hi <= lo:
            continue
        mid = 0.5 * (lo + hi)
        i = c.piece_index(mid)
        coeffs = c.pieces[i] if i >= 0 else (c.left_extension,)
        samples = c(np.linspace(lo + 1e-12 * (hi - lo), hi - 1e-12 * (hi - lo), 32))
        if np.any(samples <= 0.0):
            raise ValueError(f"wave speed must stay positive on [0, z]; fails in [{lo}, {hi}]")
        if c.piece_degree(mid) == 0:
            value = coeffs[0] if i >= 0 else c.left_extension
            total += (hi - lo) / value
        else:
            # split each piece into a few panels; 1/c is smooth here
            sub = np.linspace(lo, hi, 9)
            for a_, b_ in zip(sub, sub[1:]):
                total += _panel_integral(lambda t: 1.0 / c(t), a_, b_)
    return total
