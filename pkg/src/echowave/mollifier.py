"""Friedrichs mollifier, coefficient regularization, and scaling scans.

The bump profile is exp(s/(t^2 - 1)) on |t| < 1 (sharpness s = 1 is the
standard bump), normalized to unit mass.  Regularized coefficients are
computed by Gauss-Legendre panel quadrature with panel cuts at the images
of the coefficient's breakpoints and geometric grading toward the bump's
flat endpoints +-1.  Windows that contain no breakpoint and sit on an
affine piece are evaluated exactly: an even mollifier reproduces affine
functions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coefficient import BreakpointFunction
from .io import write_csv

__all__ = [
    "Mollifier",
    "RegularizedCoefficient",
    "ModeratenessReport",
    "SensitivityTable",
    "bump_mollifier",
    "normalization_constant",
    "eval_scaled",
    "regularize",
    "moderateness_scan",
    "mollifier_sensitivity",
]

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)

# Geometric grading toward the bump's endpoint singularities; the profile is
# flat to all orders at +-1, so panels shrinking to ~2^-16 reach ~1e-14.
_GRADING = 1.0 - 2.0 ** (-np.arange(1, 17, dtype=float))


def _panel_points(splits=()) -> np.ndarray:
    """Panel boundaries on [-1, 1]: grading near the ends plus extra cuts."""
    pts = np.concatenate([[-1.0, 1.0], -_GRADING, _GRADING, np.asarray(splits, dtype=float)])
    pts = pts[(pts >= -1.0) & (pts <= 1.0)]
    return np.unique(pts)


def _integrate(f, splits=()) -> float:
    """Integrate f over [-1, 1] with panel cuts at `splits`."""
    pts = _panel_points(splits)
    mids = 0.5 * (pts[1:] + pts[:-1])
    halves = 0.5 * (pts[1:] - pts[:-1])
    nodes = (mids[:, None] + halves[:, None] * _GL_NODES[None, :]).ravel()
    vals = f(nodes).reshape(len(mids), -1)
    return float(np.sum(halves * (vals @ _GL_WEIGHTS)))


def _bump_raw(t: np.ndarray, sharpness: float, order: int) -> np.ndarray:
    """Unnormalized bump exp(s/(t^2-1)) or its derivative (order <= 2)."""
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    inside = np.abs(t) < 1.0 - 1e-14
    ti = t[inside]
    d = ti * ti - 1.0
    g = sharpness / d
    base = np.exp(g)
    if order == 0:
        out[inside] = base
    elif order == 1:
        g1 = -2.0 * sharpness * ti / (d * d)
        out[inside] = base * g1
    elif order == 2:
        g1 = -2.0 * sharpness * ti / (d * d)
        g2 = sharpness * (6.0 * ti * ti + 2.0) / (d * d * d)
        out[inside] = base * (g2 + g1 * g1)
    else:
        raise ValueError("bump derivatives implemented for order <= 2")
    return out


def normalization_constant(tol: float = 1e-10, sharpness: float = 1.0) -> float:
    """Mass of the unnormalized bump; 0.443994 for sharpness 1."""
    if tol <= 0.0:
        raise ValueError("tolerance must be positive")
    return _integrate(lambda t: _bump_raw(t, sharpness, 0))


@dataclass(frozen=True)
class Mollifier:
    """Normalized even bump with support [-1, 1]."""

    normalization: float
    sharpness: float = 1.0
    support_radius: float = 1.0

    def profile(self, t, order: int = 0):
        return _bump_raw(np.asarray(t, dtype=float), self.sharpness, order) / self.normalization

    def __call__(self, t):
        return self.profile(t, 0)


def bump_mollifier(sharpness: float = 1.0, tol: float = 1e-10) -> Mollifier:
    return Mollifier(normalization=normalization_constant(tol, sharpness), sharpness=sharpness)


def eval_scaled(m: Mollifier, epsilon: float, t):
    """Scaled mollifier (1/eps) * psi(t/eps); support [-eps, eps]."""
    if epsilon <= 0.0:
        raise ValueError("epsilon must be positive")
    return m.profile(np.asarray(t, dtype=float) / epsilon) / epsilon


@dataclass(frozen=True)
class RegularizedCoefficient:
    """Evaluable pair (b_eps, b_eps') for a fixed mollifier scale."""

    base: BreakpointFunction
    mollifier: Mollifier
    epsilon: float

    def __post_init__(self):
        if self.epsilon <= 0.0:
            raise ValueError("epsilon must be positive")

    def _window_is_exact(self, t: float) -> bool:
        eps = self.epsilon
        poly = self.base.poly
        if poly.breakpoints_in(t - eps, t + eps):
            return False
        # entire window on one piece (or the left extension)
        return poly.piece_degree(t) <= 1 and poly.piece_index(t - eps) == poly.piece_index(t + eps)

    def _convolve(self, t: float, order: int) -> float:
        eps = self.epsilon
        poly = self.base.poly
        splits = [(t - bp) / eps for bp in poly.breakpoints_in(t - eps, t + eps)]
        val = _integrate(lambda tau: poly(t - eps * tau) * self.mollifier.profile(tau, order), splits)
        return val / eps**order

    def derivative_value(self, t: float, order: int) -> float:
        """d^k/dt^k of b_eps at t, by convolution with the bump's k-th
        derivative (never by differencing b_eps)."""
        if order == 0:
            return self.b_eps(t)
        if self._window_is_exact(t):
            poly = self.base.poly
            i = poly.piece_index(t)
            coeffs = poly.pieces[i] if i >= 0 else (poly.left_extension,)
            if order == 1:
                return float(coeffs[1]) if len(coeffs) > 1 else 0.0
            return 0.0
        return self._convolve(t, order)

    def b_eps(self, t: float) -> float:
        if self._window_is_exact(t):
            return float(self.base.poly(t))
        return self._convolve(t, 0)

    def b_eps_prime(self, t: float) -> float:
        return self.derivative_value(t, 1)

    def b_eps_many(self, ts: np.ndarray) -> np.ndarray:
        """Vectorized b_eps with the exact fast path where it applies."""
        ts = np.asarray(ts, dtype=float)
        out = np.empty(ts.shape)
        flat = ts.ravel()
        res = out.ravel()
        for i, t in enumerate(flat):
            res[i] = self.b_eps(float(t))
        return out

    def dissipation_ratio(self, t: float) -> float:
        """b_eps'(t) / b_eps(t), the damping coefficient of the equation."""
        return self.b_eps_prime(t) / self.b_eps(t)


def regularize(b: BreakpointFunction, m: Mollifier, epsilon: float) -> RegularizedCoefficient:
    return RegularizedCoefficient(base=b, mollifier=m, epsilon=epsilon)


def _sample_times(b: BreakpointFunction, epsilon: float, t_window) -> np.ndarray:
    t0, t1 = float(t_window[0]), float(t_window[1])
    ts = [np.linspace(t0, t1, 1201)]
    for bp in b.breakpoints:
        if t0 - epsilon <= bp <= t1 + epsilon:
            ts.append(bp + epsilon * np.linspace(-1.2, 1.2, 241))
    all_ts = np.unique(np.concatenate(ts))
    return all_ts[(all_ts >= t0) & (all_ts <= t1)]


def _loglog_slope(eps: np.ndarray, vals: np.ndarray) -> float:
    return float(np.polyfit(np.log(eps), np.log(vals), 1)[0])


@dataclass(frozen=True)
class ModeratenessReport:
    derivative_order: int
    epsilons: tuple[float, ...]
    sup_values: tuple[float, ...]
    exponent: float | None
    identically_zero: bool

    def write_csv(self, path):
        exp = "" if self.exponent is None else self.exponent
        write_csv(path, ["epsilon", "sup_value", "fitted_exponent"], [[e, s, exp] for e, s in zip(self.epsilons, self.sup_values)])


def moderateness_scan(
    b: BreakpointFunction,
    m: Mollifier,
    derivative_order: int,
    eps_list,
    t_window=(0.0, 20.0),
) -> ModeratenessReport:
    """Fit sup_t |d^k b_eps / dt^k| against eps on a log-log scale.

    A jump coefficient scales like eps^(-k) for k >= 1; a Lipschitz one
    stays bounded for k = 1.
    """
    if derivative_order not in (0, 1, 2):
        raise ValueError("derivative order must be 0, 1 or 2")
    eps_arr = np.asarray(sorted(set(float(e) for e in eps_list), reverse=True))
    if eps_arr.size < 2:
        raise ValueError("need at least 2 distinct epsilon values to fit")
    sups = []
    for eps in eps_arr:
        reg = regularize(b, m, eps)
        ts = _sample_times(b, eps, t_window)
        sups.append(max(abs(reg.derivative_value(float(t), derivative_order)) for t in ts))
    sups = np.asarray(sups)
    if np.all(sups < 1e-250):
        return ModeratenessReport(derivative_order, tuple(eps_arr), tuple(sups), None, True)
    exponent = _loglog_slope(eps_arr, np.maximum(sups, 1e-300))
    return ModeratenessReport(derivative_order, tuple(eps_arr), tuple(sups), exponent, False)


@dataclass(frozen=True)
class SensitivityTable:
    epsilons: tuple[float, ...]
    sup_differences: tuple[float, ...]
    exponent: float | None

    def write_csv(self, path):
        exp = "" if self.exponent is None else self.exponent
        write_csv(path, ["epsilon", "sup_value", "fitted_exponent"], [[e, s, exp] for e, s in zip(self.epsilons, self.sup_differences)])


def mollifier_sensitivity(
    b: BreakpointFunction,
    m1: Mollifier,
    m2: Mollifier,
    eps_list,
    t_window=(0.0, 10.0),
) -> SensitivityTable:
    """sup_t |b_{eps,m1} - b_{eps,m2}| per eps, with a fitted decay rate.

    Smooth coefficients make the difference vanish (rate >= 2 for even
    mollifiers); a jump makes it stall near the breakpoint.  Both outcomes
    are reported as-is.
    """
    eps_arr = np.asarray(sorted(set(float(e) for e in eps_list), reverse=True))
    if eps_arr.size < 2:
        raise ValueError("need at least 2 distinct epsilon values to fit")
    diffs = []
    for eps in eps_arr:
        r1 = regularize(b, m1, eps)
        r2 = regularize(b, m2, eps)
        ts = _sample_times(b, eps, t_window)
        diffs.append(max(abs(r1.b_eps(float(t)) - r2.b_eps(float(t))) for t in ts))
    diffs = np.asarray(diffs)
    if np.all(diffs < 1e-250):
        return SensitivityTable(tuple(eps_arr), tuple(diffs), None)
    exponent = _loglog_slope(eps_arr, np.maximum(diffs, 1e-300))
    return SensitivityTable(tuple(eps_arr), tuple(diffs), exponent)
