"""Shared test helpers (module name kept distinct across test trees)."""

from echowave.coefficient import BreakpointFunction, PiecewisePolynomial

SWEEP_EPS = (0.2, 0.1, 0.05, 0.02, 0.01)


def constant_coefficient(value: float = 1.0) -> BreakpointFunction:
    """b identically `value`; the dissipation-free control case."""
    poly = PiecewisePolynomial(breakpoints=(0.0,), pieces=((value,),), left_extension=value)
    return BreakpointFunction(poly=poly, lower_bound=value)
