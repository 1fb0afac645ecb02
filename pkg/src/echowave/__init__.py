"""Simulator and verification harness for the 1-D dissipative wave equation
with a mollifier-regularized jump coefficient."""

from .coefficient import (
    BreakpointFunction,
    ImpedanceProfile,
    PiecewisePolynomial,
    make_exponential_ramp,
    make_paper_coefficient,
    make_smooth_ramp,
    travel_time_transform,
    validate,
)
from .diagnostics import (
    EchoReport,
    PeakRecord,
    detect_peaks,
    fit_decay,
    l2_norm,
    sup_norm,
    track_echo,
    uniform_bound_summary,
)
from .errors import ConfigError, DiagnosticsError, InstabilityError
from .grid import Grid1D
from .initial_data import GaussianPulse, LorentzianPulse, SamplesPulse, sample_u0, sample_u1
from .mollifier import (
    Mollifier,
    RegularizedCoefficient,
    bump_mollifier,
    eval_scaled,
    moderateness_scan,
    mollifier_sensitivity,
    normalization_constant,
    regularize,
)
from .solver_fd import FieldPair, SolverConfig, Trajectory, fd4_derivative, rk4_step, run, system_rhs
from .solver_fourier import dft_forward, dft_inverse, mode_energy_series, mode_rhs, run_oracle, sobolev_norm

__version__ = "0.1.0"
