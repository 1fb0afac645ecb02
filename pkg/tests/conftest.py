"""Shared fixtures.

Heavy paper-resolution runs are session-scoped so the acceptance criteria
that share them (uniform boundedness, consistency, decay) pay for them once.
"""

from __future__ import annotations

import numpy as np
import pytest

from echowave.coefficient import make_paper_coefficient, make_smooth_ramp
from echowave.experiments import paper_gaussian_config, parallel_map
from echowave.grid import Grid1D
from echowave.initial_data import GaussianPulse
from echowave.mollifier import bump_mollifier
from echowave.solver_fd import SolverConfig, run

from testutil import SWEEP_EPS, constant_coefficient  # noqa: F401  (re-exported for fixtures below)


@pytest.fixture(scope="session")
def paper_coeff():
    return make_paper_coefficient()


@pytest.fixture(scope="session")
def ramp_coeff():
    return make_smooth_ramp()


@pytest.fixture(scope="session")
def mollifier():
    return bump_mollifier()


@pytest.fixture
def small_grid():
    return Grid1D(-10.0, 10.0, 200, periodic=True)


@pytest.fixture(scope="session")
def paper_sweep_trajectories():
    """Paper-resolution Gaussian runs to t = 60 for every sweep epsilon.

    Reused by the uniform-boundedness, consistency and decay criteria.
    """
    from dataclasses import replace

    base = paper_gaussian_config(0.01, t_end=60.0, snapshot_times=(60.0,))
    base = replace(base, diag_stride=50)
    return parallel_map(lambda e: run(replace(base, epsilon=e)), SWEEP_EPS)


@pytest.fixture(scope="session")
def dalembert_runs():
    """b = 1 Gaussian right-mover at the paper grid scale plus a halved grid."""
    pulse = GaussianPulse(0.0, 0.3)
    coeff = constant_coefficient(1.0)
    out = {}
    for factor in (1, 2):
        grid = Grid1D.from_spacing(-50.0, 70.0, 0.0171 / factor, periodic=True)
        cfg = SolverConfig(
            grid=grid,
            dt=0.0067 / factor,
            t_end=10.0,
            epsilon=0.01,
            coefficient=coeff,
            pulse=pulse,
            snapshot_times=(10.0,),
            cone_guard="off",
        )
        out[factor] = run(cfg)
    return out
