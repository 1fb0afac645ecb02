"""Experiment preset tests on reduced grids."""

from dataclasses import replace

import numpy as np
import pytest

from echowave.errors import ConfigError
from echowave.experiments import (
    decay_experiment,
    echo_experiment,
    measure_energy_constants,
    paper_gaussian_config,
    paper_lorentzian_config,
    parallel_map,
    sweep_epsilon,
    theorem_dashboard,
    write_decay_csv,
)
from echowave.coefficient import make_exponential_ramp
from echowave.grid import Grid1D
from echowave.initial_data import GaussianPulse, SamplesPulse
from echowave.solver_fd import SolverConfig

from testutil import constant_coefficient


class TestParallelMap:
    def test_preserves_order(self):
        out = parallel_map(lambda x: x * x, range(20), jobs=4)
        assert out == [x * x for x in range(20)]

    def test_jobs_independent(self):
        items = list(np.linspace(0.0, 1.0, 9))
        assert parallel_map(np.sin, items, jobs=1) == parallel_map(np.sin, items, jobs=8)


class TestPresets:
    def test_gaussian_preset_parameters(self):
        cfg = paper_gaussian_config(0.01)
        assert cfg.grid.xmin == -50.0 and cfg.grid.xmax == 70.0
        assert cfg.grid.dx == pytest.approx(0.0171, rel=1e-4)
        assert cfg.dt == pytest.approx(0.0067)
        assert cfg.pulse == GaussianPulse(0.0, 0.3)

    def test_lorentzian_preset_parameters(self):
        for scale, (dx, dt) in ((0.05, (0.025, 0.0011)), (0.03, (0.025, 8e-4)), (0.01, (0.008, 2.28e-4))):
            cfg = paper_lorentzian_config(scale, 0.01)
            assert cfg.grid.xmin == -20.0 and cfg.grid.xmax == 20.0
            assert cfg.grid.dx == pytest.approx(dx, rel=1e-4)
            assert cfg.dt == pytest.approx(dt)
        # unlisted scales fall back to a resolution tied to the scale
        cfg = paper_lorentzian_config(0.02, 0.01)
        assert cfg.grid.dx <= 0.8 * 0.02 * 1.01

    def test_ci_factor_coarsens(self):
        fine = paper_gaussian_config(0.01)
        coarse = paper_gaussian_config(0.01, ci_factor=4)
        assert coarse.dt == pytest.approx(4.0 * fine.dt)
        assert coarse.grid.n == pytest.approx(fine.grid.n / 4, rel=0.01)


def _small_base(t_end=3.0, **kw):
    g = Grid1D(-15.0, 15.0, 400, periodic=True)
    base = dict(
        grid=g,
        dt=0.3 * g.dx,
        t_end=t_end,
        epsilon=0.1,
        coefficient=constant_coefficient(1.0),
        pulse=GaussianPulse(0.0, 0.3),
        cone_guard="off",
    )
    base.update(kw)
    return SolverConfig(**base)


class TestSweep:
    def test_convergence_table(self, paper_coeff, tmp_path):
        base = _small_base(t_end=6.5, coefficient=paper_coeff)
        eps = [0.4, 0.2, 0.1, 0.05]
        table = sweep_epsilon(base, eps, compare_time=6.5, jobs=2)
        assert len(table.rows) == 3
        assert all(d > 0.0 for d in table.differences)
        # differences shrink as the regularizations converge
        assert table.differences[0] > table.differences[-1]
        assert np.isnan(table.rows[0][3])
        assert table.rows[1][3] > 0.0
        path = tmp_path / "convergence.csv"
        table.write_csv(path)
        header = path.read_text().splitlines()[0]
        assert header == "eps_hi,eps_lo,l2_difference,observed_order"

    def test_needs_two_epsilons(self):
        with pytest.raises(ConfigError):
            sweep_epsilon(_small_base(), [0.1], compare_time=1.0)


class TestEcho:
    def test_gaussian_echo_reduced_resolution(self, tmp_path):
        report, trajectory = echo_experiment(
            GaussianPulse(0.0, 0.3), 0.01, out_dir=str(tmp_path / "echo"), ci_factor=2
        )
        assert report is not None
        assert 5.0 <= report.birth_time <= 6.2
        assert report.echo_direction == -1
        assert report.amplitude_ratio < 0.5
        assert (tmp_path / "echo" / "echo.csv").exists()
        assert (tmp_path / "echo" / "diagnostics.csv").exists()
        written = {p.name for p in (tmp_path / "echo").glob("snap_*.csv")}
        assert len(written) == len(trajectory.snapshots)

    def test_rejects_unknown_pulse(self):
        with pytest.raises(ConfigError):
            echo_experiment(SamplesPulse(samples=(0.0,) * 16), 0.01)


class TestDecay:
    def test_decay_results(self, paper_coeff, tmp_path):
        base = _small_base(t_end=7.0, coefficient=paper_coeff, diag_stride=20)
        results = decay_experiment([0.2, 0.1], base_config=base, t_min=1.0, jobs=2)
        assert [r.epsilon for r in results] == [0.2, 0.1]
        for r in results:
            assert r.times[0] >= 1.0
            assert r.l2_u.shape == r.l2_times_b.shape
            # past the jump the weighted norm exceeds the plain one (b > 1)
            late = r.times > 5.0 + 0.2
            assert np.all(r.l2_times_b[late] > r.l2_u[late])
        path = tmp_path / "decay.csv"
        write_decay_csv(path, results)
        assert path.read_text().splitlines()[0] == "epsilon,slope_t,slope_b,intercept"


class TestDashboard:
    def _cfg(self, coefficient, t_end=15.0):
        g = Grid1D(-25.0, 25.0, 500, periodic=True)
        return SolverConfig(
            grid=g,
            dt=0.03,
            t_end=t_end,
            epsilon=0.5,
            coefficient=coefficient,
            pulse=GaussianPulse(0.0, 0.3),
            cone_guard="off",
        )

    def test_bounded_statistic_case(self, paper_coeff, tmp_path):
        report = theorem_dashboard(self._cfg(paper_coeff))
        assert report.case == "b"
        assert report.stat_sup < 1.0
        assert report.energy_constant <= 1.0 + 1e-9
        assert not report.flagged
        assert report.worst_constant > 0.0
        assert set(report.derivative_constants) == {(l, a) for l in (0, 1) for a in (0, 1, 2)}
        report.write_csv(tmp_path / "dashboard.csv")
        assert (tmp_path / "dashboard.csv").read_text().splitlines()[0] == "t,t_bprime_over_b,bound_constant"

    def test_growing_statistic_case(self):
        report = theorem_dashboard(self._cfg(make_exponential_ramp(16.0)))
        assert report.case == "a"
        assert report.stat_sup > 10.0

    def test_requires_periodic(self, paper_coeff):
        cfg = replace(self._cfg(paper_coeff), grid=Grid1D(-25.0, 25.0, 500, periodic=False))
        with pytest.raises(ConfigError):
            theorem_dashboard(cfg)


class TestEnergyConstants:
    def test_unforced(self):
        cfg = _small_base(t_end=2.0)
        c1, c2 = measure_energy_constants(cfg)
        assert c1 == pytest.approx(1.0, abs=1e-6)
        assert c2 is None

    def test_forced(self):
        cfg = _small_base(t_end=2.0)
        n = cfg.grid.n
        amp = np.zeros(n, dtype=complex)
        amp[3] = 0.1
        c1, c2 = measure_energy_constants(cfg, forcing=lambda t: amp)
        assert c2 is not None and np.isfinite(c2) and c2 > 0.0
