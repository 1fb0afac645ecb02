"""Cauchy data tests."""

import numpy as np
import pytest
from scipy.integrate import quad

from echowave.grid import Grid1D
from echowave.initial_data import GaussianPulse, LorentzianPulse, SamplesPulse, sample_u0, sample_u1


class TestGaussianPulse:
    def test_values(self):
        pulse = GaussianPulse(center=1.0, width=0.3)
        assert pulse.values(1.0) == pytest.approx(1.0)
        assert pulse.values(2.0) == pytest.approx(np.exp(-1.0 / 0.3))

    def test_derivative_against_differencing(self):
        pulse = GaussianPulse(0.0, 0.3)
        h = 1e-6
        for x in (-1.2, -0.1, 0.0, 0.4, 2.0):
            fd = (pulse.values(x + h) - pulse.values(x - h)) / (2.0 * h)
            assert pulse.derivative(x) == pytest.approx(float(fd), abs=1e-7)

    def test_half_support_tail(self):
        pulse = GaussianPulse(0.0, 0.3)
        assert pulse.values(pulse.half_support) < 1e-13

    def test_rejects_bad_width(self):
        with pytest.raises(ValueError):
            GaussianPulse(0.0, 0.0)


class TestLorentzianPulse:
    def test_unit_mass(self):
        for scale in (0.05, 0.01):
            pulse = LorentzianPulse(scale)
            mass, _ = quad(pulse.values, -np.inf, np.inf)
            assert mass == pytest.approx(1.0, abs=1e-9)

    def test_peak_height(self):
        pulse = LorentzianPulse(0.05)
        assert pulse.values(0.0) == pytest.approx(1.0 / (np.pi * 0.05))

    def test_derivative_against_differencing(self):
        pulse = LorentzianPulse(0.03)
        h = 1e-8
        for x in (-0.1, -0.02, 0.01, 0.5):
            fd = (pulse.values(x + h) - pulse.values(x - h)) / (2.0 * h)
            assert pulse.derivative(x) == pytest.approx(float(fd), rel=1e-5)

    def test_rejects_bad_scale(self):
        with pytest.raises(ValueError):
            LorentzianPulse(-0.01)


class TestSampling:
    def test_u0_and_u1(self, small_grid):
        pulse = GaussianPulse(0.0, 0.3)
        u0 = sample_u0(pulse, small_grid)
        assert u0.shape == (small_grid.n,)
        b0 = 2.0
        u1 = sample_u1(pulse, small_grid, b0)
        np.testing.assert_allclose(u1, -pulse.derivative(small_grid.nodes) / b0)

    def test_u1_rejects_bad_b0(self, small_grid):
        with pytest.raises(ValueError):
            sample_u1(GaussianPulse(), small_grid, 0.0)

    def test_samples_pulse(self, small_grid):
        vals = np.sin(2.0 * np.pi * small_grid.nodes / small_grid.length)
        pulse = SamplesPulse(samples=tuple(vals.tolist()))
        np.testing.assert_array_equal(sample_u0(pulse, small_grid), vals)
        # u1 falls back to the FD4 stencil for the derivative
        u1 = sample_u1(pulse, small_grid, 1.0)
        k = 2.0 * np.pi / small_grid.length
        np.testing.assert_allclose(u1, -k * np.cos(k * small_grid.nodes), atol=1e-5)

    def test_samples_pulse_shape_guard(self, small_grid):
        with pytest.raises(ValueError):
            sample_u0(SamplesPulse(samples=(0.0, 1.0)), small_grid)
        with pytest.raises(TypeError):
            SamplesPulse(samples=(0.0,) * small_grid.n).values(0.0)
