#!/usr/bin/env python3
"""Unit tests for the ground-truth kinematics."""

import sys
from pathlib import Path

import numpy as np
import pytest
from scipy.linalg import expm

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from src.geometry.so3 import E3, angle_axis, is_rotation, skew
from src.simulation.rigid_body import RigidBodyState, rigid_body_rates, step, truth_at
from src.simulation.trajectories import (
    GRAVITY, apparent_accel, constant_rate_trajectory, reference_trajectory,
)


class TestStep:
    """Test a single RK4 step of the kinematics."""

    def test_hover_equilibrium(self):
        """omega = 0 and b_a = -g R^T e3 leave the state unchanged."""
        r = angle_axis(0.7, np.array([0.6, 0.0, 0.8]))
        state = RigidBodyState(r=r, v=np.array([1.0, -2.0, 0.5]))
        nxt = step(state, np.zeros(3), -9.81 * r.T @ E3, 0.01)
        np.testing.assert_allclose(nxt.r, state.r, atol=1e-12)
        np.testing.assert_allclose(nxt.v, state.v, atol=1e-12)

    def test_constant_specific_force_gives_linear_velocity(self):
        """R = I, omega = 0 and constant b_a give v(t) = v(0) + (g e3 + b_a) t."""
        b_a = np.array([1.0, -2.0, 3.0])
        v0 = np.array([0.5, 0.0, -1.0])
        state = RigidBodyState(r=np.eye(3), v=v0.copy())
        for _ in range(100):
            state = step(state, np.zeros(3), b_a, 0.01)
        np.testing.assert_allclose(state.v, v0 + (GRAVITY * E3 + b_a) * 1.0, atol=1e-12)
        np.testing.assert_allclose(state.r, np.eye(3), atol=1e-12)

    def test_specific_force_matches_acceleration(self, rng):
        """b_a = R^T r_a reproduces v_dot through the kinematics."""
        spec = reference_trajectory()
        for t in rng.uniform(0.0, 60.0, size=20):
            r = angle_axis(rng.uniform(0.0, np.pi), np.array([0.0, 0.6, 0.8]))
            b_a = r.T @ apparent_accel(spec, t)
            _, v_dot = rigid_body_rates(r, spec.v_fn(t), spec.omega_fn(t), b_a)
            np.testing.assert_allclose(v_dot, spec.vdot_fn(t), atol=1e-12)

    def test_step_too_large(self):
        """Steps above 0.1 s are rejected."""
        state = RigidBodyState(r=np.eye(3), v=np.zeros(3))
        with pytest.raises(ValueError):
            step(state, np.zeros(3), np.zeros(3), 0.2)

    def test_non_positive_step(self):
        """Steps must be positive."""
        state = RigidBodyState(r=np.eye(3), v=np.zeros(3))
        with pytest.raises(ValueError):
            step(state, np.zeros(3), np.zeros(3), 0.0)


class TestTruthAt:
    """Test truth propagation on a time grid."""

    def test_constant_rate_closed_form(self):
        """R(t) = R0 exp(t [omega]_x) for a constant body rate."""
        omega = np.array([0.3, -0.2, 0.5])
        r0 = angle_axis(1.0, np.array([0.0, 0.6, 0.8]))
        spec = constant_rate_trajectory(omega=omega, r0=r0)
        grid = [0.0, 0.5, 1.0, 2.0]
        states = truth_at(spec, grid)
        for t, state in zip(grid, states):
            np.testing.assert_allclose(state.r, r0 @ expm(t * skew(omega)), atol=1e-9)

    def test_velocity_matches_profile(self):
        """v on the grid is the closed-form velocity."""
        spec = reference_trajectory()
        grid = np.linspace(0.0, 1.0, 11)
        for t, state in zip(grid, truth_at(spec, grid)):
            np.testing.assert_allclose(state.v, spec.v_fn(t), atol=1e-15)

    def test_attitude_stays_on_so3(self):
        """Renormalization keeps every sample a rotation."""
        states = truth_at(reference_trajectory(), [0.0, 0.7, 3.0])
        assert all(is_rotation(s.r) for s in states)

    @pytest.mark.slow
    def test_attitude_stays_on_so3_for_a_minute(self):
        """Sixty seconds of the reference rates keep every sample a rotation."""
        states = truth_at(reference_trajectory(), np.linspace(0.0, 60.0, 61))
        assert len(states) == 61
        assert all(is_rotation(s.r) for s in states)

    def test_starts_at_r0(self):
        """The first sample is the initial attitude."""
        spec = reference_trajectory()
        np.testing.assert_array_equal(truth_at(spec, [0.0])[0].r, spec.r0)

    def test_grid_must_start_at_zero(self):
        """Grids not starting at 0 are rejected."""
        with pytest.raises(ValueError):
            truth_at(reference_trajectory(), [0.1, 0.2])

    def test_grid_must_increase(self):
        """Repeated or decreasing times are rejected."""
        with pytest.raises(ValueError):
            truth_at(reference_trajectory(), [0.0, 0.5, 0.5])

    def test_refinement_converges(self):
        """Halving the substep changes the attitude by a negligible amount."""
        spec = reference_trajectory()
        coarse = truth_at(spec, [0.0, 2.0], max_substep=2e-3)[-1].r
        fine = truth_at(spec, [0.0, 2.0], max_substep=1e-3)[-1].r
        assert np.max(np.abs(coarse - fine)) < 1e-6
