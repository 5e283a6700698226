#!/usr/bin/env python3
"""Unit tests for Pydantic models."""

import math
import sys
from pathlib import Path

import numpy as np
import pytest
from pydantic import ValidationError

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

# Import directly from models file to avoid src/__init__ imports
import importlib.util
spec = importlib.util.spec_from_file_location("models",
    str(Path(__file__).parent.parent.parent / "src" / "models.py"))
models = importlib.util.module_from_spec(spec)
spec.loader.exec_module(models)

Certificate = models.Certificate
ConditionCheck = models.ConditionCheck
GainConfig = models.GainConfig
HybridConfig = models.HybridConfig
InitialEstimate = models.InitialEstimate
NoiseConfig = models.NoiseConfig
ObserverLaw = models.ObserverLaw
ScenarioConfig = models.ScenarioConfig
ScenarioMode = models.ScenarioMode
SensorConfig = models.SensorConfig
SimulationSettings = models.SimulationSettings
TrajectoryConstants = models.TrajectoryConstants


class TestSensorConfig:
    """Test SensorConfig model validation."""

    def test_defaults(self):
        """Test default magnetic reference."""
        cfg = SensorConfig()
        assert cfg.r_m == (0.18, 0.0, 0.54)
        np.testing.assert_array_equal(cfg.b_omega_vec, np.zeros(3))

    def test_vector_from_string(self):
        """Test comma-separated vectors are parsed."""
        cfg = SensorConfig(r_m="1, 0, 0")
        assert cfg.r_m == (1.0, 0.0, 0.0)

    def test_vector_from_array(self):
        """Test numpy arrays are accepted."""
        cfg = SensorConfig(b_omega=np.array([0.1, 0.2, 0.3]))
        assert cfg.b_omega == (0.1, 0.2, 0.3)

    def test_zero_field_rejected(self):
        """Test that a zero magnetic reference raises error."""
        with pytest.raises(ValidationError) as exc_info:
            SensorConfig(r_m=(0.0, 0.0, 0.0))

        assert "nonzero" in str(exc_info.value)

    def test_wrong_length_rejected(self):
        """Test that two-component vectors raise error."""
        with pytest.raises(ValidationError):
            SensorConfig(r_m="1, 2")

    def test_negative_noise_rejected(self):
        """Test that noise levels are non-negative."""
        with pytest.raises(ValidationError):
            NoiseConfig(gyro=-0.1)

    def test_noise_activity(self):
        """Test any_active flag."""
        assert not NoiseConfig().any_active
        assert NoiseConfig(mag=0.01).any_active

    def test_frozen(self):
        """Test that configs are immutable."""
        cfg = SensorConfig()
        with pytest.raises(ValidationError):
            cfg.seed = 3


class TestGainConfig:
    """Test GainConfig model validation."""

    def test_reference_defaults(self):
        """Test default gains."""
        g = GainConfig()
        assert (g.k_v, g.k_R, g.k_b, g.rho1, g.rho2) == (1.0, 2.0, 3.0, 1.0, 1.0)

    def test_zero_k_v_rejected(self):
        """Test that k_v must be positive."""
        with pytest.raises(ValidationError):
            GainConfig(k_v=0.0)

    def test_zero_corrections_allowed(self):
        """Test that k_R, k_b and the weights may be switched off."""
        g = GainConfig(k_R=0.0, k_b=0.0, rho1=0.0, rho2=0.0)
        assert g.k_R == 0.0

    def test_bias_bound_positive(self):
        """Test that c5 and the boundary layer are positive."""
        with pytest.raises(ValidationError):
            GainConfig(c5=0.0)
        with pytest.raises(ValidationError):
            GainConfig(eps_proj=-1.0)


class TestHybridConfig:
    """Test HybridConfig model validation."""

    def test_defaults_admissible(self):
        """Test default delta and alpha."""
        cfg = HybridConfig()
        assert cfg.delta == 3.6
        np.testing.assert_array_equal(cfg.basis_matrix, np.eye(3))

    def test_delta_too_low(self):
        """Test that delta must exceed 3 + 5 alpha / 2."""
        with pytest.raises(ValidationError) as exc_info:
            HybridConfig(delta=3.4, alpha=0.2)

        assert "delta must lie in" in str(exc_info.value)

    def test_delta_too_high(self):
        """Test that delta must stay below 4 - alpha."""
        with pytest.raises(ValidationError):
            HybridConfig(delta=3.85, alpha=0.2)

    def test_alpha_range(self):
        """Test that alpha lies in (0, 2/7)."""
        with pytest.raises(ValidationError):
            HybridConfig(alpha=0.3, delta=3.7)
        with pytest.raises(ValidationError):
            HybridConfig(alpha=0.0, delta=3.5)

    def test_basis_from_string(self):
        """Test that nine numbers make a basis."""
        cfg = HybridConfig(basis="0,1,0, 1,0,0, 0,0,1")
        np.testing.assert_array_equal(cfg.basis_matrix[0], [0.0, 1.0, 0.0])

    def test_basis_needs_nine_numbers(self):
        """Test that short bases raise error."""
        with pytest.raises(ValidationError):
            HybridConfig(basis="1,0,0, 0,1,0")

    def test_basis_must_be_orthonormal(self):
        """Test that skewed axes raise error."""
        with pytest.raises(ValidationError) as exc_info:
            HybridConfig(basis=((1, 0, 0), (1, 1, 0), (0, 0, 1)))

        assert "orthonormal" in str(exc_info.value)

    def test_rotated_basis_accepted(self):
        """Test that any orthonormal basis is accepted."""
        c, s = math.cos(0.3), math.sin(0.3)
        cfg = HybridConfig(basis=np.array([[c, s, 0.0], [-s, c, 0.0], [0.0, 0.0, 1.0]]))
        assert cfg.basis_matrix.shape == (3, 3)


class TestInitialEstimate:
    """Test InitialEstimate parsing."""

    def test_measured_velocity(self):
        """Test that 'measured' means use the sensor."""
        assert InitialEstimate(v_hat="measured").v_hat is None
        assert InitialEstimate(v_hat=" Measured ").v_hat is None

    def test_explicit_velocity(self):
        """Test explicit initial velocity."""
        assert InitialEstimate(v_hat="1,2,3").v_hat == (1.0, 2.0, 3.0)


class TestScenarioConfig:
    """Test ScenarioConfig model validation."""

    def test_default_bias_is_five_degrees(self):
        """Test default gyro bias of 5 deg/s per axis."""
        cfg = ScenarioConfig()
        np.testing.assert_allclose(cfg.sensors.b_omega_vec, np.full(3, math.radians(5.0)))

    def test_unknown_trajectory(self):
        """Test that unknown trajectories raise error."""
        with pytest.raises(ValidationError) as exc_info:
            ScenarioConfig(trajectory="corkscrew")

        assert "Unknown trajectory" in str(exc_info.value)

    def test_step_limit(self):
        """Test that dt is capped at 0.1 s."""
        with pytest.raises(ValidationError):
            SimulationSettings(dt=0.5)

    def test_empty_name_rejected(self):
        """Test that names are non-empty."""
        with pytest.raises(ValidationError):
            ScenarioConfig(name="   ")

    def test_mode_laws(self):
        """Test the observer law behind each mode."""
        assert ScenarioMode.CONTINUOUS.law is ObserverLaw.PROPOSED
        assert ScenarioMode.HYBRID.law is ObserverLaw.PROPOSED
        assert ScenarioMode.HUA2010.law is ObserverLaw.HUA2010
        assert ScenarioMode.ROBERTS2011.law is ObserverLaw.ROBERTS2011


class TestReports:
    """Test TrajectoryConstants and Certificate."""

    def _constants(self, **overrides):
        values = dict(c0=0.5, c1=1.0, c2=2.0, c3=0.5, c4=1.0, c5=0.1, c_a=1.9, c_b=0.25,
                      lambda_min_Abar=0.5, lambda_max_Abar=2.0)
        values.update(overrides)
        return TrajectoryConstants(**values)

    def test_constants_hold_without_violations(self):
        """Test holds flag."""
        assert self._constants().holds

    def test_c1_above_c2_rejected(self):
        """Test that c1 <= c2."""
        with pytest.raises(ValidationError):
            self._constants(c1=3.0)

    def test_certificate_flags(self):
        """Test satisfied and unbounded properties."""
        base = dict(epsilon_R=0.5, epsilon_a=1.0, mu=0.1, B_a=1.0, c_omega=1.0,
                    alpha1=1.0, alpha2=1.0, alpha3=1.0, alpha4=1.0, mu_max=0.2,
                    k_R_attitude=1.0, k_R_lyapunov=1.0, k_R_min=1.0,
                    k_v_transient=1.0, k_v_star=1.0, k_v_cross=1.0, k_v_bias=1.0,
                    k_v_min=1.0, t_R_lower=1.0, t_a_upper=0.5)
        ok = Certificate(**base, conditions={"mu": ConditionCheck(satisfied=True, margin=0.1)})
        assert ok.satisfied and not ok.unbounded

        bad = Certificate(**{**base, "k_R_min": math.inf},
                          conditions={"k_R": ConditionCheck(satisfied=False, margin=-math.inf)})
        assert not bad.satisfied
        assert bad.unbounded
