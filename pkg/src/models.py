"""Pydantic models for scenario configuration, gains and analysis reports."""

import math
from enum import Enum
from typing import Annotated, Any, Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from pydantic.functional_validators import BeforeValidator

TELEMETRY_SCHEMA_VERSION = "v1"
TELEMETRY_COLUMNS = (
    "t", "j", "attitude_error_deg", "dist_RI", "btilde_x", "btilde_y", "btilde_z",
    "ratilde_norm", "phi", "V", "jump_flag",
)


def _parse_vector(value: Any) -> Any:
    """Accept '1, 2, 3' strings and numpy arrays wherever a 3-vector is expected."""
    if isinstance(value, str):
        parts = [p for p in value.replace(";", ",").split(",") if p.strip()]
        return tuple(float(p) for p in parts)
    if isinstance(value, np.ndarray):
        return tuple(float(x) for x in value.reshape(-1))
    return value


Vector3 = Annotated[Tuple[float, float, float], BeforeValidator(_parse_vector)]


class ObserverLaw(str, Enum):
    """Continuous-time observer laws."""
    PROPOSED = "proposed"
    HUA2010 = "hua2010"
    ROBERTS2011 = "roberts2011"


class ScenarioMode(str, Enum):
    """What run_scenario simulates."""
    CONTINUOUS = "continuous"
    HYBRID = "hybrid"
    HUA2010 = "hua2010"
    ROBERTS2011 = "roberts2011"

    @property
    def law(self) -> ObserverLaw:
        if self in (ScenarioMode.CONTINUOUS, ScenarioMode.HYBRID):
            return ObserverLaw.PROPOSED
        return ObserverLaw(self.value)


class CandidateSurrogate(str, Enum):
    """How the acceleration surrogate is formed when scoring jump candidates."""
    HELD = "held"                # pre-jump R_hat b_a + k_v (v - v_hat) for every candidate
    REEVALUATED = "reevaluated"  # candidate attitude substituted into the surrogate


class NoiseConfig(BaseModel):
    """Standard deviations of additive white Gaussian sensor noise."""
    model_config = ConfigDict(frozen=True)

    gyro: float = Field(0.0, ge=0.0, description="Gyro noise (rad/s)")
    accel: float = Field(0.0, ge=0.0, description="Accelerometer noise (m/s^2)")
    mag: float = Field(0.0, ge=0.0, description="Magnetometer noise (field units)")
    velocity: float = Field(0.0, ge=0.0, description="Velocity sensor noise (m/s)")

    @property
    def any_active(self) -> bool:
        return any(s > 0.0 for s in (self.gyro, self.accel, self.mag, self.velocity))


class SensorConfig(BaseModel):
    """Sensor geometry, true gyro bias and noise levels."""
    model_config = ConfigDict(frozen=True)

    r_m: Vector3 = Field((0.18, 0.0, 0.54), description="Inertial magnetic field direction")
    b_omega: Vector3 = Field((0.0, 0.0, 0.0), description="True constant gyro bias (rad/s)")
    noise: NoiseConfig = Field(default_factory=NoiseConfig)
    seed: int = Field(0, description="Seed of the per-run noise generator")

    @field_validator('r_m')
    @classmethod
    def validate_r_m(cls, v: Tuple[float, float, float]) -> Tuple[float, float, float]:
        if math.sqrt(sum(x * x for x in v)) == 0.0:
            raise ValueError("Magnetic field reference r_m must be nonzero")
        return v

    @property
    def r_m_vec(self) -> np.ndarray:
        return np.array(self.r_m, dtype=float)

    @property
    def b_omega_vec(self) -> np.ndarray:
        return np.array(self.b_omega, dtype=float)


class GainConfig(BaseModel):
    """Observer gains and projection parameters.

    k_R, k_b, rho1 and rho2 may be zero to switch a correction off; k_v
    divides the velocity correction and must be positive.
    """
    model_config = ConfigDict(frozen=True)

    k_v: float = Field(1.0, gt=0.0, description="Velocity innovation gain")
    k_R: float = Field(2.0, ge=0.0, description="Attitude innovation gain")
    k_b: float = Field(3.0, ge=0.0, description="Bias adaptation gain")
    rho1: float = Field(1.0, ge=0.0, description="Magnetometer weight")
    rho2: float = Field(1.0, ge=0.0, description="Accelerometer weight")
    c5: float = Field(0.25, gt=0.0, description="Known bound on the gyro bias norm (rad/s)")
    eps_proj: float = Field(0.05, gt=0.0, description="Projection boundary-layer width (rad/s)")


class HybridConfig(BaseModel):
    """Jump threshold, perturbation budget and candidate half-turn axes."""
    model_config = ConfigDict(frozen=True)

    delta: float = Field(3.6, description="Jump threshold on Phi")
    alpha: float = Field(0.2, description="Budget on |Phi - Phi0|")
    basis: Tuple[Vector3, Vector3, Vector3] = Field(
        ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0)),
        description="Orthonormal candidate axes u1, u2, u3",
    )
    candidate_surrogate: CandidateSurrogate = CandidateSurrogate.HELD
    preserve_acceleration_estimate: bool = Field(
        False, description="Shift v_hat at a jump so R_hat b_a + k_v (v - v_hat) is continuous",
    )

    @field_validator('basis', mode='before')
    @classmethod
    def parse_basis(cls, v: Any) -> Any:
        if isinstance(v, str):
            flat = _parse_vector(v)
            if len(flat) != 9:
                raise ValueError(f"Basis needs nine numbers, got {len(flat)}")
            return (flat[0:3], flat[3:6], flat[6:9])
        if isinstance(v, np.ndarray):
            return tuple(tuple(float(x) for x in row) for row in v.reshape(3, 3))
        return v

    @model_validator(mode='after')
    def validate_admissible(self) -> 'HybridConfig':
        if not (0.0 < self.alpha < 2.0 / 7.0):
            raise ValueError(f"alpha must satisfy 0 < alpha < 2/7, got {self.alpha}")
        low, high = 3.0 + 2.5 * self.alpha, 4.0 - self.alpha
        if not (low < self.delta < high):
            raise ValueError(f"delta must lie in ({low:.4f}, {high:.4f}) for alpha={self.alpha}, got {self.delta}")
        u = self.basis_matrix
        if np.max(np.abs(u @ u.T - np.eye(3))) > 1e-9:
            raise ValueError("Candidate axes must be orthonormal")
        return self

    @property
    def basis_matrix(self) -> np.ndarray:
        """Rows are u1, u2, u3."""
        return np.array(self.basis, dtype=float)


class InitialEstimate(BaseModel):
    """Observer initial condition. v_hat=None means 'use the measured velocity'."""
    model_config = ConfigDict(frozen=True)

    r_hat_axis: Vector3 = (0.0, 0.0, 1.0)
    r_hat_angle_deg: float = 0.0
    v_hat: Optional[Vector3] = None
    b_hat: Vector3 = (0.0, 0.0, 0.0)

    @field_validator('v_hat', mode='before')
    @classmethod
    def parse_measured(cls, v: Any) -> Any:
        if isinstance(v, str) and v.strip().lower() == "measured":
            return None
        return v


class SimulationSettings(BaseModel):
    """Time grid and output of one run."""
    model_config = ConfigDict(frozen=True)

    dt: float = Field(1e-3, gt=0.0, le=0.1, description="Fixed RK4 step (s)")
    t_end: float = Field(60.0, gt=0.0, description="Final time (s)")
    log_every: int = Field(10, ge=1, description="Write every n-th flow sample to the CSV")
    mu: float = Field(0.05, gt=0.0, description="Cross-term weight of the Lyapunov function")
    output: Optional[str] = Field(None, description="CSV path; defaults to <output_dir>/<name>_<mode>.csv")


class CertificateSettings(BaseModel):
    """Inputs of the gain certificate that are not trajectory constants."""
    model_config = ConfigDict(frozen=True)

    eps_r: float = Field(0.5, gt=0.0, lt=1.0, description="Attitude error ball radius epsilon_R")
    eps_a: float = Field(1.0, gt=0.0, description="Slack epsilon_a on the initial acceleration error")
    b_a: float = Field(1.0, gt=0.0, description="Ultimate bound B_a on the acceleration error")
    mu: Optional[float] = Field(None, gt=0.0, description="Cross-term weight; half its upper bound if omitted")
    r_a0_norm: Optional[float] = Field(None, ge=0.0, description="Initial acceleration error; from the scenario if omitted")
    c_omega: Optional[float] = Field(None, ge=0.0, description="Angular-rate bound in the cross term; c4 if omitted")
    grid_dt: float = Field(0.01, gt=0.0, description="Sampling step for trajectory constants (s)")


class ScenarioConfig(BaseModel):
    """Everything one simulation run needs."""
    model_config = ConfigDict(frozen=True, str_strip_whitespace=True)

    name: str = Field("reference", min_length=1)
    trajectory: str = Field("reference", description="Registered trajectory id")
    trajectory_params: Dict[str, Vector3] = Field(default_factory=dict)
    mode: ScenarioMode = ScenarioMode.CONTINUOUS
    sensors: SensorConfig = Field(default_factory=lambda: SensorConfig(
        b_omega=tuple(math.radians(5.0) for _ in range(3))))
    gains: GainConfig = Field(default_factory=GainConfig)
    hybrid: HybridConfig = Field(default_factory=HybridConfig)
    init: InitialEstimate = Field(default_factory=InitialEstimate)
    sim: SimulationSettings = Field(default_factory=SimulationSettings)
    certificate: CertificateSettings = Field(default_factory=CertificateSettings)

    @field_validator('trajectory')
    @classmethod
    def validate_trajectory(cls, v: str) -> str:
        from src.simulation.trajectories import TRAJECTORIES
        if v not in TRAJECTORIES:
            raise ValueError(f"Unknown trajectory '{v}'. Known: {sorted(TRAJECTORIES)}")
        return v


class AssumptionViolation(BaseModel):
    """Where a trajectory first breaks an assumption."""
    assumption: str = Field(..., description="observability | acceleration_bounds")
    time: float = Field(..., description="Grid time of the violation (s)")
    value: float = Field(..., description="Offending value")
    message: str


class TrajectoryConstants(BaseModel):
    """Bounds of a trajectory sampled on a time grid."""
    c0: float = Field(..., ge=0.0, description="min |r_m x r_a| / (|r_m| |r_a|)")
    c1: float = Field(..., ge=0.0, description="min |r_a|")
    c2: float = Field(..., ge=0.0, description="max |r_a|")
    c3: float = Field(..., ge=0.0, description="max |r_a_dot|")
    c4: float = Field(..., ge=0.0, description="max |omega|")
    c5: float = Field(..., ge=0.0, description="Gyro bias bound")
    c_a: float = Field(..., ge=0.0, description="sqrt(8) c3 + c2 c_b")
    c_b: float = Field(..., ge=0.0, description="Bound on the bias estimation error")
    lambda_min_Abar: float
    lambda_max_Abar: float
    violations: List[AssumptionViolation] = Field(default_factory=list)

    @model_validator(mode='after')
    def validate_order(self) -> 'TrajectoryConstants':
        if self.c1 > self.c2:
            raise ValueError(f"c1 ({self.c1}) exceeds c2 ({self.c2})")
        return self

    @property
    def holds(self) -> bool:
        return not self.violations


class ConditionCheck(BaseModel):
    """One inequality of the certificate. margin > 0 means satisfied."""
    satisfied: bool
    margin: float
    detail: str = ""


class Certificate(BaseModel):
    """Evaluated sufficient gain conditions for the continuous observer."""
    epsilon_R: float = Field(..., gt=0.0, lt=1.0)
    epsilon_a: float = Field(..., gt=0.0)
    mu: float = Field(..., gt=0.0)
    B_a: float = Field(..., gt=0.0)
    c_omega: float
    alpha1: float
    alpha2: float
    alpha3: float
    alpha4: float
    mu_max: float = Field(..., description="Upper bound on mu")
    k_R_attitude: float = Field(..., description="Bound keeping the attitude error ball invariant")
    k_R_lyapunov: float = Field(..., description="Bound making the Lyapunov cross terms dominated")
    k_R_min: float
    k_v_transient: float
    k_v_star: float
    k_v_cross: float
    k_v_bias: float
    k_v_hybrid: Optional[float] = None
    k_v_min: float
    t_R_lower: float = Field(..., description="Lower bound on the time the attitude error stays in the ball")
    t_a_upper: float = Field(..., description="Upper bound on the time to enter the acceleration error bound")
    conditions: Dict[str, ConditionCheck] = Field(default_factory=dict)

    @property
    def satisfied(self) -> bool:
        return all(c.satisfied for c in self.conditions.values())

    @property
    def unbounded(self) -> bool:
        """True when a required gain is infinite."""
        return not (math.isfinite(self.k_R_min) and math.isfinite(self.k_v_min))


class JumpRecord(BaseModel):
    """Serializable form of a jump event."""
    t: float
    j_before: int
    phi_before: float
    phi_after: float
    axis: Vector3


class RunSummary(BaseModel):
    """Outcome of one run_scenario call."""
    scenario: str
    mode: ScenarioMode
    schema_version: str = TELEMETRY_SCHEMA_VERSION
    csv_path: str
    samples: int
    t_end: float
    final_attitude_error_deg: float
    final_bias_error: float
    final_accel_error: float
    convergence_times: Dict[str, Optional[float]] = Field(default_factory=dict)
    jumps: List[JumpRecord] = Field(default_factory=list)
    guard_violations: int = 0
