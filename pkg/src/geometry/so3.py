"""Small-matrix rotation algebra on SO(3).

Rotations are plain 3x3 numpy arrays. Every operation here is pure and
works on copies, so results can be shared freely between runs.
"""

import math
from typing import Sequence, Union

import numpy as np
from numpy.typing import NDArray
from scipy.linalg import polar

from src.exceptions import SO3DomainError

Vec3 = NDArray[np.float64]
Mat3 = NDArray[np.float64]
RotationMatrix = NDArray[np.float64]
VectorLike = Union[Vec3, Sequence[float]]

# Constructed invariants vs. exact algebraic identities
INVARIANT_TOL = 1e-9
IDENTITY_TOL = 1e-12

# Largest Frobenius distance from SO(3) accepted by renormalize()
MAX_RENORMALIZE_DISTANCE = 0.1

IDENTITY = np.eye(3)
E1 = np.array([1.0, 0.0, 0.0])
E2 = np.array([0.0, 1.0, 0.0])
E3 = np.array([0.0, 0.0, 1.0])


def as_vec3(v: VectorLike) -> Vec3:
    """Coerce to a finite float vector of length three."""
    arr = np.asarray(v, dtype=float).reshape(-1)
    if arr.shape != (3,):
        raise ValueError(f"Expected a 3-vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"Vector has non-finite components: {arr}")
    return arr


def skew(v: VectorLike) -> Mat3:
    """Return the cross-product matrix [v]_x, so that skew(v) @ w == v x w."""
    x, y, z = np.asarray(v, dtype=float).reshape(3)
    return np.array([
        [0.0, -z, y],
        [z, 0.0, -x],
        [-y, x, 0.0],
    ])


def vex(m: Mat3, tol: float = INVARIANT_TOL) -> Vec3:
    """Inverse of skew.

    Args:
        m: Antisymmetric 3x3 matrix.
        tol: Largest accepted entry of m + m^T.

    Returns:
        The vector v with skew(v) == m.

    Raises:
        SO3DomainError: If m is not antisymmetric within tol.
    """
    m = np.asarray(m, dtype=float)
    asym = np.max(np.abs(m + m.T))
    if asym > tol:
        raise SO3DomainError(f"vex() needs an antisymmetric matrix (|m + m^T| = {asym:.3e})")
    return np.array([m[2, 1], m[0, 2], m[1, 0]])


def projection_antisymmetric(a: Mat3) -> Mat3:
    """P_a(A) = (A - A^T) / 2."""
    a = np.asarray(a, dtype=float)
    return 0.5 * (a - a.T)


def psi(a: Mat3) -> Vec3:
    """vex of the antisymmetric part of ``a``."""
    a = np.asarray(a, dtype=float)
    return 0.5 * np.array([
        a[2, 1] - a[1, 2],
        a[0, 2] - a[2, 0],
        a[1, 0] - a[0, 1],
    ])


def angle_axis(theta: float, u: VectorLike) -> RotationMatrix:
    """Rotation by ``theta`` radians about the unit axis ``u`` (Rodrigues form).

    Raises:
        SO3DomainError: If ``u`` is not a unit vector within 1e-9.
    """
    u = np.asarray(u, dtype=float).reshape(3)
    norm = float(np.linalg.norm(u))
    if abs(norm - 1.0) > INVARIANT_TOL:
        raise SO3DomainError(f"Rotation axis must be a unit vector (|u| = {norm:.12f})")
    k = skew(u)
    return IDENTITY + math.sin(theta) * k + (1.0 - math.cos(theta)) * (k @ k)


def so3_distance_sq(r: RotationMatrix) -> float:
    """|R|_I^2 = tr(I - R) / 4, clipped to [0, 1]."""
    value = 0.25 * (3.0 - float(np.trace(r)))
    return min(max(value, 0.0), 1.0)


def so3_distance_frobenius(r: RotationMatrix) -> float:
    """|R|_I^2 via the ||I - R||_F^2 / 8 form."""
    return float(np.sum((IDENTITY - np.asarray(r, dtype=float)) ** 2)) / 8.0


def so3_distance(r: RotationMatrix) -> float:
    """Normalized distance |R|_I in [0, 1]: 0 at the identity, 1 at any half-turn.

    Uses the Frobenius form, which keeps full relative precision near the identity.
    """
    return math.sqrt(min(max(so3_distance_frobenius(r), 0.0), 1.0))


def rotation_angle(r: RotationMatrix) -> float:
    """Rotation angle of ``r`` in [0, pi]."""
    sin_theta = float(np.linalg.norm(psi(r)))
    cos_theta = 0.5 * (float(np.trace(r)) - 1.0)
    return math.atan2(sin_theta, cos_theta)


def e_matrix(r: RotationMatrix) -> Mat3:
    """E(R) = (tr(R) I - R) / 2, which maps rotation rates onto the rate of psi(R)."""
    r = np.asarray(r, dtype=float)
    return 0.5 * (float(np.trace(r)) * IDENTITY - r)


def is_rotation(m: Mat3, tol: float = INVARIANT_TOL) -> bool:
    """True if ``m`` is orthogonal with unit determinant within ``tol``."""
    m = np.asarray(m, dtype=float)
    if m.shape != (3, 3) or not np.all(np.isfinite(m)):
        return False
    ortho = np.linalg.norm(m.T @ m - IDENTITY)
    return bool(ortho <= tol and abs(np.linalg.det(m) - 1.0) <= tol)


def renormalize(m: Mat3) -> RotationMatrix:
    """Nearest rotation to ``m`` (orthogonal polar factor).

    Raises:
        SO3DomainError: If ``m`` is farther than 0.1 (Frobenius) from SO(3) or
            its polar factor is a reflection.
    """
    m = np.asarray(m, dtype=float)
    if m.shape != (3, 3) or not np.all(np.isfinite(m)):
        raise SO3DomainError("renormalize() needs a finite 3x3 matrix")
    u, _ = polar(m)
    if np.linalg.det(u) < 0.0:
        raise SO3DomainError("Matrix is closer to a reflection than to a rotation")
    gap = float(np.linalg.norm(m - u))
    if gap > MAX_RENORMALIZE_DISTANCE:
        raise SO3DomainError(f"Matrix is {gap:.3e} away from SO(3); refusing to renormalize")
    return u


def half_turn(u: VectorLike) -> RotationMatrix:
    """R_a(pi, u) = -I + 2 u u^T for a unit axis ``u``."""
    return angle_axis(math.pi, u)
