"""Rotation algebra."""

from .so3 import (
    E1, E2, E3, IDENTITY,
    Mat3, RotationMatrix, Vec3,
    angle_axis, as_vec3, e_matrix, half_turn, is_rotation,
    projection_antisymmetric, psi, renormalize, rotation_angle,
    skew, so3_distance, so3_distance_frobenius, so3_distance_sq, vex,
)

__all__ = [
    'E1', 'E2', 'E3', 'IDENTITY',
    'Mat3', 'RotationMatrix', 'Vec3',
    'angle_axis', 'as_vec3', 'e_matrix', 'half_turn', 'is_rotation',
    'projection_antisymmetric', 'psi', 'renormalize', 'rotation_angle',
    'skew', 'so3_distance', 'so3_distance_frobenius', 'so3_distance_sq', 'vex',
]
