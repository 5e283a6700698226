#!/usr/bin/env python3
"""Unit tests for the SO(3) helpers."""

import math
import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from src.exceptions import SO3DomainError
from src.geometry.so3 import (
    E1, E2, E3, IDENTITY, angle_axis, as_vec3, e_matrix, half_turn, is_rotation,
    projection_antisymmetric, psi, renormalize, rotation_angle, skew,
    so3_distance, so3_distance_frobenius, so3_distance_sq, vex,
)

finite = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False, allow_infinity=False)
vectors = st.tuples(finite, finite, finite).map(np.array)
axes = vectors.filter(lambda v: np.linalg.norm(v) > 1e-3).map(lambda v: v / np.linalg.norm(v))
angles = st.floats(min_value=0.0, max_value=math.pi)
rotations = st.builds(angle_axis, angles, axes)


class TestSkewVex:
    """Test the R^3 <-> so(3) isomorphism."""

    @given(vectors, vectors)
    def test_skew_is_cross_product(self, a, b):
        """skew(a) @ b equals a x b."""
        np.testing.assert_allclose(skew(a) @ b, np.cross(a, b), atol=1e-9)

    @given(vectors, vectors)
    def test_trace_of_skew_product(self, u, v):
        """tr([u]_x [v]_x) = -2 u^T v."""
        assert np.trace(skew(u) @ skew(v)) == pytest.approx(-2.0 * float(u @ v), abs=1e-9)

    @given(vectors)
    def test_vex_inverts_skew(self, a):
        """vex(skew(a)) recovers a exactly."""
        np.testing.assert_array_equal(vex(skew(a)), a)

    def test_skew_of_e3(self):
        """[e3]_x has the textbook layout."""
        expected = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
        np.testing.assert_array_equal(skew(E3), expected)

    def test_worked_examples(self):
        """Hand-evaluated cross products and their inverse."""
        np.testing.assert_array_equal(skew([1.0, 2.0, 3.0]) @ E1, [0.0, 3.0, -2.0])
        m = np.array([[0.0, -3.0, 2.0], [3.0, 0.0, -1.0], [-2.0, 1.0, 0.0]])
        np.testing.assert_array_equal(vex(m), [1.0, 2.0, 3.0])
        np.testing.assert_array_equal(vex(np.zeros((3, 3))), np.zeros(3))

    def test_vex_rejects_symmetric_matrix(self):
        """A matrix with a symmetric part is outside so(3)."""
        with pytest.raises(SO3DomainError):
            vex(np.eye(3))

    def test_vex_is_a_value_error(self):
        """Domain errors can be caught as ValueError."""
        with pytest.raises(ValueError):
            vex(np.ones((3, 3)))


class TestPsi:
    """Test psi and the antisymmetric projection."""

    @given(st.lists(finite, min_size=9, max_size=9))
    def test_psi_is_vex_of_antisymmetric_part(self, entries):
        """psi(A) = vex(P_a(A))."""
        a = np.array(entries).reshape(3, 3)
        np.testing.assert_allclose(psi(a), vex(projection_antisymmetric(a)), atol=1e-12)

    def test_psi_of_generator(self):
        """psi picks out the rotation generator about e1."""
        a = np.array([[0.0, 0.0, 0.0], [0.0, 0.0, -1.0], [0.0, 1.0, 0.0]])
        np.testing.assert_array_equal(psi(a), E1)
        np.testing.assert_array_equal(psi(IDENTITY), np.zeros(3))

    def test_psi_of_symmetric_matrix_is_zero(self):
        """Symmetric matrices have no rotational part."""
        a = np.array([[2.0, 1.0, 0.5], [1.0, 3.0, -1.0], [0.5, -1.0, 1.0]])
        np.testing.assert_array_equal(psi(a), np.zeros(3))

    @given(rotations)
    def test_antisymmetric_part_of_rotation(self, r):
        """P_a(R) = [psi(R)]_x."""
        np.testing.assert_allclose(projection_antisymmetric(r), skew(psi(r)), atol=1e-12)

    @given(rotations)
    def test_psi_norm_from_distance(self, r):
        """|psi(R)|^2 = 4 |R|_I^2 (1 - |R|_I^2)."""
        d2 = so3_distance_sq(r)
        assert float(psi(r) @ psi(r)) == pytest.approx(4.0 * d2 * (1.0 - d2), abs=1e-9)

    @given(rotations)
    def test_psi_norm_bounded_by_twice_distance(self, r):
        """|psi(R)| <= 2 |R|_I."""
        assert np.linalg.norm(psi(r)) <= 2.0 * so3_distance(r) + 1e-12


class TestAngleAxis:
    """Test rotation construction."""

    @given(angles, axes)
    def test_result_is_rotation(self, theta, u):
        """Rodrigues output lies on SO(3)."""
        assert is_rotation(angle_axis(theta, u))

    @given(angles, axes)
    def test_rotation_angle_recovered(self, theta, u):
        """rotation_angle inverts the construction on [0, pi]."""
        assert rotation_angle(angle_axis(theta, u)) == pytest.approx(theta, abs=1e-7)

    def test_quarter_turn_about_z(self):
        """A quarter-turn about e3 maps e1 to e2."""
        np.testing.assert_allclose(angle_axis(math.pi / 2, E3) @ E1, E2, atol=1e-15)

    def test_non_unit_axis_rejected(self):
        """Axes must be normalized."""
        with pytest.raises(SO3DomainError):
            angle_axis(0.3, [1.0, 1.0, 0.0])

    @given(axes)
    def test_half_turn_closed_form(self, u):
        """R_a(pi, u) = -I + 2 u u^T."""
        np.testing.assert_allclose(half_turn(u), -IDENTITY + 2.0 * np.outer(u, u), atol=1e-12)


class TestDistance:
    """Test the normalized distance |R|_I."""

    def test_identity_has_zero_distance(self):
        """|I|_I = 0."""
        assert so3_distance(IDENTITY) == 0.0

    @given(axes)
    def test_half_turns_have_unit_distance(self, u):
        """Every half-turn is at distance one."""
        assert so3_distance(half_turn(u)) == pytest.approx(1.0, abs=1e-12)

    @given(rotations)
    def test_trace_and_frobenius_forms_agree(self, r):
        """tr(I - R)/4 equals ||I - R||_F^2 / 8."""
        assert so3_distance_sq(r) == pytest.approx(so3_distance_frobenius(r), abs=1e-12)

    @given(angles, axes)
    def test_distance_is_sin_half_angle(self, theta, u):
        """|R_a(theta, u)|_I = sin(theta / 2)."""
        assert so3_distance(angle_axis(theta, u)) == pytest.approx(math.sin(theta / 2), abs=1e-12)


class TestEMatrix:
    """Test the bounds on I - E(R)."""

    @settings(max_examples=200)
    @given(rotations, vectors)
    def test_quadratic_bound(self, r, x):
        """x^T (I - E(R)) x <= 2 |R|_I^2 |x|^2."""
        lhs = x @ (IDENTITY - e_matrix(r)) @ x
        assert lhs <= 2.0 * so3_distance_sq(r) * (x @ x) + 1e-9

    @settings(max_examples=200)
    @given(rotations, vectors, vectors)
    def test_bilinear_bound(self, r, x, y):
        """x^T (I - E(R)) y <= (2 |R|_I^2 + sqrt(2) |R|_I) |x| |y|."""
        d = so3_distance(r)
        lhs = x @ (IDENTITY - e_matrix(r)) @ y
        assert lhs <= (2.0 * d ** 2 + math.sqrt(2.0) * d) * np.linalg.norm(x) * np.linalg.norm(y) + 1e-9

    def test_e_of_identity(self):
        """E(I) = I."""
        np.testing.assert_array_equal(e_matrix(IDENTITY), IDENTITY)


class TestRenormalize:
    """Test projection back onto SO(3)."""

    def test_small_perturbation_removed(self, rng):
        """A rotation plus 1e-6 noise comes back orthonormal and close."""
        r = angle_axis(1.1, np.array([0.0, 0.6, 0.8]))
        noisy = r + 1e-6 * rng.normal(size=(3, 3))
        fixed = renormalize(noisy)
        assert is_rotation(fixed)
        assert np.max(np.abs(fixed - r)) < 1e-5

    def test_rotation_is_fixed_point(self):
        """Renormalizing a rotation leaves it unchanged."""
        r = angle_axis(2.0, E1)
        np.testing.assert_allclose(renormalize(r), r, atol=1e-14)

    def test_scaling_removed(self):
        """A uniformly scaled identity projects back to the identity."""
        np.testing.assert_allclose(renormalize(1.001 * IDENTITY), IDENTITY, atol=1e-14)

    def test_half_turn_about_z(self):
        """R_a(pi, e3) = diag(-1, -1, 1)."""
        np.testing.assert_allclose(half_turn(E3), np.diag([-1.0, -1.0, 1.0]), atol=1e-15)

    def test_far_matrix_rejected(self):
        """Matrices far from SO(3) are an error, not silently projected."""
        with pytest.raises(SO3DomainError):
            renormalize(2.0 * IDENTITY)

    def test_reflection_rejected(self):
        """The polar factor of a reflection is not a rotation."""
        with pytest.raises(SO3DomainError):
            renormalize(np.diag([1.0, 1.0, -1.0]))


class TestAsVec3:
    """Test vector coercion."""

    def test_list_accepted(self):
        """Plain sequences become float arrays."""
        np.testing.assert_array_equal(as_vec3([1, 2, 3]), np.array([1.0, 2.0, 3.0]))

    def test_wrong_shape_rejected(self):
        """Only three components are accepted."""
        with pytest.raises(ValueError):
            as_vec3([1.0, 2.0])

    def test_nan_rejected(self):
        """Non-finite components are rejected."""
        with pytest.raises(ValueError):
            as_vec3([1.0, float("nan"), 0.0])
