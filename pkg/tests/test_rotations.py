"""Rotation algebra: exactness, conventions, and invariants."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from blochwalk.rotations import (
    IDENTITY,
    X_AXIS,
    Y_AXIS,
    Z_AXIS,
    axis_angle_rotation,
    compose,
    is_rotation,
    normalize_half_turns,
    planar_unit,
    rotate,
    unit_vector,
)

ANGLES = st.floats(min_value=-4 * math.pi, max_value=4 * math.pi, allow_nan=False)
COMPONENTS = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False)


def test_identity_rotation_keeps_vector():
    assert_allclose(rotate(IDENTITY, [1.0, 2.0, 3.0]), [1.0, 2.0, 3.0])


def test_pi_about_x_flips_z():
    r = axis_angle_rotation(X_AXIS, math.pi)
    assert_allclose(rotate(r, Z_AXIS), -Z_AXIS, atol=1e-15)


def test_right_handed_quarter_turn_about_z():
    r = axis_angle_rotation(Z_AXIS, math.pi / 2)
    assert_allclose(rotate(r, X_AXIS), Y_AXIS, atol=1e-15)


def test_full_turn_is_identity():
    r = axis_angle_rotation(X_AXIS, 2 * math.pi)
    assert np.max(np.abs(r - IDENTITY)) < 1e-12


def test_planar_rotation_about_z():
    r = axis_angle_rotation(Z_AXIS, math.pi / 3)
    assert_allclose(rotate(r, X_AXIS), [math.cos(math.pi / 3), math.sin(math.pi / 3), 0.0], atol=1e-15)


def test_zero_axis_with_nonzero_angle_raises():
    with pytest.raises(ValueError):
        axis_angle_rotation(np.zeros(3), 0.1)


def test_zero_axis_zero_angle_is_identity():
    assert_allclose(axis_angle_rotation(np.zeros(3), 0.0), IDENTITY)


def test_compose_of_quarter_turns_is_valid_rotation():
    r = compose(axis_angle_rotation(X_AXIS, math.pi / 2), axis_angle_rotation(Y_AXIS, math.pi / 2))
    assert is_rotation(r)


def test_compose_with_inverse_gives_identity(rng):
    r = axis_angle_rotation(rng.normal(size=3), rng.uniform(-3, 3))
    assert np.max(np.abs(compose(r, r.T) - IDENTITY)) < 1e-12


def test_compose_identity_is_neutral(rng):
    r = axis_angle_rotation(rng.normal(size=3), 1.234)
    assert_allclose(compose(IDENTITY, r), r)


def test_compose_matches_matrix_product_fold(rng):
    mats = [axis_angle_rotation(rng.normal(size=3), rng.uniform(-3, 3)) for _ in range(4)]
    folded = mats[0] @ mats[1] @ mats[2] @ mats[3]
    composed = compose(mats[0], compose(mats[1], compose(mats[2], mats[3])))
    assert np.max(np.abs(folded - composed)) < 1e-12
    assert is_rotation(composed)


def test_norm_preserved_for_many_random_inputs(rng):
    for _ in range(1000):
        r = axis_angle_rotation(rng.normal(size=3), rng.uniform(-2 * math.pi, 2 * math.pi))
        v = rng.normal(size=3)
        assert abs(np.linalg.norm(rotate(r, v)) - np.linalg.norm(v)) < 1e-12


def test_rotation_distributes_over_cross_product(rng):
    for _ in range(200):
        r = axis_angle_rotation(rng.normal(size=3), rng.uniform(-2 * math.pi, 2 * math.pi))
        a, b = rng.normal(size=3), rng.normal(size=3)
        assert_allclose(rotate(r, np.cross(a, b)), np.cross(rotate(r, a), rotate(r, b)), atol=1e-12)


@given(axis=st.tuples(COMPONENTS, COMPONENTS, COMPONENTS), angle=ANGLES)
def test_axis_angle_always_orthogonal_with_unit_det(axis, angle):
    v = np.array(axis)
    if np.linalg.norm(v) < 1e-6:
        v = np.array([1.0, 0.0, 0.0])
    assert is_rotation(axis_angle_rotation(v, angle))


@given(x=st.floats(min_value=-50, max_value=50, allow_nan=False))
def test_normalize_half_turns_branch(x):
    y = normalize_half_turns(x)
    assert -1.0 < y <= 1.0
    # same angle modulo full turns
    assert abs(normalize_half_turns(y - x)) < 1e-9 or abs(abs(normalize_half_turns(y - x)) - 0.0) < 1e-9


def test_normalize_half_turns_boundary():
    assert normalize_half_turns(1.0) == 1.0
    assert normalize_half_turns(-1.0) == 1.0
    assert normalize_half_turns(3.0) == 1.0


def test_unit_vector_rejects_zero():
    with pytest.raises(ValueError):
        unit_vector(np.zeros(3))


def test_planar_unit():
    assert_allclose(planar_unit(0.5), Y_AXIS, atol=1e-15)
