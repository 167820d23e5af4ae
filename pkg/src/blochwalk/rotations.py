"""Exact SO(3) rotation algebra on plain NumPy arrays.

Vectors are shape-(3,) float arrays, rotations are 3x3 orthogonal matrices
with determinant +1.  Everything follows the right-handed convention fixed
by the precession equation dr/dt = w x r: a positive angle about +z carries
x into y.

Angles handled here are in radians; pulse descriptions elsewhere store
angles in units of pi and convert on entry.
"""

from __future__ import annotations

import math

import numpy as np

X_AXIS = np.array([1.0, 0.0, 0.0])
Y_AXIS = np.array([0.0, 1.0, 0.0])
Z_AXIS = np.array([0.0, 0.0, 1.0])
IDENTITY = np.eye(3)

ORTHOGONALITY_TOL = 1e-12


def cross_matrix(v: np.ndarray) -> np.ndarray:
    """Return the matrix [v]_x such that [v]_x a = v x a."""
    x, y, z = v
    return np.array([[0.0, -z, y], [z, 0.0, -x], [-y, x, 0.0]])


def axis_angle_rotation(axis: np.ndarray, angle: float) -> np.ndarray:
    """Rotation by `angle` (radians) about `axis` via the Rodrigues formula.

    The axis need not be normalized; only its direction is used.  A zero
    axis is allowed only for a zero angle (identity).

    Raises
    ------
    ValueError
        If the axis is zero while the angle is not.
    """
    axis = np.asarray(axis, dtype=float)
    norm = np.linalg.norm(axis)
    if norm == 0.0:
        if angle == 0.0:
            return np.eye(3)
        raise ValueError("rotation axis must be nonzero for a nonzero angle")
    k = cross_matrix(axis / norm)
    return np.eye(3) + math.sin(angle) * k + (1.0 - math.cos(angle)) * (k @ k)


def compose(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Rotation applying `b` first, then `a` (plain matrix product)."""
    return a @ b


def rotate(rotation: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Apply a rotation matrix to a vector."""
    return rotation @ np.asarray(v, dtype=float)


def is_rotation(matrix: np.ndarray, tol: float = ORTHOGONALITY_TOL) -> bool:
    """Check orthogonality and det = +1 within `tol`."""
    matrix = np.asarray(matrix, dtype=float)
    if matrix.shape != (3, 3):
        return False
    ortho = np.max(np.abs(matrix @ matrix.T - np.eye(3)))
    return ortho <= tol and abs(np.linalg.det(matrix) - 1.0) <= tol


def normalize_half_turns(x):
    """Reduce an angle in units of pi to the branch (-1, 1].

    Works on scalars and arrays.  Values equivalent to pi map to +1, not -1.
    """
    x = np.asarray(x, dtype=float)
    y = np.remainder(x + 1.0, 2.0) - 1.0
    y = np.where(y == -1.0, 1.0, y)
    if y.ndim == 0:
        return float(y)
    return y


def unit_vector(v: np.ndarray) -> np.ndarray:
    """v / |v|, raising on a zero vector."""
    v = np.asarray(v, dtype=float)
    norm = np.linalg.norm(v)
    if norm == 0.0:
        raise ValueError("cannot normalize the zero vector")
    return v / norm


def planar_unit(phase_over_pi: float) -> np.ndarray:
    """Unit vector in the xy-plane at azimuth `phase_over_pi` (units of pi)."""
    phi = math.pi * phase_over_pi
    return np.array([math.cos(phi), math.sin(phi), 0.0])
