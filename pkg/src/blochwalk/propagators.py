"""SU(2) propagator route and its bridge to the Bloch-vector picture.

The spin propagator factorizes as U(t) = U0(t) V(t) with U0 the error-free
propagator and V the error propagator generated by the toggling-frame error
field.  The first two Magnus invariants of V are carried by 3-vectors that
are exactly the walk quantities:

    phi1 = p(t_f)            (walk closure residual)
    phi2 = (1/2) oint p x dp (walk vector area, closed walks)

Sign convention: with the time-ordered Magnus series of dV/dt =
-i (w1'.sigma/2) V, the second exponent comes out as -phi2, so the
axis-angle vector of V is a = phi1 - phi2 + O(error^3).  Either sign
carries the same content (suppression means the vector vanishes); this
module reports the area form, matching the classical second-order term
r2' = r0 x phi2.  The commutator identity
[-i A.sigma/2, -i B.sigma/2] = -i (A x B).sigma/2 carries cross products
to commutators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad_vec

from .rotations import Z_AXIS
from .sequences import ErrorModel, Sequence
from .toggling import ErrorIntegral, NominalRotation, TogglingPhases

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
IDENTITY2 = np.eye(2, dtype=complex)

QUAD_TOL = 1e-12


def pauli_dot(v: np.ndarray) -> np.ndarray:
    """v . sigma as a 2x2 matrix."""
    return v[0] * SIGMA_X + v[1] * SIGMA_Y + v[2] * SIGMA_Z


def spin_generator(v: np.ndarray) -> np.ndarray:
    """-i v . sigma / 2, the su(2) element matching the 3-vector v."""
    return -0.5j * pauli_dot(v)


@dataclass(frozen=True)
class Su2Operator:
    """A 2x2 special unitary, compared projectively (global phase dropped)."""

    matrix: np.ndarray

    @classmethod
    def identity(cls) -> "Su2Operator":
        return cls(IDENTITY2.copy())

    @classmethod
    def from_axis_angle_vector(cls, a: np.ndarray) -> "Su2Operator":
        """exp(-i a . sigma / 2) for the rotation 3-vector a (radians)."""
        a = np.asarray(a, dtype=float)
        angle = float(np.linalg.norm(a))
        if angle == 0.0:
            return cls.identity()
        axis = a / angle
        return cls(math.cos(angle / 2) * IDENTITY2 - 1.0j * math.sin(angle / 2) * pauli_dot(axis))

    def __matmul__(self, other: "Su2Operator") -> "Su2Operator":
        return Su2Operator(self.matrix @ other.matrix)

    def dagger(self) -> "Su2Operator":
        return Su2Operator(self.matrix.conj().T)

    def quaternion(self) -> np.ndarray:
        """(w, x, y, z) with U = w I - i (x sx + y sy + z sz), w >= 0.

        Choosing w >= 0 quotients out the global sign, which is the only
        phase freedom left for a determinant-one matrix.
        """
        u = self.matrix
        w = 0.5 * (u[0, 0] + u[1, 1]).real
        x = -0.5 * (u[0, 1] + u[1, 0]).imag
        y = 0.5 * (u[1, 0] - u[0, 1]).real
        z = -0.5 * (u[0, 0] - u[1, 1]).imag
        q = np.array([w, x, y, z])
        if q[0] < 0:
            q = -q
        return q

    @property
    def axis_angle_vector(self) -> np.ndarray:
        """Rotation 3-vector a with |a| <= pi such that U ~ exp(-i a.sigma/2)."""
        w, x, y, z = self.quaternion()
        v = np.array([x, y, z])
        s = float(np.linalg.norm(v))
        if s == 0.0:
            return np.zeros(3)
        angle = 2.0 * math.atan2(s, w)
        return angle * v / s

    def rotation_matrix(self) -> np.ndarray:
        """The SO(3) image: conjugation by U sends sigma.v to sigma.(R v)."""
        w, x, y, z = self.quaternion()
        return np.array(
            [
                [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
                [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
                [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
            ]
        )

    def projectively_equal(self, other: "Su2Operator", tol: float = 1e-10) -> bool:
        return bool(np.max(np.abs(self.quaternion() - other.quaternion())) <= tol)


def propagate(seq: Sequence, err: ErrorModel) -> Su2Operator:
    """Exact propagator: product of per-step exponentials of the total field."""
    u = Su2Operator.identity()
    for step in seq.steps:
        total = (1.0 + err.epsilon) * step.axis + err.delta * Z_AXIS
        u = Su2Operator.from_axis_angle_vector(total * step.duration) @ u
    return u


def error_propagator(seq: Sequence, err: ErrorModel) -> Su2Operator:
    """V = U0^dag U; its axis-angle vector is the total error measure."""
    u0 = propagate(seq, ErrorModel())
    return u0.dagger() @ propagate(seq, err)


@dataclass(frozen=True)
class MagnusTerms:
    """First two Magnus invariants of V as 3-vectors (p and area form).

    See the module docstring for the sign convention: the axis-angle
    vector of V itself is phi1_vector - phi2_vector to second order.
    """

    phi1_vector: np.ndarray
    phi2_vector: np.ndarray


def magnus_terms(seq: Sequence, err: ErrorModel) -> MagnusTerms:
    """First and second Magnus vectors by adaptive quadrature.

    phi1 is the plain time integral of the toggling-frame error field;
    phi2 uses the single-integral form (1/2) int p x dp with the exact
    closed-form p(t) inside the integrand (the nested double-integral form
    survives as a slow oracle in the tests).
    """
    frame = NominalRotation(seq)
    if err.is_zero:
        zero = np.zeros(3)
        return MagnusTerms(zero, zero.copy())
    p = ErrorIntegral(seq, err, frame)

    phi1 = np.zeros(3)
    phi2 = np.zeros(3)
    for m in range(len(seq)):
        t0, t1 = frame.boundaries[m], frame.boundaries[m + 1]
        v1, _ = quad_vec(lambda t: frame.error_field(err, t), t0, t1, epsabs=QUAD_TOL, epsrel=QUAD_TOL)
        v2, _ = quad_vec(
            lambda t: 0.5 * np.cross(p.value(t), frame.error_field(err, t)),
            t0,
            t1,
            epsabs=QUAD_TOL,
            epsrel=QUAD_TOL,
        )
        phi1 = phi1 + v1
        phi2 = phi2 + v2
    return MagnusTerms(phi1, phi2)


@dataclass(frozen=True)
class JonesSums:
    """Pauli-coefficient sums of the first-order constraints, as vectors in
    the xy-plane (coefficient of sigma_x, sigma_y, 0)."""

    amplitude_sum: np.ndarray
    detuning_sum: np.ndarray


def jones_constraints(tphases: TogglingPhases) -> JonesSums:
    """First-order constraint sums for a pi-pulse train.

    Under the substitution 1 -> sigma_x, i -> sigma_y these are the
    operator constraints sum_j sigma_{phi'_j} = 0 (amplitude) and
    sum_j sigma_{phi''_j} = 0 (detuning); as plane vectors they equal the
    walk closure residuals (the detuning walk stores chords of length 2,
    so its residual is twice the sum here).
    """
    amp = np.exp(1j * tphases.radians).sum()
    det = np.exp(1j * math.pi * tphases.detuning_phases()).sum()
    return JonesSums(
        amplitude_sum=np.array([amp.real, amp.imag, 0.0]),
        detuning_sum=np.array([det.real, det.imag, 0.0]),
    )


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix commutator of the spin generators of a and b.

    Equals the spin generator of a x b; the tests verify this identity to
    machine precision.
    """
    ga, gb = spin_generator(a), spin_generator(b)
    return ga @ gb - gb @ ga
