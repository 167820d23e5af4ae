"""Transformations between the lab frame and the toggling frame.

The toggling frame co-rotates with the nominal (error-free) evolution: it
is carried by the rotation R(t) solving dR/dt = [Omega(t)]_x R(t) with
R(0) = I, where Omega(t) is the piecewise-constant nominal drive field.
Subtracting the nominal motion this way leaves only the error field

    w1'(t) = R(t)^-1 (epsilon * Omega(t) + delta * z)

to drive the Bloch vector, which is what makes the error-integral walk
constructions in :mod:`blochwalk.walks` possible.

For trains of pi-pulses the drive directions stay in the x'y'-plane of the
toggling frame and are given by the phase transform

    phi'_j = -(-1)^j phi_j - sum_{k<j} (-1)^k 2 phi_k        (j = 1..N)

which is an involution: applying it twice returns the lab phases modulo
full turns.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .rotations import Z_AXIS, axis_angle_rotation, cross_matrix, normalize_half_turns
from .sequences import ErrorModel, Sequence


class UnsupportedPulseArea(ValueError):
    """Raised when an operation defined for pi-pulse trains gets another area."""


def toggled_phase_list(phases_over_pi) -> np.ndarray:
    """Apply the lab <-> toggling phase transform to a list of phases.

    Input and output are in units of pi; output is normalized to (-1, 1].
    The transform is its own inverse (mod 2).
    """
    out = []
    acc = 0.0
    for i, phi in enumerate(phases_over_pi):
        sign = 1.0 if i % 2 == 0 else -1.0
        out.append(normalize_half_turns(sign * float(phi) + acc))
        acc += sign * 2.0 * float(phi)
    return np.array(out)


@dataclass(frozen=True)
class TogglingPhases:
    """Drive-direction azimuths phi'_j in the toggling frame, units of pi."""

    phases: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "phases", tuple(float(p) for p in self.phases))

    def __len__(self) -> int:
        return len(self.phases)

    @property
    def radians(self) -> np.ndarray:
        return math.pi * np.array(self.phases)

    def detuning_phases(self) -> np.ndarray:
        """The shifted azimuths phi''_j = phi'_j + (-1)^(j+1) pi/2, units of pi.

        Odd steps (1-based) shift by +1/2, even steps by -1/2; these are the
        directions of the detuning error-integral vectors.
        """
        shift = np.array([0.5 if i % 2 == 0 else -0.5 for i in range(len(self.phases))])
        return normalize_half_turns(np.array(self.phases) + shift)


def toggle_phases(seq: Sequence) -> TogglingPhases:
    """Toggling-frame phases of a pi-pulse train.

    Raises
    ------
    UnsupportedPulseArea
        If any step is not a pi-pulse.  The phase formula above is specific
        to pi-pulse trains; other trains need the matrix route
        (:class:`NominalRotation`).
    """
    if not seq.is_pi_pulse_train:
        raise UnsupportedPulseArea(
            f"toggle_phases needs a train of pi-pulses, got areas {seq.angles.tolist()}"
        )
    return TogglingPhases(tuple(toggled_phase_list(seq.phases)))


class NominalRotation:
    """The nominal rotation R(t) of a sequence, with cached step boundaries.

    Construction is O(N); evaluating R(t) afterwards costs one Rodrigues
    exponential, so dense queries (quadrature, trajectory sampling) stay
    cheap.
    """

    def __init__(self, seq: Sequence):
        self.sequence = seq
        self.boundaries = seq.boundaries
        self.axes = [step.axis for step in seq.steps]
        mats = [np.eye(3)]
        for axis, dur in zip(self.axes, seq.durations):
            mats.append(axis_angle_rotation(axis, dur) @ mats[-1])
        self._boundary_matrices = mats

    @property
    def total_duration(self) -> float:
        return float(self.boundaries[-1])

    def boundary_matrix(self, m: int) -> np.ndarray:
        """R(t_m) at the start of step m (m = len(steps) gives R(t_f))."""
        return self._boundary_matrices[m]

    def step_index(self, t: float) -> int:
        return self.sequence.step_at(t)

    def matrix(self, t: float) -> np.ndarray:
        """R(t) for 0 <= t <= t_f (radians)."""
        m = self.step_index(t)
        tau = t - self.boundaries[m]
        return axis_angle_rotation(self.axes[m], tau) @ self._boundary_matrices[m]

    def toggling_axis(self, m: int) -> np.ndarray:
        """Drive direction of step m seen in the toggling frame.

        Constant within the step: R(t)^-1 Omega_m = R(t_m)^-1 Omega_m because
        the step's own rotation leaves its axis fixed.
        """
        return self._boundary_matrices[m].T @ self.axes[m]

    def error_field(self, err: ErrorModel, t: float) -> np.ndarray:
        """The toggling-frame error field w1'(t) = R(t)^-1 (eps*Omega + delta*z)."""
        m = self.step_index(t)
        tau = t - self.boundaries[m]
        partial = axis_angle_rotation(self.axes[m], tau)
        lab = err.epsilon * self.axes[m] + err.delta * Z_AXIS
        return self._boundary_matrices[m].T @ (partial.T @ lab)


def nominal_rotation(seq: Sequence, t: float) -> np.ndarray:
    """Convenience wrapper: R(t) for a single query.

    Use :class:`NominalRotation` directly when evaluating many times.
    """
    return NominalRotation(seq).matrix(t)


def error_in_toggling_frame(
    seq: Sequence,
    err: ErrorModel,
    t: float,
    frame: NominalRotation | None = None,
) -> np.ndarray:
    """Error field in the toggling frame at time t (radians).

    For a pure amplitude error the result is piecewise constant with norm
    |epsilon|; for pure detuning it has constant norm |delta| and starts
    along +z.
    """
    if frame is None:
        frame = NominalRotation(seq)
    return frame.error_field(err, t)


def _rotation_time_integral(axis: np.ndarray, tau: float) -> np.ndarray:
    """Closed form of the matrix integral of exp(-[axis]_x s) over [0, tau]."""
    k = cross_matrix(axis)
    return tau * np.eye(3) - (1.0 - math.cos(tau)) * k + (tau - math.sin(tau)) * (k @ k)


class ErrorIntegral:
    """Exact error integral p(t) = integral of w1'(s) ds from 0 to t.

    Both error channels have closed-form step integrals (the amplitude part
    is linear in time along the step's toggling axis; the detuning part is
    a rotation-matrix time integral applied to z), so no quadrature is
    involved here.  The independent quadrature route lives in the tests.
    """

    def __init__(self, seq: Sequence, err: ErrorModel, frame: NominalRotation | None = None):
        self.sequence = seq
        self.error = err
        self.frame = frame if frame is not None else NominalRotation(seq)
        values = [np.zeros(3)]
        for m, step in enumerate(seq.steps):
            values.append(values[-1] + self._step_integral(m, step.duration))
        self._boundary_values = values

    def _step_integral(self, m: int, tau: float) -> np.ndarray:
        axis = self.frame.axes[m]
        inv_boundary = self.frame.boundary_matrix(m).T
        out = np.zeros(3)
        if self.error.epsilon != 0.0:
            out = out + self.error.epsilon * tau * (inv_boundary @ axis)
        if self.error.delta != 0.0:
            j = _rotation_time_integral(axis, tau)
            out = out + self.error.delta * (inv_boundary @ (j @ Z_AXIS))
        return out

    def value(self, t: float) -> np.ndarray:
        m = self.frame.step_index(t)
        tau = t - self.frame.boundaries[m]
        return self._boundary_values[m] + self._step_integral(m, tau)

    def step_value(self, m: int) -> np.ndarray:
        """The per-step error-integral vector p_m (0-based m)."""
        return self._boundary_values[m + 1] - self._boundary_values[m]

    @property
    def final(self) -> np.ndarray:
        """p(t_f), the total error integral."""
        return self._boundary_values[-1]
