"""Pulse-sequence data model and the on-disk sequence format.

A sequence is an ordered train of transverse control pulses.  Each step is
described by the azimuth of its drive field in the xy-plane (``phase``) and
its pulse area (``angle``), both stored in units of pi so that the common
catalog values (multiples of pi/6, pi/3, ...) survive round trips without
accumulating representation error.  Conversion to radians happens only at
computation boundaries.

The error model holds the two systematic imperfections treated by this
package: a fractional miscalibration ``epsilon`` of the drive amplitude,
scaling every rotation rate by (1 + epsilon), and a constant detuning
``delta`` appearing as a residual z-directed field in the rotating frame.
Both are dimensionless (time is measured in units of the nominal Rabi
period over 2*pi) and assumed small.

Sequences serialize to a small JSON document::

    {
      "name": "knill",
      "intended_net_effect": {"axis": [-0.866..., 0.5, 0.0], "angle_over_pi": 1.0},
      "steps": [
        {"phase_over_pi": 0.1666666..., "angle_over_pi": 1.0},
        ...
      ]
    }

All angular fields are decimal fractions of pi.  ``axis`` is a 3-vector
(normalized on load).  Parse failures raise :class:`SequenceFormatError`
naming the offending field.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .rotations import axis_angle_rotation, normalize_half_turns, planar_unit, unit_vector


class SequenceFormatError(ValueError):
    """Raised when a sequence document is malformed; names the bad field."""


@dataclass(frozen=True)
class PulseStep:
    """One constant pulse: azimuth ``phase`` and area ``angle``, units of pi.

    The phase is normalized to (-1, 1]; the area must lie in (0, 2]
    (a pi-pulse is 1, a full 2*pi rotation is 2).
    """

    phase: float
    angle: float = 1.0

    def __post_init__(self):
        if not (0.0 < self.angle <= 2.0):
            raise ValueError(f"pulse area must be in (0, 2] units of pi, got {self.angle}")
        object.__setattr__(self, "phase", normalize_half_turns(self.phase))

    @property
    def duration(self) -> float:
        """Dimensionless pulse duration (radians of nominal rotation)."""
        return math.pi * self.angle

    @property
    def axis(self) -> np.ndarray:
        """Lab-frame drive direction, a unit vector in the xy-plane."""
        return planar_unit(self.phase)

    @property
    def is_pi_pulse(self) -> bool:
        return abs(self.angle - 1.0) <= 1e-12


@dataclass(frozen=True)
class AxisAngle:
    """Net rotation as (unit axis, angle in units of pi)."""

    axis: tuple[float, float, float]
    angle_over_pi: float

    def __post_init__(self):
        ax = unit_vector(np.asarray(self.axis, dtype=float))
        object.__setattr__(self, "axis", (float(ax[0]), float(ax[1]), float(ax[2])))

    def rotation_matrix(self) -> np.ndarray:
        return axis_angle_rotation(np.array(self.axis), math.pi * self.angle_over_pi)

    def vector(self) -> np.ndarray:
        """Axis-angle 3-vector in radians."""
        return math.pi * self.angle_over_pi * np.array(self.axis)

    @classmethod
    def about_xy(cls, phase_over_pi: float, angle_over_pi: float = 1.0) -> "AxisAngle":
        """Rotation about the equatorial axis at azimuth `phase_over_pi`."""
        v = planar_unit(phase_over_pi)
        return cls((v[0], v[1], 0.0), angle_over_pi)


@dataclass(frozen=True)
class Sequence:
    """Ordered composite pulse with its intended net rotation."""

    steps: tuple[PulseStep, ...]
    name: str = ""
    intended_net_effect: AxisAngle | None = None

    def __post_init__(self):
        steps = tuple(self.steps)
        if not steps:
            raise ValueError("a sequence needs at least one step")
        object.__setattr__(self, "steps", steps)

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def phases(self) -> np.ndarray:
        """Lab-frame phases, units of pi."""
        return np.array([s.phase for s in self.steps])

    @property
    def angles(self) -> np.ndarray:
        """Pulse areas, units of pi."""
        return np.array([s.angle for s in self.steps])

    @property
    def durations(self) -> np.ndarray:
        """Per-step durations in radians."""
        return math.pi * self.angles

    @property
    def boundaries(self) -> np.ndarray:
        """Times t_0 = 0, ..., t_N = t_f at step boundaries (radians)."""
        return np.concatenate(([0.0], np.cumsum(self.durations)))

    @property
    def total_duration(self) -> float:
        return float(np.sum(self.durations))

    @property
    def is_pi_pulse_train(self) -> bool:
        return all(s.is_pi_pulse for s in self.steps)

    def step_at(self, t: float) -> int:
        """Index of the step containing time `t` (radians), final step at t_f."""
        bounds = self.boundaries
        if t < -1e-12 or t > bounds[-1] + 1e-12:
            raise ValueError(f"time {t} outside [0, {bounds[-1]}]")
        index = int(np.searchsorted(bounds, t, side="right")) - 1
        return min(max(index, 0), len(self.steps) - 1)


def sequence_from_phases(
    phases_over_pi,
    angles_over_pi=None,
    name: str = "",
    intended_net_effect: AxisAngle | None = None,
) -> Sequence:
    """Build a sequence from phase (and optional area) lists, units of pi."""
    phases = list(phases_over_pi)
    if angles_over_pi is None:
        angles = [1.0] * len(phases)
    else:
        angles = list(angles_over_pi)
        if len(angles) != len(phases):
            raise ValueError("phases and angles must have the same length")
    steps = tuple(PulseStep(p, a) for p, a in zip(phases, angles))
    return Sequence(steps, name=name, intended_net_effect=intended_net_effect)


@dataclass(frozen=True)
class ErrorModel:
    """Systematic error channels: amplitude fraction and detuning.

    Both must be small compared to one; the perturbative analysis in the
    rest of the package assumes it.
    """

    epsilon: float = 0.0
    delta: float = 0.0

    def __post_init__(self):
        if not abs(self.epsilon) < 1.0:
            raise ValueError(f"|epsilon| must be < 1, got {self.epsilon}")
        if not abs(self.delta) < 1.0:
            raise ValueError(f"|delta| must be < 1, got {self.delta}")

    @property
    def magnitude(self) -> float:
        """|Omega_1|: the nominal field is transverse and unit length, the
        detuning field axial, so the error field has constant norm."""
        return math.hypot(self.epsilon, self.delta)

    @property
    def is_zero(self) -> bool:
        return self.epsilon == 0.0 and self.delta == 0.0


def amplitude_error(epsilon: float) -> ErrorModel:
    return ErrorModel(epsilon=epsilon)


def detuning_error(delta: float) -> ErrorModel:
    return ErrorModel(delta=delta)


# --- sequence file format ---------------------------------------------------

def _require(mapping, key, context):
    if not isinstance(mapping, dict):
        raise SequenceFormatError(f"{context} must be an object")
    if key not in mapping:
        raise SequenceFormatError(f"missing field {context}.{key}" if context else f"missing field {key}")
    return mapping[key]


def _as_number(value, field_name):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SequenceFormatError(f"field {field_name} must be a number, got {value!r}")
    return float(value)


def sequence_to_dict(seq: Sequence) -> dict:
    if seq.intended_net_effect is None:
        raise ValueError("cannot serialize a sequence without intended_net_effect")
    return {
        "name": seq.name,
        "intended_net_effect": {
            "axis": list(seq.intended_net_effect.axis),
            "angle_over_pi": seq.intended_net_effect.angle_over_pi,
        },
        "steps": [
            {"phase_over_pi": s.phase, "angle_over_pi": s.angle} for s in seq.steps
        ],
    }


def sequence_from_dict(doc: dict) -> Sequence:
    name = _require(doc, "name", "")
    if not isinstance(name, str):
        raise SequenceFormatError("field name must be a string")

    net = _require(doc, "intended_net_effect", "")
    axis = _require(net, "axis", "intended_net_effect")
    if not isinstance(axis, (list, tuple)) or len(axis) != 3:
        raise SequenceFormatError("field intended_net_effect.axis must be a 3-element list")
    axis = tuple(_as_number(c, f"intended_net_effect.axis[{i}]") for i, c in enumerate(axis))
    angle = _as_number(
        _require(net, "angle_over_pi", "intended_net_effect"),
        "intended_net_effect.angle_over_pi",
    )
    try:
        intended = AxisAngle(axis, angle)
    except ValueError as exc:
        raise SequenceFormatError(f"field intended_net_effect.axis invalid: {exc}") from exc

    raw_steps = _require(doc, "steps", "")
    if not isinstance(raw_steps, list) or not raw_steps:
        raise SequenceFormatError("field steps must be a non-empty list")
    steps = []
    for i, raw in enumerate(raw_steps):
        phase = _as_number(_require(raw, "phase_over_pi", f"steps[{i}]"), f"steps[{i}].phase_over_pi")
        area = _as_number(_require(raw, "angle_over_pi", f"steps[{i}]"), f"steps[{i}].angle_over_pi")
        try:
            steps.append(PulseStep(phase, area))
        except ValueError as exc:
            raise SequenceFormatError(f"field steps[{i}].angle_over_pi invalid: {exc}") from exc
    return Sequence(tuple(steps), name=name, intended_net_effect=intended)


def write_sequence(seq: Sequence, path) -> None:
    """Write a sequence to a JSON document (see module docstring)."""
    Path(path).write_text(json.dumps(sequence_to_dict(seq), indent=2) + "\n")


def read_sequence(path) -> Sequence:
    """Load a sequence document, raising SequenceFormatError with the
    offending field on malformed input."""
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SequenceFormatError(f"not valid JSON: {exc}") from exc
    return sequence_from_dict(doc)
