"""Error-integral walks: first-order closure and second-order vector area.

The toggling-frame error field integrates to a curve p(t) traced by a
phantom particle whose velocity is the error field.  Per step the curve has
a simple shape:

* amplitude channel: straight line along the step's toggling-frame drive
  direction (the error is parallel to the drive and constant per step);
* detuning channel: circular arc of radius |delta| swept at unit angular
  rate about the drive direction (the lab z-axis seen from a rotating
  frame).

A sequence is fully compensating to first order exactly when the head-to-
tail walk of per-step displacement vectors p_i closes, and to second order
when additionally the vector area (1/2) oint p x dp of the closed curve
vanishes.  Both quantities are computed in closed form here: the chord
polygon contributes a shoelace term and every arc adds a lune term
(1/2) r^2 * sweep * axis.

Walks are stored with the error magnitude scaled out:

* amplitude walks are in units of epsilon*pi, so a pi-pulse step has
  length 1 and areas come out in units of (epsilon*pi)^2;
* detuning walks are in units of delta, so a pi-pulse arc has radius 1,
  chord length 2, and areas are in units of delta^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .rotations import Z_AXIS, axis_angle_rotation, planar_unit
from .sequences import Sequence
from .toggling import NominalRotation, TogglingPhases, UnsupportedPulseArea

CLOSURE_TOL = 1e-9
AREA_TOL = 1e-10

AMPLITUDE = "amplitude"
DETUNING = "detuning"
CHANNELS = (AMPLITUDE, DETUNING)


class OpenWalkError(ValueError):
    """Raised when asking for the vector area of a walk that is not closed."""


def _check_channel(kind: str) -> str:
    if kind not in CHANNELS:
        raise ValueError(f"channel must be one of {CHANNELS}, got {kind!r}")
    return kind


@dataclass(frozen=True)
class LineSegment:
    """Straight piece of the p(t) curve for one sequence step."""

    start: np.ndarray
    end: np.ndarray
    step_index: int
    t_start: float
    t_end: float

    @property
    def chord(self) -> np.ndarray:
        return self.end - self.start

    def point(self, fraction: float) -> np.ndarray:
        return self.start + fraction * (self.end - self.start)

    def area_contribution(self) -> np.ndarray:
        return 0.5 * np.cross(self.start, self.end)


@dataclass(frozen=True)
class ArcSegment:
    """Circular piece of the p(t) curve: start point rotated about `axis`
    around `center` by up to `sweep` radians."""

    center: np.ndarray
    axis: np.ndarray
    start: np.ndarray
    sweep: float
    step_index: int
    t_start: float
    t_end: float

    @property
    def radius(self) -> float:
        return float(np.linalg.norm(self.start - self.center))

    def point(self, fraction: float) -> np.ndarray:
        rot = axis_angle_rotation(self.axis, fraction * self.sweep)
        return self.center + rot @ (self.start - self.center)

    @property
    def end(self) -> np.ndarray:
        return self.point(1.0)

    @property
    def chord(self) -> np.ndarray:
        return self.end - self.start

    def area_contribution(self) -> np.ndarray:
        # (1/2) int p x dp over the arc: the center term reduces to the
        # chord cross product, the circular term to a lune along the axis.
        lune = 0.5 * self.radius**2 * self.sweep * self.axis
        return 0.5 * np.cross(self.center, self.chord) + lune


Segment = LineSegment | ArcSegment


@dataclass(frozen=True)
class Walk:
    """Per-step error-integral vectors plus the continuous curve.

    ``steps`` are the chords p_i; ``closure_residual`` is their sum and
    ``vector_area`` is filled only when the walk closes (see CLOSURE_TOL).
    Coordinates are stored with the error magnitude scaled out, see the
    module docstring.
    """

    kind: str
    steps: tuple[np.ndarray, ...]
    segments: tuple[Segment, ...]
    closure_residual: np.ndarray
    vector_area: np.ndarray | None

    @property
    def is_closed(self) -> bool:
        return self.vector_area is not None

    @property
    def total_duration(self) -> float:
        return self.segments[-1].t_end


def _finalize(kind: str, segments: list[Segment]) -> Walk:
    if not segments:
        raise ValueError("cannot build a walk from an empty sequence")
    steps = tuple(seg.chord for seg in segments)
    residual = np.sum(steps, axis=0)
    area = None
    if np.linalg.norm(residual) < CLOSURE_TOL:
        area = np.sum([seg.area_contribution() for seg in segments], axis=0)
    return Walk(kind, steps, tuple(segments), residual, area)


def amplitude_walk(tphases: TogglingPhases, areas=None) -> Walk:
    """Amplitude-error walk from toggling phases, optionally with per-step
    pulse areas in units of pi (default: all pi-pulses).

    Step j is a straight segment of length area_j along the azimuth
    phi'_j; the result is planar.
    """
    n = len(tphases)
    if areas is None:
        areas = np.ones(n)
    else:
        areas = np.asarray(list(areas), dtype=float)
        if areas.shape != (n,):
            raise ValueError("areas must match the number of phases")
    segments: list[Segment] = []
    point = np.zeros(3)
    t = 0.0
    for j, (phase, area) in enumerate(zip(tphases.phases, areas)):
        end = point + area * planar_unit(phase)
        segments.append(LineSegment(point, end, j, t, t + math.pi * area))
        point = end
        t += math.pi * area
    return _finalize(AMPLITUDE, segments)


def detuning_walk(tphases: TogglingPhases) -> Walk:
    """Detuning-error walk of a pi-pulse train from its toggling phases.

    Step j is a semicircle of unit radius whose chord (length 2) points at
    phi'_j rotated by +90 degrees for odd-numbered steps and -90 degrees
    for even-numbered ones; the arcs thread alternately above and below the
    chord plane.
    """
    segments: list[Segment] = []
    point = np.zeros(3)
    t = 0.0
    for j, phase in enumerate(tphases.phases):
        drive = planar_unit(phase)
        start_velocity = Z_AXIS if j % 2 == 0 else -Z_AXIS
        segments.append(
            ArcSegment(
                center=point + np.cross(start_velocity, drive),
                axis=-drive,
                start=point,
                sweep=math.pi,
                step_index=j,
                t_start=t,
                t_end=t + math.pi,
            )
        )
        point = segments[-1].end
        t += math.pi
    return _finalize(DETUNING, segments)


def sequence_walk(seq: Sequence, kind: str, frame: NominalRotation | None = None) -> Walk:
    """Walk of a sequence computed from its nominal rotation matrices.

    This route does not go through the pi-pulse phase transform, so it also
    covers trains with fractional areas (e.g. the spin echo).  Amplitude
    walks exist for any train; detuning walks require the toggling-frame
    z-carrier to stay perpendicular to each step's drive direction
    (pi-pulse trains and spin-echo-like trains qualify), otherwise the
    per-step curve is not a circular arc and UnsupportedPulseArea is
    raised.  Walks are scaled as described in the module docstring.
    """
    _check_channel(kind)
    if frame is None:
        frame = NominalRotation(seq)
    segments: list[Segment] = []
    point = np.zeros(3)
    for m, step in enumerate(seq.steps):
        t0, t1 = frame.boundaries[m], frame.boundaries[m + 1]
        drive = frame.toggling_axis(m)
        if kind == AMPLITUDE:
            end = point + step.angle * drive
            segments.append(LineSegment(point, end, m, t0, t1))
        else:
            carrier = frame.boundary_matrix(m).T @ Z_AXIS
            if abs(float(carrier @ drive)) > 1e-9:
                raise UnsupportedPulseArea(
                    "detuning walk is circular only when the toggling z-carrier "
                    f"is perpendicular to the drive; step {m} violates this"
                )
            segments.append(
                ArcSegment(
                    center=point + np.cross(carrier, drive),
                    axis=-drive,
                    start=point,
                    sweep=step.duration,
                    step_index=m,
                    t_start=t0,
                    t_end=t1,
                )
            )
        point = segments[-1].end
    return _finalize(kind, segments)


def vector_area(walk: Walk) -> np.ndarray:
    """Vector area (1/2) oint p x dp of a closed walk.

    Raises
    ------
    OpenWalkError
        If the walk does not close; the boundary term of the area
        manipulation would not vanish, so no surface is defined.
    """
    if walk.vector_area is None:
        raise OpenWalkError(
            f"walk is not closed (|residual| = {np.linalg.norm(walk.closure_residual):.3e}); "
            "vector area is defined for closed walks only"
        )
    return walk.vector_area


@dataclass(frozen=True)
class SecondOrderReport:
    """Second-order verdict of a closed pi-pulse-train walk.

    ``fully_compensating`` means the vector area vanishes (below AREA_TOL)
    so the second-order error is zero for every initial state; otherwise
    ``preserved_axis`` holds the one axis of initial states that still
    sees no second-order error.
    """

    vector_area: np.ndarray
    pairwise_sine_sum: float
    fully_compensating: bool
    preserved_axis: np.ndarray | None


def second_order_report(tphases: TogglingPhases, kind: str, areas=None) -> SecondOrderReport:
    """Second-order analysis of the walk built from toggling phases.

    Raises OpenWalkError when the walk does not close (the first-order
    constraint must hold before the area form applies).
    """
    _check_channel(kind)
    walk = amplitude_walk(tphases, areas) if kind == AMPLITUDE else detuning_walk(tphases)
    area = vector_area(walk)
    norm = float(np.linalg.norm(area))
    fully = norm < AREA_TOL
    return SecondOrderReport(
        vector_area=area,
        pairwise_sine_sum=pairwise_sine_sum(tphases, kind),
        fully_compensating=fully,
        preserved_axis=None if fully else area / norm,
    )


def pairwise_sine_sum(tphases: TogglingPhases, kind: str) -> float:
    """The double sum over j > k of sin(phi_j - phi_k) for the channel.

    Uses the toggling phases phi' for the amplitude channel and the shifted
    phases phi'' for detuning.  For closed unit-step amplitude walks this
    equals twice the z-component of the vector area.
    """
    _check_channel(kind)
    if kind == AMPLITUDE:
        phases = math.pi * np.asarray(tphases.phases)
    else:
        phases = math.pi * tphases.detuning_phases()
    total = 0.0
    for j in range(len(phases)):
        for k in range(j):
            total += math.sin(phases[j] - phases[k])
    return total


# --- exports -----------------------------------------------------------------

def sample_walk(walk: Walk, points_per_segment: int = 32) -> np.ndarray:
    """Sample the curve as rows (t, px, py, pz, step_index)."""
    rows = []
    for seg in walk.segments:
        for i in range(points_per_segment + 1):
            f = i / points_per_segment
            t = seg.t_start + f * (seg.t_end - seg.t_start)
            p = seg.point(f)
            rows.append((t, p[0], p[1], p[2], seg.step_index))
    return np.array(rows)


def walk_csv(walk: Walk, points_per_segment: int = 32) -> str:
    """CSV rendering of the sampled curve (deterministic formatting)."""
    lines = ["t,px,py,pz,step_index"]
    for t, x, y, z, idx in sample_walk(walk, points_per_segment):
        lines.append(f"{t:.17g},{x:.17g},{y:.17g},{z:.17g},{int(idx)}")
    return "\n".join(lines) + "\n"


def _svg_path(points: np.ndarray, scale: float, offset: np.ndarray) -> str:
    coords = [
        f"{(p[0] - offset[0]) * scale:.3f},{-(p[1] - offset[1]) * scale:.3f}"
        for p in points
    ]
    return "M " + " L ".join(coords)


def walk_svg(walk: Walk, points_per_segment: int = 64, size: int = 480) -> str:
    """Top view (x'y'-projection) of the walk as an SVG document.

    Odd-numbered steps are stroked darker than even-numbered ones.  For
    detuning walks the straight chords are drawn dashed and each arc gets a
    plus or minus mark according to whether it threads above or below the
    chord plane.
    """
    sampled = [
        np.array([seg.point(i / points_per_segment) for i in range(points_per_segment + 1)])
        for seg in walk.segments
    ]
    pts = np.vstack(sampled)
    lo = pts[:, :2].min(axis=0)
    hi = pts[:, :2].max(axis=0)
    span = max(float(np.max(hi - lo)), 1e-6)
    margin = 0.12 * span
    scale = size / (span + 2 * margin)
    offset = np.array([lo[0] - margin, hi[1] + margin])

    dark, light = "#1f3b73", "#9db4e0"
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    ox = (0.0 - offset[0]) * scale
    oy = -(0.0 - offset[1]) * scale
    parts.append(f'<circle cx="{ox:.3f}" cy="{oy:.3f}" r="3" fill="#444"/>')
    for seg, points in zip(walk.segments, sampled):
        color = dark if seg.step_index % 2 == 0 else light
        if walk.kind == DETUNING:
            chord = np.array([seg.point(0.0), seg.point(1.0)])
            parts.append(
                f'<path d="{_svg_path(chord, scale, offset)}" stroke="{color}" '
                'stroke-width="1" stroke-dasharray="5,4" fill="none"/>'
            )
        parts.append(
            f'<path d="{_svg_path(points, scale, offset)}" stroke="{color}" '
            'stroke-width="2" fill="none"/>'
        )
        if isinstance(seg, ArcSegment):
            mid = seg.point(0.5)
            bulge = mid[2] - 0.5 * (seg.point(0.0)[2] + seg.point(1.0)[2])
            mark = "+" if bulge >= 0 else "−"
            mx = (mid[0] - offset[0]) * scale
            my = -(mid[1] - offset[1]) * scale
            parts.append(
                f'<text x="{mx:.3f}" y="{my:.3f}" font-size="16" fill="{color}" '
                f'text-anchor="middle">{mark}</text>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
