"""Built-in composite pulse sequences, parametric families, and verification.

Fixed entries
-------------
``single_pi``
    One pi-pulse about x; the uncorrected baseline.
``spin_echo``
    pi/2 - pi - pi/2 train; refocuses state-specific errors only.
``three_step_amplitude`` / ``three_step_detuning``
    Three pi-pulses whose error-integral walks close for one channel each.
``knill``
    Five pi-pulses closing the walks of both channels simultaneously.
``magic_amplitude`` / ``magic_detuning``
    Knill-family members at the solved parameter where the walk's vector
    area vanishes, upgrading one channel to second-order suppression.

Families
--------
``knill_family(alpha)`` rotates the even-numbered steps of the Knill
construction by a free angle alpha (radians) while keeping both first-order
closures; ``theta_family(theta, alpha)`` produces four identity-composing
pi-pulses plus a final theta-pulse about x, first-order amplitude
compensating for every feasible (theta, alpha) and second-order at
alpha = pi (the 5-pulse form of Wimperis's broadband BB1 family).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .perturbation import error_integral_final, perturbation_report
from .rotations import normalize_half_turns, unit_vector
from .sequences import AxisAngle, ErrorModel, Sequence, sequence_from_phases
from .simulate import SlopeReport, scaling_slope
from .toggling import UnsupportedPulseArea, toggled_phase_list
from .walks import AMPLITUDE, CLOSURE_TOL, DETUNING, Walk, sequence_walk

AREA_TOL = 1e-10

FIXED_NAMES = (
    "single_pi",
    "spin_echo",
    "three_step_amplitude",
    "three_step_detuning",
    "knill",
    "magic_amplitude",
    "magic_detuning",
)
FAMILY_NAMES = ("knill_family", "theta_family")


def pi_train_net_effect(phases_over_pi) -> AxisAngle:
    """Nominal net rotation of a pi-pulse train, in closed form.

    Products of equatorial pi-rotations telescope: an odd train is a
    pi-rotation about the equatorial axis at the alternating phase sum, an
    even train a z-rotation.
    """
    phases = list(phases_over_pi)
    alternating = sum(p if j % 2 == 0 else -p for j, p in enumerate(phases))
    if len(phases) % 2 == 1:
        axis_phase = alternating if len(phases) % 4 == 1 else alternating + 1.0
        return AxisAngle.about_xy(normalize_half_turns(axis_phase), 1.0)
    angle = normalize_half_turns(-2.0 * alternating + (2.0 if len(phases) % 4 == 2 else 0.0))
    return AxisAngle((0.0, 0.0, 1.0), angle)


def single_pi() -> Sequence:
    return sequence_from_phases([0.0], name="single_pi", intended_net_effect=pi_train_net_effect([0.0]))


def spin_echo() -> Sequence:
    return sequence_from_phases(
        [0.0, 0.5, 0.0],
        angles_over_pi=[0.5, 1.0, 0.5],
        name="spin_echo",
        intended_net_effect=AxisAngle.about_xy(0.5, 1.0),
    )


def three_step_amplitude() -> Sequence:
    phases = [0.0, 2.0 / 3.0, 0.0]
    return sequence_from_phases(
        phases, name="three_step_amplitude", intended_net_effect=pi_train_net_effect(phases)
    )


def three_step_detuning() -> Sequence:
    phases = [0.0, 1.0 / 3.0, 0.0]
    return sequence_from_phases(
        phases, name="three_step_detuning", intended_net_effect=pi_train_net_effect(phases)
    )


def knill_family(alpha: float) -> Sequence:
    """Five pi-pulses with the even steps rotated by `alpha` radians.

    Lab phases are (pi/6 + 2a, a, pi/2, -a, pi/6 - 2a); alpha = 0 is the
    Knill sequence.  All members close both walks; the net effect is the
    same pi-rotation for every alpha.
    """
    a = alpha / math.pi
    phases = [1.0 / 6.0 + 2 * a, a, 0.5, -a, 1.0 / 6.0 - 2 * a]
    name = "knill" if alpha == 0.0 else f"knill_family({alpha:.6g})"
    return sequence_from_phases(phases, name=name, intended_net_effect=pi_train_net_effect(phases))


def knill() -> Sequence:
    return knill_family(0.0)


def theta_family(theta: float, alpha: float) -> Sequence:
    """Four identity-composing pi-pulses plus a theta-pulse about x.

    The first four toggling phases are (alpha + gamma, alpha - gamma,
    -alpha - gamma, -alpha + gamma) with gamma fixed by
    cos(gamma) cos(alpha) = -theta / (4 pi); the fifth toggling phase is 0.
    The amplitude walk is then a closed pentagon with side lengths
    (1, 1, 1, 1, theta/pi).  At alpha = pi the pentagon degenerates to zero
    area and the sequence matches BB1(theta).

    Raises
    ------
    ValueError
        If theta is outside (0, 2*pi] or |theta / (4 pi cos alpha)| > 1, in
        which case no gamma exists.
    """
    if not (0.0 < theta <= 2.0 * math.pi):
        raise ValueError(f"target angle must be in (0, 2*pi], got {theta}")
    denom = 4.0 * math.pi * math.cos(alpha)
    if denom == 0.0 or abs(theta / denom) > 1.0:
        raise ValueError(
            f"no gamma satisfies cos(gamma)cos(alpha) = -theta/(4*pi) for theta={theta}, alpha={alpha}"
        )
    gamma = math.acos(-theta / denom)
    a, g = alpha / math.pi, gamma / math.pi
    toggling = [a + g, a - g, -a - g, -a + g]
    lab = list(toggled_phase_list(toggling)) + [0.0]
    return sequence_from_phases(
        lab,
        angles_over_pi=[1.0, 1.0, 1.0, 1.0, theta / math.pi],
        name=f"theta_family({theta:.6g},{alpha:.6g})",
        intended_net_effect=AxisAngle((1.0, 0.0, 0.0), theta / math.pi),
    )


def family_area_z(alpha: float, channel: str) -> float:
    """z-component of the Knill-family walk area as a function of alpha."""
    walk = sequence_walk(knill_family(alpha), channel)
    if walk.vector_area is None:
        raise ValueError(f"family walk unexpectedly open at alpha={alpha}")
    return float(walk.vector_area[2])


def solve_magic_angle(channel: str) -> float:
    """Parameter alpha at which the Knill-family walk area vanishes.

    Solved by bracketed root finding on the analytic area function over
    [0, pi]; the mirrored root at -alpha exists by symmetry.

    Raises
    ------
    ValueError
        If the area has no sign change over the bracket.
    """
    f = lambda alpha: family_area_z(alpha, channel)
    lo, hi = 0.0, math.pi
    if f(lo) * f(hi) > 0:
        raise ValueError(f"no sign change of the {channel} walk area over [0, pi]")
    return float(brentq(f, lo, hi, xtol=1e-12, rtol=8.9e-16))


def magic_amplitude() -> Sequence:
    seq = knill_family(solve_magic_angle(AMPLITUDE))
    return Sequence(seq.steps, name="magic_amplitude", intended_net_effect=seq.intended_net_effect)


def magic_detuning() -> Sequence:
    seq = knill_family(solve_magic_angle(DETUNING))
    return Sequence(seq.steps, name="magic_detuning", intended_net_effect=seq.intended_net_effect)


_FAMILY_CALL = re.compile(r"^(?P<name>[a-z_]+)\((?P<args>[^)]*)\)$")


def catalog(name: str) -> Sequence:
    """Look up a sequence by name.

    Accepts the fixed names plus parametrized calls such as
    ``knill_family(0.7854)`` and ``theta_family(1.5708, 3.1416)`` with
    arguments in radians.

    Raises
    ------
    ValueError
        For unknown names or malformed parameter lists.
    """
    fixed = {
        "single_pi": single_pi,
        "spin_echo": spin_echo,
        "three_step_amplitude": three_step_amplitude,
        "three_step_detuning": three_step_detuning,
        "knill": knill,
        "magic_amplitude": magic_amplitude,
        "magic_detuning": magic_detuning,
    }
    key = name.strip()
    if key in fixed:
        return fixed[key]()
    match = _FAMILY_CALL.match(key)
    if match and match.group("name") in FAMILY_NAMES:
        try:
            args = [float(part) for part in match.group("args").split(",") if part.strip()]
        except ValueError as exc:
            raise ValueError(f"bad parameters in catalog name {name!r}: {exc}") from exc
        family = match.group("name")
        if family == "knill_family":
            if len(args) != 1:
                raise ValueError("knill_family takes one parameter: alpha (radians)")
            return knill_family(args[0])
        if len(args) != 2:
            raise ValueError("theta_family takes two parameters: theta, alpha (radians)")
        return theta_family(args[0], args[1])
    known = ", ".join(FIXED_NAMES + ("knill_family(alpha)", "theta_family(theta,alpha)"))
    raise ValueError(f"unknown sequence name {name!r}; known: {known}")


@dataclass(frozen=True)
class VerifyReport:
    """Aggregated first/second-order verdict for one error channel.

    ``preserved_axis`` is the initial-state axis for which the first
    non-suppressed order still vanishes: the walk-area direction when only
    the second order fails, the residual direction when the first does.
    It is None when the sequence is fully compensating through second
    order.  ``slope`` is the measured worst-case error-scaling exponent
    (NaN when the scan was skipped or degenerate).
    """

    name: str
    channel: str
    first_order: bool
    second_order: bool
    closure_residual: np.ndarray
    vector_area: np.ndarray | None
    preserved_axis: np.ndarray | None
    order_certified: int
    slope: float
    slope_report: SlopeReport | None

    def summary(self) -> str:
        lines = [
            f"sequence {self.name or '<unnamed>'}, channel {self.channel}",
            f"  first-order  {'PASS' if self.first_order else 'FAIL'}"
            f"  (|closure residual| = {np.linalg.norm(self.closure_residual):.3e})",
        ]
        if self.vector_area is not None:
            lines.append(
                f"  second-order {'PASS' if self.second_order else 'FAIL'}"
                f"  (|vector area| = {np.linalg.norm(self.vector_area):.3e})"
            )
        else:
            lines.append("  second-order FAIL  (walk does not close)")
        if self.preserved_axis is not None:
            ax = self.preserved_axis
            lines.append(f"  preserved axis ({ax[0]:+.4f}, {ax[1]:+.4f}, {ax[2]:+.4f})")
        if not math.isnan(self.slope):
            lines.append(f"  measured scaling slope {self.slope:.3f}")
        lines.append(f"  certified order {self.order_certified}")
        return "\n".join(lines)


def _numeric_orders(seq: Sequence, channel: str) -> tuple[bool, bool, np.ndarray, None]:
    """Order booleans via the perturbation terms when no geometric walk exists."""
    value = 1e-3
    probe = ErrorModel(epsilon=value) if channel == AMPLITUDE else ErrorModel(delta=value)
    report = perturbation_report(seq, probe)
    scale = value * math.pi if channel == AMPLITUDE else value
    residual = error_integral_final(seq, probe) / scale
    return report.order_certified >= 1, report.order_certified >= 2, residual, None


def verify(seq: Sequence, channel: str, with_slope: bool = True) -> VerifyReport:
    """Run the walk, perturbation, and scaling checks for one channel.

    ``first_order`` / ``second_order`` come from the closed-form walk
    (closure within CLOSURE_TOL, area within AREA_TOL); the measured slope
    is attached as independent numerical evidence.
    """
    try:
        walk: Walk | None = sequence_walk(seq, channel)
    except UnsupportedPulseArea:
        walk = None

    if walk is not None:
        first = bool(np.linalg.norm(walk.closure_residual) < CLOSURE_TOL)
        second = first and walk.vector_area is not None and bool(
            np.linalg.norm(walk.vector_area) < AREA_TOL
        )
        residual = walk.closure_residual
        area = walk.vector_area
    else:
        first, second, residual, area = _numeric_orders(seq, channel)

    if second:
        preserved = None
    elif first and area is not None and np.linalg.norm(area) > 0:
        preserved = unit_vector(area)
    elif not first and np.linalg.norm(residual) > 0:
        preserved = unit_vector(residual)
    else:
        preserved = None

    slope_report = scaling_slope(seq, channel) if with_slope else None
    slope = slope_report.slope if slope_report is not None else math.nan
    return VerifyReport(
        name=seq.name,
        channel=channel,
        first_order=first,
        second_order=second,
        closure_residual=residual,
        vector_area=area,
        preserved_axis=preserved,
        order_certified=2 if second else (1 if first else 0),
        slope=slope,
        slope_report=slope_report,
    )
