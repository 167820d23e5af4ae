"""Acceptance suite: every release criterion at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one PASS/FAIL
line per criterion.
"""

import math

import numpy as np

from blochwalk import (
    ErrorModel,
    NominalRotation,
    compute_r1,
    compute_r2,
    default_probe_states,
    evolve,
    jones_constraints,
    knill,
    knill_family,
    magnus_terms,
    pairwise_sine_sum,
    scaling_slope,
    sequence_from_phases,
    sequence_walk,
    solve_magic_angle,
    spin_echo,
    theta_family,
    three_step_amplitude,
    three_step_detuning,
    toggle_phases,
    truncation_bound,
)
from blochwalk.perturbation import order_term_bound
from blochwalk.propagators import commutator, spin_generator
from blochwalk.rotations import X_AXIS, Z_AXIS, normalize_half_turns

SQRT3 = math.sqrt(3.0)
ALPHA_GRID_21 = np.linspace(-math.pi, math.pi, 21)


def _report(number: int, description: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    suffix = f" [{detail}]" if detail else ""
    print(f"criterion {number} {status}: {description}{suffix}")
    assert ok, f"criterion {number} failed: {description}{suffix}"


def test_criterion_1_toggling_transform():
    expected = np.array([1 / 6, 1 / 3, 5 / 6, -2 / 3, -1 / 2])
    got = np.array(toggle_phases(knill()).phases)
    worst = float(np.max(np.abs(normalize_half_turns(got - expected))))
    _report(1, "Knill lab phases map to the expected toggling phases", worst < 1e-12 / math.pi,
            f"max phase error {worst * math.pi:.2e} rad")


def test_criterion_2_first_order_closure():
    cases = [
        (three_step_amplitude(), ["amplitude"]),
        (three_step_detuning(), ["detuning"]),
        (knill(), ["amplitude", "detuning"]),
    ]
    for alpha in ALPHA_GRID_21:
        cases.append((knill_family(float(alpha)), ["amplitude", "detuning"]))
    worst = 0.0
    for seq, channels in cases:
        for channel in channels:
            residual = np.linalg.norm(sequence_walk(seq, channel).closure_residual)
            worst = max(worst, float(residual))
    _report(2, "first-order walks close below 1e-10 (scaled)", worst < 1e-10,
            f"worst residual {worst:.2e}")


def test_criterion_3_magic_angles():
    detuning = solve_magic_angle("detuning")
    amplitude = solve_magic_angle("amplitude")
    closed_amp = math.acos(-SQRT3 / 4)
    closed_det = math.pi - closed_amp
    ok = (
        abs(detuning - 1.1230) < 5e-4
        and abs(amplitude - 2.0186) < 5e-4
        and abs(detuning - closed_det) < 1e-9
        and abs(amplitude - closed_amp) < 1e-9
    )
    _report(3, "magic angles reproduce 1.1230 and 2.0186 and the arccos forms", ok,
            f"got {detuning:.6f}, {amplitude:.6f}")


def test_criterion_4_scaling_slopes():
    states = default_probe_states()
    checks = [
        ("single_pi amplitude", scaling_slope(sequence_from_phases([0.0], name="single_pi"), "amplitude", states), 1.0, 0.05),
        ("single_pi detuning", scaling_slope(sequence_from_phases([0.0], name="single_pi"), "detuning", states), 1.0, 0.05),
        ("knill amplitude", scaling_slope(knill(), "amplitude", states), 2.0, 0.05),
        ("knill detuning", scaling_slope(knill(), "detuning", states), 2.0, 0.05),
        ("magic_amplitude amplitude", scaling_slope(knill_family(math.acos(-SQRT3 / 4)), "amplitude", states), 3.0, 0.10),
        ("magic_detuning detuning", scaling_slope(knill_family(math.pi - math.acos(-SQRT3 / 4)), "detuning", states), 3.0, 0.10),
        ("theta_family(pi/2, pi) amplitude", scaling_slope(theta_family(math.pi / 2, math.pi), "amplitude", states), 3.0, 0.10),
    ]
    ok = True
    details = []
    for label, report, target, tolerance in checks:
        details.append(f"{label} {report.slope:.3f}")
        ok = ok and abs(report.slope - target) <= tolerance
    _report(4, "worst-case slopes are 1/2/3 as designed", ok, ", ".join(details))


def test_criterion_5_state_specific_suppression():
    seq = spin_echo()
    z_only = scaling_slope(seq, "amplitude", r0_set=[Z_AXIS]).slope
    worst_amp = scaling_slope(seq, "amplitude").slope
    x_only = scaling_slope(seq, "detuning", r0_set=[X_AXIS]).slope
    worst_det = scaling_slope(seq, "detuning").slope
    ok = (
        abs(z_only - 2.0) <= 0.05
        and abs(worst_amp - 1.0) <= 0.05
        and abs(x_only - 2.0) <= 0.05
        and abs(worst_det - 1.0) <= 0.05
    )
    _report(5, "spin echo suppresses errors only for its special initial states", ok,
            f"amp z {z_only:.3f} / worst {worst_amp:.3f}; det x {x_only:.3f} / worst {worst_det:.3f}")


def test_criterion_6_framework_equivalence():
    rng = np.random.default_rng(61803)
    eps, delta = 0.01, 0.01
    worst_phi1 = 0.0
    for _ in range(100):
        n_steps = int(rng.integers(3, 8))
        seq = sequence_from_phases(rng.uniform(-1.0, 1.0, size=n_steps))
        amp = magnus_terms(seq, ErrorModel(epsilon=eps)).phi1_vector
        p_amp = eps * math.pi * sequence_walk(seq, "amplitude").closure_residual
        det = magnus_terms(seq, ErrorModel(delta=delta)).phi1_vector
        p_det = delta * sequence_walk(seq, "detuning").closure_residual
        worst_phi1 = max(
            worst_phi1,
            float(np.linalg.norm(amp - p_amp)),
            float(np.linalg.norm(det - p_det)),
        )

    worst_phi2 = 0.0
    closed = [knill_family(float(a)) for a in np.linspace(-math.pi, math.pi, 21)]
    closed += [three_step_amplitude(), knill()]
    for seq in closed:
        for channel, err, scale in (
            ("amplitude", ErrorModel(epsilon=eps), (eps * math.pi) ** 2),
            ("detuning", ErrorModel(delta=delta), delta**2),
        ):
            walk = sequence_walk(seq, channel)
            if walk.vector_area is None:
                continue
            phi2 = magnus_terms(seq, err).phi2_vector
            worst_phi2 = max(worst_phi2, float(np.linalg.norm(phi2 - scale * walk.vector_area)))

    worst_comm = 0.0
    for _ in range(100):
        a, b = rng.normal(size=3), rng.normal(size=3)
        diff = commutator(a, b) - spin_generator(np.cross(a, b))
        worst_comm = max(worst_comm, float(np.max(np.abs(diff))))

    ok = worst_phi1 < 1e-9 and worst_phi2 < 1e-9 and worst_comm < 1e-12
    _report(6, "Magnus vectors equal walk residual and area; commutator identity holds", ok,
            f"phi1 {worst_phi1:.2e}, phi2 {worst_phi2:.2e}, commutator {worst_comm:.2e}")


def test_criterion_7_perturbation_bounds():
    rng = np.random.default_rng(27182)
    worst_margin = -math.inf
    ok = True
    for _ in range(100):
        n_steps = int(rng.integers(3, 8))
        seq = sequence_from_phases(
            rng.uniform(-1.0, 1.0, size=n_steps),
            angles_over_pi=rng.uniform(0.25, 2.0, size=n_steps),
        )
        budget = rng.uniform(0.05, 0.3) / seq.total_duration
        angle = rng.uniform(0.0, 2 * math.pi)
        err = ErrorModel(epsilon=budget * math.cos(angle), delta=budget * math.sin(angle))
        v = rng.normal(size=3)
        r0 = v / np.linalg.norm(v)

        frame = NominalRotation(seq)
        r1 = compute_r1(seq, err, r0, frame)
        r2 = compute_r2(seq, err, r0, frame)
        ok = ok and np.linalg.norm(r1) <= order_term_bound(seq, err, 1) + 1e-12
        ok = ok and np.linalg.norm(r2) <= order_term_bound(seq, err, 2) + 1e-12

        exact = evolve(seq, err, r0).final_lab
        reconstructed = frame.boundary_matrix(len(seq)) @ (r0 + r1 + r2)
        remainder = float(np.linalg.norm(exact - reconstructed))
        bound = truncation_bound(seq, err, 2)
        ok = ok and remainder <= bound + 1e-12
        worst_margin = max(worst_margin, remainder - bound)
    _report(7, "series terms and remainder obey the factorial bounds", ok,
            f"worst remainder-bound margin {worst_margin:.2e}")


def test_criterion_8_constraint_form_equivalence():
    rng = np.random.default_rng(14142)
    worst_residual_diff = 0.0
    sequences = [knill(), three_step_amplitude(), three_step_detuning()]
    sequences += [sequence_from_phases(rng.uniform(-1, 1, size=int(rng.integers(3, 8)))) for _ in range(20)]
    for seq in sequences:
        tp = toggle_phases(seq)
        sums = jones_constraints(tp)
        amp_walk = sequence_walk(seq, "amplitude")
        det_walk = sequence_walk(seq, "detuning")
        worst_residual_diff = max(
            worst_residual_diff,
            float(np.linalg.norm(sums.amplitude_sum - amp_walk.closure_residual)),
            float(np.linalg.norm(2.0 * sums.detuning_sum - det_walk.closure_residual)),
        )

    worst_pairwise = 0.0
    closed = [knill_family(float(a)) for a in np.linspace(-math.pi, math.pi, 21)]
    closed += [knill(), three_step_amplitude()]
    eps = 0.01
    for seq in closed:
        tp = toggle_phases(seq)
        walk = sequence_walk(seq, "amplitude")
        if walk.vector_area is None:
            continue
        area_z_physical = (eps * math.pi) ** 2 * walk.vector_area[2]
        lhs = pairwise_sine_sum(tp, "amplitude")
        worst_pairwise = max(worst_pairwise, abs(lhs - 2 * area_z_physical / (eps * math.pi) ** 2))

    ok = worst_residual_diff < 1e-12 and worst_pairwise < 1e-9
    _report(8, "operator-form sums equal walk residuals; pairwise sine equals 2*area_z", ok,
            f"residual diff {worst_residual_diff:.2e}, sine-area diff {worst_pairwise:.2e}")


def test_criterion_9_family_correspondence():
    worst = 0.0
    for alpha in np.linspace(-math.pi, math.pi, 11):
        ours = knill_family(float(alpha)).phases
        ap = alpha / math.pi + 7 / 6
        operator_form = np.array([1 + 2 * ap, ap, -1 / 3, -5 / 3 - ap, -7 / 3 - 2 * ap])
        offsets = normalize_half_turns(operator_form - ours - 7 / 6)
        worst = max(worst, float(np.max(np.abs(offsets))))
    _report(9, "family phases match the operator-derived family offset by 7*pi/6", worst < 1e-12,
            f"worst offset deviation {worst:.2e} half-turns")
