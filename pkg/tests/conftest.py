"""Shared fixtures and independent numerical oracles.

The oracles here deliberately avoid the closed-form routes used inside the
package: the error integral is recomputed with QUADPACK per component, and
the toggling-frame motion is integrated as an ODE.  Tests compare the
geometric constructions against these.
"""

from __future__ import annotations

import numpy as np
import pytest
from scipy.integrate import quad, solve_ivp

from blochwalk import ErrorModel, NominalRotation, Sequence, sequence_from_phases


def make_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_pi_train(rng: np.random.Generator, n_steps: int | None = None) -> Sequence:
    """Random train of pi-pulses with uniform phases, no intended effect."""
    if n_steps is None:
        n_steps = int(rng.integers(3, 8))
    phases = rng.uniform(-1.0, 1.0, size=n_steps)
    return sequence_from_phases(phases, name="random_pi_train")


def random_train(rng: np.random.Generator, n_steps: int | None = None) -> Sequence:
    """Random train with fractional pulse areas in [0.25, 2]."""
    if n_steps is None:
        n_steps = int(rng.integers(3, 8))
    phases = rng.uniform(-1.0, 1.0, size=n_steps)
    areas = rng.uniform(0.25, 2.0, size=n_steps)
    return sequence_from_phases(phases, angles_over_pi=areas, name="random_train")


def random_unit_vector(rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


def quad_error_integral(seq: Sequence, err: ErrorModel, upper: float | None = None) -> np.ndarray:
    """Oracle: p(t) by per-component QUADPACK integration, split at steps."""
    frame = NominalRotation(seq)
    t_end = frame.total_duration if upper is None else upper
    total = np.zeros(3)
    bounds = frame.boundaries
    for m in range(len(seq)):
        lo = bounds[m]
        hi = min(bounds[m + 1], t_end)
        if hi <= lo:
            break
        for k in range(3):
            value, _ = quad(
                lambda t, k=k: frame.error_field(err, t)[k], lo, hi, epsabs=1e-12, epsrel=1e-12
            )
            total[k] += value
    return total


def quad_step_integral(seq: Sequence, err: ErrorModel, m: int) -> np.ndarray:
    """Oracle: the per-step error-integral vector p_m by quadrature."""
    frame = NominalRotation(seq)
    lo, hi = frame.boundaries[m], frame.boundaries[m + 1]
    out = np.zeros(3)
    for k in range(3):
        out[k], _ = quad(lambda t, k=k: frame.error_field(err, t)[k], lo, hi, epsabs=1e-12, epsrel=1e-12)
    return out


def ode_final_toggling(seq: Sequence, err: ErrorModel, r0: np.ndarray) -> np.ndarray:
    """Oracle: integrate dr'/dt = w1'(t) x r'(t) step by step with DOP853."""
    frame = NominalRotation(seq)
    r = np.asarray(r0, dtype=float)
    for m in range(len(seq)):
        lo, hi = frame.boundaries[m], frame.boundaries[m + 1]
        sol = solve_ivp(
            lambda t, y: np.cross(frame.error_field(err, t), y),
            (lo, hi),
            r,
            method="DOP853",
            rtol=1e-12,
            atol=1e-13,
        )
        assert sol.success
        r = sol.y[:, -1]
    return r


@pytest.fixture
def rng() -> np.random.Generator:
    return make_rng(20240831)
