"""blochwalk: composite pulse design and verification via error-integral walks.

The package follows a single chain of ideas: a pulse sequence defines a
nominal rotation; systematic amplitude and detuning errors become a small
drive in the toggling frame that co-rotates with the nominal motion; the
time integral of that drive traces a walk whose closure kills the
first-order error for every initial state and whose vector area controls
the second order.  The same two quantities reappear as the first two
Magnus terms of the SU(2) error propagator, and the simulator measures the
resulting error scaling directly.

Conventions: right-handed axes with dr/dt = w x r; dimensionless time in
units of the nominal Rabi rate; pulse phases and areas stored in units of
pi; family parameters (alpha, theta) passed in radians.
"""

from .catalog import (
    VerifyReport,
    catalog,
    knill,
    knill_family,
    magic_amplitude,
    magic_detuning,
    pi_train_net_effect,
    single_pi,
    solve_magic_angle,
    spin_echo,
    theta_family,
    three_step_amplitude,
    three_step_detuning,
    verify,
)
from .perturbation import (
    PerturbationReport,
    compute_r1,
    compute_r2,
    error_integral_final,
    perturbation_report,
    truncation_bound,
)
from .propagators import (
    JonesSums,
    MagnusTerms,
    Su2Operator,
    error_propagator,
    jones_constraints,
    magnus_terms,
    propagate,
)
from .rotations import axis_angle_rotation, compose, normalize_half_turns, rotate
from .sequences import (
    AxisAngle,
    ErrorModel,
    PulseStep,
    Sequence,
    SequenceFormatError,
    amplitude_error,
    detuning_error,
    read_sequence,
    sequence_from_phases,
    write_sequence,
)
from .simulate import (
    DEFAULT_SEED,
    SimResult,
    SlopeReport,
    default_probe_states,
    evolve,
    scaling_slope,
    slope_csv,
    trajectory_csv,
)
from .toggling import (
    ErrorIntegral,
    NominalRotation,
    TogglingPhases,
    UnsupportedPulseArea,
    error_in_toggling_frame,
    nominal_rotation,
    toggle_phases,
    toggled_phase_list,
)
from .walks import (
    AMPLITUDE,
    CLOSURE_TOL,
    DETUNING,
    OpenWalkError,
    Walk,
    amplitude_walk,
    detuning_walk,
    pairwise_sine_sum,
    sequence_walk,
    vector_area,
    walk_csv,
    walk_svg,
)

__version__ = "0.1.0"
