"""The SU(2) propagator route reproduces the Bloch-vector walk quantities.

Three numerical demonstrations:

1. The first Magnus vector of the error propagator equals the walk closure
   residual for random pi-pulse trains (both channels).
2. The second Magnus invariant equals the walk vector area on closed
   walks; the residual rotation |a(V)| of the error propagator then scales
   as error^2 for first-order sequences and error^3 at a magic angle.
3. The commutator identity that links the two pictures holds to machine
   precision.

Run:  python3 demos/propagator_bridge.py
"""

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from blochwalk import (
    ErrorModel,
    error_propagator,
    knill_family,
    magnus_terms,
    sequence_from_phases,
    sequence_walk,
    solve_magic_angle,
)
from blochwalk.propagators import commutator, spin_generator

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)


def main():
    rng = np.random.default_rng(7)

    worst = 0.0
    for _ in range(50):
        seq = sequence_from_phases(rng.uniform(-1, 1, size=int(rng.integers(3, 8))))
        for err, scale, ch in (
            (ErrorModel(epsilon=0.01), 0.01 * math.pi, "amplitude"),
            (ErrorModel(delta=0.01), 0.01, "detuning"),
        ):
            phi1 = magnus_terms(seq, err).phi1_vector
            p_final = scale * sequence_walk(seq, ch).closure_residual
            worst = max(worst, float(np.linalg.norm(phi1 - p_final)))
    print(f"50 random pi-trains, both channels: max |phi1 - p(t_f)| = {worst:.2e}")

    seq = knill_family(0.8)
    err = ErrorModel(epsilon=0.01)
    phi2 = magnus_terms(seq, err).phi2_vector
    area = (0.01 * math.pi) ** 2 * sequence_walk(seq, "amplitude").vector_area
    print(f"closed walk (family at alpha=0.8): |phi2 - area| = {np.linalg.norm(phi2 - area):.2e}")

    worst_comm = 0.0
    for _ in range(100):
        a, b = rng.normal(size=3), rng.normal(size=3)
        worst_comm = max(worst_comm, float(np.max(np.abs(commutator(a, b) - spin_generator(np.cross(a, b))))))
    print(f"commutator identity on 100 random pairs: max deviation = {worst_comm:.2e}")

    # residual-rotation scaling: |a(V)| vs eps for alpha = 0 and the magic angle
    eps_values = np.geomspace(1e-4, 1e-2, 9)
    fig, ax = plt.subplots(figsize=(6.5, 4.5))
    for alpha, label in ((0.0, "family alpha = 0 (first order)"),
                         (solve_magic_angle("amplitude"), "magic alpha (second order)")):
        seq = knill_family(alpha)
        norms = [
            np.linalg.norm(error_propagator(seq, ErrorModel(epsilon=float(e))).axis_angle_vector)
            for e in eps_values
        ]
        slope = np.polyfit(np.log(eps_values), np.log(norms), 1)[0]
        ax.loglog(eps_values, norms, "o-", label=f"{label}: slope {slope:.2f}")
        print(f"|a(V)| scaling for {label}: slope {slope:.3f}")
    ax.set_xlabel("amplitude error")
    ax.set_ylabel("|a(V)|: residual rotation of the error propagator")
    ax.grid(alpha=0.3, which="both")
    ax.legend(fontsize=9)
    fig.tight_layout()
    fig.savefig(OUT / "propagator_bridge.png", dpi=130)
    print(f"wrote {OUT / 'propagator_bridge.png'}")


if __name__ == "__main__":
    main()
