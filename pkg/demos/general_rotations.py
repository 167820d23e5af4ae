"""Composite pulses for arbitrary rotation angles.

The five-step family (four identity-composing pi-pulses plus one
theta-pulse about x) suppresses first-order amplitude error for every
feasible (theta, alpha) and reaches second order at alpha = pi, where it
coincides with the BB1 broadband family.  This script walks through the
construction, checks the pentagon closure for mixed side lengths, and
compares scaling slopes away from and at alpha = pi.

Run:  python3 demos/general_rotations.py
"""

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from blochwalk import scaling_slope, sequence_walk, theta_family, vector_area
from blochwalk.walks import sample_walk

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)


def main():
    theta = math.pi / 2
    print(f"target rotation: theta = pi/2 about x\n")

    print("pentagon closure for a few alpha values (side lengths 1,1,1,1,theta/pi):")
    fig, axes = plt.subplots(1, 3, figsize=(12, 4))
    for ax, alpha in zip(axes, (2.6, 2.9, math.pi)):
        seq = theta_family(theta, alpha)
        walk = sequence_walk(seq, "amplitude")
        area = np.linalg.norm(vector_area(walk))
        print(f"  alpha = {alpha:.4f}: |residual| = {np.linalg.norm(walk.closure_residual):.2e}, "
              f"|area| = {area:.5f}")
        for seg_rows, seg in zip(np.split(sample_walk(walk, 8), 5), walk.segments):
            shade = "#1f3b73" if seg.step_index % 2 == 0 else "#9db4e0"
            ax.plot(seg_rows[:, 1], seg_rows[:, 2], color=shade, lw=2)
        ax.set_title(f"alpha = {alpha:.3f}, |area| = {area:.3f}", fontsize=9)
        ax.set_aspect("equal")
        ax.grid(alpha=0.3)
    fig.suptitle("amplitude walks of theta_family(pi/2, alpha)")
    fig.tight_layout()
    fig.savefig(OUT / "theta_family_walks.png", dpi=130)

    print("\namplitude-error scaling:")
    for alpha, label in ((2.6, "generic alpha"), (math.pi, "alpha = pi (BB1)")):
        report = scaling_slope(theta_family(theta, alpha), "amplitude")
        print(f"  {label:18s} slope {report.slope:.3f}")

    # feasibility: gamma exists when |theta/(4 pi cos alpha)| <= 1
    alphas = np.linspace(0, math.pi, 400)
    feasible = [abs(theta / (4 * math.pi * math.cos(a))) <= 1 if math.cos(a) != 0 else False for a in alphas]
    boundary = theta / (4 * math.pi)
    print(f"\nfeasible alpha: |cos(alpha)| >= theta/(4*pi) = {boundary:.4f} "
          f"({100 * np.mean(feasible):.1f}% of [0, pi] at this theta)")
    print(f"wrote {OUT / 'theta_family_walks.png'}")


if __name__ == "__main__":
    main()
