"""Walk gallery: the error-integral walks behind the catalog sequences.

Builds the amplitude and detuning walks for the standard sequences, prints
their closure residuals and vector areas, and renders top views to
demos/output/ (PNG via matplotlib plus the package's own SVG export).

Run:  python3 demos/walk_gallery.py
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from blochwalk import catalog, sequence_walk, walk_svg
from blochwalk.walks import sample_walk

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

NAMES = ["spin_echo", "three_step_amplitude", "three_step_detuning", "knill", "magic_detuning"]


def describe(name, channel):
    walk = sequence_walk(catalog(name), channel)
    residual = np.linalg.norm(walk.closure_residual)
    state = "closed" if walk.is_closed else "open  "
    area = "-" if walk.vector_area is None else f"{np.linalg.norm(walk.vector_area):8.5f}"
    print(f"  {name:22s} {channel:9s} {state}  |residual| = {residual:8.2e}  |area| = {area}")
    return walk


def main():
    print("Walk closure and area by sequence and error channel")
    print("(amplitude walks in units of eps*pi, detuning walks in units of delta)\n")

    fig, axes = plt.subplots(2, len(NAMES), figsize=(4 * len(NAMES), 8))
    for col, name in enumerate(NAMES):
        for row, channel in enumerate(("amplitude", "detuning")):
            walk = describe(name, channel)
            ax = axes[row, col]
            for seg_rows, seg in zip(
                np.split(sample_walk(walk, 48), len(walk.segments)), walk.segments
            ):
                shade = "#1f3b73" if seg.step_index % 2 == 0 else "#9db4e0"
                ax.plot(seg_rows[:, 1], seg_rows[:, 2], color=shade, lw=2)
            ax.plot(0, 0, "k.", ms=8)
            ax.set_title(f"{name}\n{channel}", fontsize=9)
            ax.set_aspect("equal")
            ax.grid(alpha=0.3)

            svg_path = OUT / f"{name}_{channel}.svg"
            svg_path.write_text(walk_svg(walk))
    fig.suptitle("error-integral walks, top view (odd steps dark, even steps light)")
    fig.tight_layout()
    fig.savefig(OUT / "walk_gallery.png", dpi=130)
    print(f"\nwrote {OUT / 'walk_gallery.png'} and one SVG per walk")


if __name__ == "__main__":
    main()
