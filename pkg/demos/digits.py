"""
Pen digits
==========

Synthetic rows in the pen-digits format (tests/data), normalised to the unit
box and resampled to 32 points. Length is unknown to the inversion, so the
shape comes back scaled by 1/L and is compared with the true path on that scale.
"""
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

from siginsert import ReconstructionConfig, digit_path, parse_pendigits, path_signature, reconstruct_path

here = os.path.dirname(os.path.abspath(__file__))
with open(os.path.join(here, "..", "tests", "data", "pendigits_synthetic.tra")) as fh:
    samples = parse_pendigits(fh.read())

fig, axes = plt.subplots(1, len(samples), figsize=(4 * len(samples), 4))
for ax, sample in zip(axes, samples):
    path = digit_path(sample)
    shape = (path.vertices - path.vertices[0]) / path.length
    ax.plot(*shape.T, "k", lw=3, alpha=0.3)
    for n in (6, 12):
        res = reconstruct_path(path_signature(path, n + 1), ReconstructionConfig(n, 60))
        ax.plot(*res.unit_vertices.T, label=f"n={n}")
        print(f"digit {sample.label} n={n}: estimated L={res.length_used:.3f} true L={path.length:.3f}")
    ax.set_title(f"digit {sample.label}")
    ax.set_aspect("equal")
    ax.legend()

os.makedirs("out", exist_ok=True)
fig.savefig("out/digits.png", dpi=100)
