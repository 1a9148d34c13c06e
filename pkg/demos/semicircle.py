"""
Reconstructing a semicircle
===========================

A 64-segment semicircle of unit length, reconstructed at a few levels with
the true length given. Higher levels hug the curve more closely.
"""
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from siginsert import (PiecewiseLinearPath, ReconstructionConfig, path_signature,
                       polyline_distance, reconstruct_path)

t = np.linspace(0, 1, 65)
semi = PiecewiseLinearPath(np.c_[np.cos(np.pi * t), np.sin(np.pi * t)] / np.pi)
truth = semi.vertices - semi.vertices[0]

plt.plot(*truth.T, "k", lw=3, alpha=0.3, label="true")
for n in (4, 6, 10):
    res = reconstruct_path(path_signature(semi, n + 1),
                           ReconstructionConfig(n, 50, length=semi.length, interval="full"))
    err = polyline_distance(res.vertices, truth).max()
    plt.plot(*res.vertices.T, label=f"n={n}, sup err {err:.3f}")
plt.axis("equal")
plt.legend()

os.makedirs("out", exist_ok=True)
plt.savefig("out/semicircle.png", dpi=120)
