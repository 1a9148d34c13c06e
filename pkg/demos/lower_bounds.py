"""
Decay and lower bounds
======================

The lattice path (half along e2, then half along e1) keeps l1 norm 1 at every
level while the Hilbert-Schmidt norm decays like n^(-1/4). The hyperbolic
development gives a computable lower bound on the normalised signature.
"""
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from siginsert import (PiecewiseLinearPath, graded_development, lattice_decay, lower_bound_constant,
                       smallest_half_angle)

ns = np.arange(1, 41)
l1, hs = np.array([lattice_decay(n) for n in ns]).T
plt.loglog(ns, l1, label="l1")
plt.loglog(ns, hs, label="Hilbert-Schmidt")
plt.loglog(ns, (np.pi * ns) ** -0.25, "k:", label="(pi n)^(-1/4)")
plt.xlabel("level n")
plt.legend()
os.makedirs("out", exist_ok=True)
plt.savefig("out/lattice_decay.png", dpi=120)

zigzag = PiecewiseLinearPath([(0, 0), (1, 0.3), (1.6, -0.2), (2.5, 0.4)])
dev = graded_development(zigzag, 14)
omega = smallest_half_angle(zigzag)
const = lower_bound_constant(zigzag.n_pieces, omega, c=0.5)
print(f"half angle {omega:.3f}, constant {const:.4g}")
for n, w in enumerate(dev.witnesses()):
    print(f"n={n:2d} witness={w:.4f} {'clears' if w >= const else ''}")
