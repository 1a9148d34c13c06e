"""
Insertion gap against the level
===============================

Up 2/3 then right 1/3; at theta = 1/2 we sit inside the first piece so
inserting its direction into the level-n signature should approach level n+1.
The binomial bound sits above the measured gap.
"""
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from siginsert import PiecewiseLinearPath, binomial_bound, gap_curve, insertion_position

path = PiecewiseLinearPath([(0, 0), (0, 2 / 3), (1 / 3, 2 / 3)])
levels = range(2, 21, 2)

l1 = gap_curve(path, 0.5, levels, "l1")
l2 = gap_curve(path, 0.5, levels, "l2")
bound = [binomial_bound(0.0, 2 / 3, n, insertion_position(0.5, n)) for n in levels]

ns = np.array(list(levels))
plt.plot(ns, [g for _, _, g in l1.rows], "o-", label="gap, l1")
plt.plot(ns, [g for _, _, g in l2.rows], "s-", label="gap, l2")
plt.plot(ns, bound, "k--", label="binomial bound")
plt.xlabel("level n")
plt.legend()

os.makedirs("out", exist_ok=True)
plt.savefig("out/insertion_gap.png", dpi=120)
for (n, p, g), b in zip(l1.rows, bound):
    print(f"n={n:2d} p={p:2d} gap={g:.4f} bound={b:.4f}")
