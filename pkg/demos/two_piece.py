"""
Exact recovery of a two-segment path
====================================

Levels 3 and 4 of the signature pin down both increments of the path
(0,0) -> (1,2) -> (4,0). The linear system is solved by least squares.
"""
import numpy as np

from siginsert import PiecewiseLinearPath, path_signature, solve_two_piece

path = PiecewiseLinearPath([(0, 0), (1, 2), (4, 0)])
sig = path_signature(path, 4)

sol = solve_two_piece(sig[3], sig[4], dim=2)
print("a =", np.round(sol.a, 12), " b =", np.round(sol.b, 12))
print("residual", sol.residual, " rank deficient:", sol.rank_deficient)

# lower levels are not enough: level 1 only sees the total increment
sol1 = solve_two_piece(sig[1], sig[2], dim=2)
print("from levels 1,2:", sol1.a, sol1.b, "rank deficient:", sol1.rank_deficient)
