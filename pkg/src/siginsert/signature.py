"""Signatures of piecewise-linear paths."""
from __future__ import annotations

import math

import numpy as np

from .tensor import TruncatedTensorSeries, tensor_product


class PiecewiseLinearPath:
    """A polyline in R^d, read at unit speed on the clock [0, 1].

    Consecutive duplicate vertices are dropped so every segment has positive
    length.  ``breaks[i]`` is the unit-speed time at which vertex ``i`` is
    reached, so segment ``i`` occupies ``[breaks[i], breaks[i+1]]``.
    """

    def __init__(self, vertices):
        pts = np.array(vertices, dtype=float)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[0] == 0:
            raise ValueError("vertices must be a (k, d) array")
        if not np.all(np.isfinite(pts)):
            raise ValueError("vertices must be finite")
        keep = np.ones(len(pts), dtype=bool)
        keep[1:] = np.any(pts[1:] != pts[:-1], axis=1)
        pts = pts[keep]
        if len(pts) < 2:
            raise ValueError("a path needs at least 2 distinct consecutive vertices")
        pts.setflags(write=False)
        self.vertices = pts
        self.increments = np.diff(pts, axis=0)
        self.segment_lengths = np.linalg.norm(self.increments, axis=1)
        self.length = float(np.sum(self.segment_lengths))
        cum = np.concatenate([[0.0], np.cumsum(self.segment_lengths)])
        self.breaks = cum / cum[-1]
        self.breaks[-1] = 1.0
        self.directions = self.increments / self.segment_lengths[:, None]

    @property
    def dim(self) -> int:
        return self.vertices.shape[1]

    @property
    def n_pieces(self) -> int:
        return len(self.increments)

    def segment_index(self, theta: float) -> int:
        # a vertex time belongs to the segment on its right
        i = int(np.searchsorted(self.breaks, theta, side="right")) - 1
        return min(max(i, 0), self.n_pieces - 1)

    def unit_derivative(self, theta: float) -> np.ndarray:
        """Unit tangent of the unit-speed reparametrisation at time ``theta``."""
        return self.directions[self.segment_index(theta)].copy()

    def point_at(self, theta) -> np.ndarray:
        """Position at unit-speed time(s) ``theta`` in [0, 1]."""
        theta = np.clip(np.asarray(theta, dtype=float), 0.0, 1.0)
        s = theta * self.length
        cum = self.breaks * self.length
        return np.stack([np.interp(s, cum, self.vertices[:, j]) for j in range(self.dim)],
                        axis=-1)

    def reversed(self) -> PiecewiseLinearPath:
        return PiecewiseLinearPath(self.vertices[::-1])

    def scaled(self, factor: float) -> PiecewiseLinearPath:
        return PiecewiseLinearPath(self.vertices * factor)

    def transformed(self, matrix) -> PiecewiseLinearPath:
        return PiecewiseLinearPath(self.vertices @ np.asarray(matrix, dtype=float).T)

    def __len__(self):
        return len(self.vertices)

    def __repr__(self):
        return f"PiecewiseLinearPath(dim={self.dim}, pieces={self.n_pieces}, length={self.length:.6g})"


def segment_signature(increment, depth: int) -> TruncatedTensorSeries:
    """Signature of a straight segment: level n is increment^{(x)n} / n!."""
    if depth < 0:
        raise ValueError("depth must be non-negative")
    delta = np.asarray(increment, dtype=float).ravel()
    levels = [np.ones(1)]
    for n in range(1, depth + 1):
        levels.append(np.outer(levels[-1], delta).ravel() / n)
    return TruncatedTensorSeries(delta.size, tuple(levels))


def chen_concat(a: TruncatedTensorSeries, b: TruncatedTensorSeries) -> TruncatedTensorSeries:
    """Truncated tensor product; for signatures this is path concatenation."""
    if a.dim != b.dim or a.depth != b.depth:
        raise ValueError(
            f"cannot concatenate series of shape (d={a.dim}, N={a.depth}) "
            f"and (d={b.dim}, N={b.depth})")
    levels = []
    for n in range(a.depth + 1):
        acc = np.zeros(a.dim**n)
        for k in range(n + 1):
            acc += tensor_product(a[k], b[n - k])
        levels.append(acc)
    return TruncatedTensorSeries(a.dim, tuple(levels))


def path_signature(path, depth: int) -> TruncatedTensorSeries:
    if not isinstance(path, PiecewiseLinearPath):
        path = PiecewiseLinearPath(path)
    sig = segment_signature(path.increments[0], depth)
    for delta in path.increments[1:]:
        sig = chen_concat(sig, segment_signature(delta, depth))
    return sig


def normalised_level(sig: TruncatedTensorSeries, n: int, length: float) -> np.ndarray:
    """n! L^{-n} S^n: level n of the signature seen at unit speed on [0, 1]."""
    if length <= 0:
        raise ValueError(f"path length must be positive, got {length}")
    if not 0 <= n <= sig.depth:
        raise ValueError(f"level {n} outside 0..{sig.depth}")
    return sig[n] * (math.factorial(n) / length**n)


def signature_inverse(sig: TruncatedTensorSeries) -> TruncatedTensorSeries:
    """Inverse of a group-like series (signature of the reversed path).

    Uses the antipode: each word is reversed and level n picks up (-1)^n.
    """
    d = sig.dim
    levels = [sig[0].copy()]
    for n in range(1, sig.depth + 1):
        block = sig[n].reshape((d,) * n).transpose(tuple(range(n - 1, -1, -1)))
        levels.append((-1) ** n * block.ravel())
    return TruncatedTensorSeries(d, tuple(levels))
