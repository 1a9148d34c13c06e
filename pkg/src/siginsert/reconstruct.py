"""Path reconstruction from a truncated signature by the insertion method."""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .bounds import length_estimate
from .insertion import (AmbiguousMinimum, InsertionContext, insertion_position,
                        solve_insertion)
from .signature import normalised_level
from .tensor import NormKind, TruncatedTensorSeries


class Interval(enum.Enum):
    INNER = "inner"  # [1/(n+2), (n+1)/(n+2)]
    FULL = "full"    # [0, 1]


@dataclass(frozen=True)
class ReconstructionConfig:
    """Settings for ``reconstruct_path``.

    ``length=None`` means the length is unknown and is estimated from level
    ``level`` of the signature under ``length_norm``.  ``smoothing`` is an
    odd moving-average window, or None.
    """

    level: int
    samples: int
    length: float | None = None
    length_norm: NormKind = NormKind.L2
    interval: Interval = Interval.INNER
    smoothing: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "interval", Interval(self.interval))
        object.__setattr__(self, "length_norm", NormKind.parse(self.length_norm))
        if self.level < 1:
            raise ValueError("level must be >= 1")
        if self.samples < 2:
            raise ValueError("need at least 2 samples")
        if self.length is not None and not self.length > 0:
            raise ValueError(f"length must be positive, got {self.length}")
        if self.smoothing is not None:
            w = self.smoothing
            if w < 1 or w % 2 == 0 or w > self.samples:
                raise ValueError(f"smoothing window must be odd and <= samples, got {w}")

    def bounds(self):
        if self.interval is Interval.FULL:
            return 0.0, 1.0
        n = self.level
        return 1.0 / (n + 2), (n + 1) / (n + 2)


@dataclass
class ReconstructionResult:
    thetas: np.ndarray
    derivatives: np.ndarray   # (m, d); rows of NaN where the minimiser is ambiguous
    residuals: np.ndarray
    vertices: np.ndarray      # (m+1, d), starting at the origin
    length_used: float
    ambiguous: np.ndarray     # bool mask over samples

    @property
    def unit_vertices(self) -> np.ndarray:
        """Vertices of the reconstruction scaled to unit length."""
        return self.vertices / self.length_used


def sample_times(config: ReconstructionConfig) -> np.ndarray:
    """Cell midpoints of ``samples`` equal cells of the configured interval."""
    a, b = config.bounds()
    m = config.samples
    return a + (b - a) * (np.arange(m) + 0.5) / m


def resolve_length(sig: TruncatedTensorSeries, config: ReconstructionConfig) -> float:
    if config.length is not None:
        return float(config.length)
    return length_estimate(sig, config.level, config.length_norm)


def estimate_derivatives(sig: TruncatedTensorSeries, config: ReconstructionConfig,
                         length: float | None = None):
    """Unit-speed derivative estimates at the sample times.

    Returns ``(thetas, derivatives, residuals, ambiguous)``.  Samples whose
    minimiser is not unique get NaN derivatives and residuals and are
    flagged in ``ambiguous``; they do not affect their neighbours.
    """
    n = config.level
    if sig.depth < n + 1:
        raise ValueError(f"signature depth {sig.depth} too small for level {n} (need {n + 1})")
    L = resolve_length(sig, config) if length is None else length
    sbar_n = normalised_level(sig, n, L)
    sbar_next = normalised_level(sig, n + 1, L)
    thetas = sample_times(config)
    m, d = len(thetas), sig.dim
    derivs = np.full((m, d), np.nan)
    residuals = np.full(m, np.nan)
    ambiguous = np.zeros(m, dtype=bool)
    contexts = {}
    for i, theta in enumerate(thetas):
        p = insertion_position(theta, n)
        if p not in contexts:
            contexts[p] = InsertionContext(d, n, p, sbar_n)
        try:
            derivs[i], residuals[i] = solve_insertion(contexts[p], sbar_next)
        except AmbiguousMinimum:
            ambiguous[i] = True
    return thetas, derivs, residuals, ambiguous


def smooth_derivatives(derivs, window: int) -> np.ndarray:
    """Centred moving average over valid rows, renormalised to unit length."""
    derivs = np.asarray(derivs, dtype=float)
    valid = ~np.any(np.isnan(derivs), axis=1)
    filled = np.where(valid[:, None], derivs, 0.0)
    half = window // 2
    out = np.full_like(derivs, np.nan)
    for i in range(len(derivs)):
        if not valid[i]:
            continue
        lo, hi = max(0, i - half), min(len(derivs), i + half + 1)
        avg = filled[lo:hi].sum(axis=0)
        norm = np.linalg.norm(avg)
        out[i] = avg / norm if norm > 0 else derivs[i]
    return out


def integrate_derivatives(derivs, config: ReconstructionConfig, length: float) -> np.ndarray:
    """Midpoint-rule integral of the derivative samples over the configured interval.

    ``vertices[k+1] = vertices[k] + h d_k`` with ``h = |interval| L / m``;
    ambiguous (NaN) samples contribute no displacement.
    """
    derivs = np.asarray(derivs, dtype=float)
    m = len(derivs)
    if m < 2:
        raise ValueError("need at least 2 derivative samples")
    a, b = config.bounds()
    h = (b - a) * length / m
    steps = np.nan_to_num(derivs, nan=0.0) * h
    return np.vstack([np.zeros(derivs.shape[1]), np.cumsum(steps, axis=0)])


def reconstruct_path(sig: TruncatedTensorSeries, config: ReconstructionConfig) -> ReconstructionResult:
    if sig.depth < config.level + 1:
        raise ValueError(f"signature depth {sig.depth} too small for level {config.level} "
                         f"(need {config.level + 1})")
    L = resolve_length(sig, config)
    thetas, derivs, residuals, ambiguous = estimate_derivatives(sig, config, L)
    if config.smoothing:
        derivs = smooth_derivatives(derivs, config.smoothing)
    vertices = integrate_derivatives(derivs, config, L)
    return ReconstructionResult(thetas, derivs, residuals, vertices, L, ambiguous)


def polyline_distance(points, polyline) -> np.ndarray:
    """Euclidean distance from each point to the nearest point of a polyline."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    poly = np.asarray(polyline, dtype=float)
    a, b = poly[:-1], poly[1:]
    ab = b - a
    denom = np.maximum(np.sum(ab * ab, axis=1), np.finfo(float).tiny)
    ap = points[:, None, :] - a[None, :, :]
    t = np.clip(np.sum(ap * ab[None], axis=2) / denom[None], 0.0, 1.0)
    nearest = a[None] + t[..., None] * ab[None]
    return np.min(np.linalg.norm(points[:, None, :] - nearest, axis=2), axis=1)
