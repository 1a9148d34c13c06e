"""Numerical companions to the convergence and lower-bound analysis.

Insertion gaps, the binomial-sum upper bound on them, the monotone lattice
path norms, the hyperbolic development of a polyline and the length
estimate from a single signature level.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .insertion import InsertionContext, insert, insertion_position
from .signature import PiecewiseLinearPath, normalised_level, path_signature
from .tensor import NormKind, TruncatedTensorSeries, level_norm

# direct products are exact enough below this; above it terms go through lgamma
_LOG_SPACE_FROM = 50


def _as_path(path):
    return path if isinstance(path, PiecewiseLinearPath) else PiecewiseLinearPath(path)


def _gap_from_signature(sig, path, theta, n, kind):
    L = path.length
    p = insertion_position(theta, n)
    ctx = InsertionContext(sig.dim, n, p, normalised_level(sig, n, L))
    diff = insert(ctx, path.unit_derivative(theta)) - normalised_level(sig, n + 1, L)
    return p, level_norm(diff, kind)


def insertion_gap(path, theta: float, n: int, kind=NormKind.L1) -> float:
    """||I_{p,n}(f(theta)) - Sbar_{n+1}|| with p = floor(theta (n+2)) clamped."""
    if not 0.0 < theta < 1.0:
        raise ValueError(f"theta must lie in (0, 1), got {theta}")
    if n < 1:
        raise ValueError("n must be >= 1")
    path = _as_path(path)
    return _gap_from_signature(path_signature(path, n + 1), path, theta, n, kind)[1]


@dataclass
class GapCurve:
    theta: float
    kind: NormKind
    rows: list = field(default_factory=list)  # (n, p, gap)
    label: str = ""


def gap_curve(path, theta: float, levels, kind=NormKind.L1, label="") -> GapCurve:
    if not 0.0 < theta < 1.0:
        raise ValueError(f"theta must lie in (0, 1), got {theta}")
    levels = list(levels)
    if not levels or min(levels) < 1:
        raise ValueError("levels must be >= 1")
    path = _as_path(path)
    kind = NormKind.parse(kind)
    sig = path_signature(path, max(levels) + 1)
    curve = GapCurve(theta, kind, label=label)
    for n in levels:
        p, gap = _gap_from_signature(sig, path, theta, n, kind)
        curve.rows.append((n, p, gap))
    return curve


def _binom_pmf(n: int, k: int, q: float) -> float:
    if k < 0 or k > n:
        return 0.0
    if n <= _LOG_SPACE_FROM:
        return math.comb(n, k) * q**k * (1.0 - q) ** (n - k)
    if q <= 0.0:
        return 1.0 if k == 0 else 0.0
    if q >= 1.0:
        return 1.0 if k == n else 0.0
    log_c = math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)
    return math.exp(log_c + k * math.log(q) + (n - k) * math.log1p(-q))


def _tail(n, q, lo, hi):
    return math.fsum(_binom_pmf(n, k, q) for k in range(lo, hi + 1))


def binomial_bound(s: float, t: float, n: int, p: int) -> float:
    """Upper bound on the insertion gap at theta in (s, t) for a path linear on [s, t].

    Sum of five binomial expressions: the mean absolute deviation
    E|Y/(t-s) - 1| for Y = Binomial(n+1, t-s)/(n+1), plus the four tails that
    account for p landing outside the linear piece.  Every term is evaluated
    exactly (no Hoeffding relaxation).
    """
    if not 0.0 <= s < t <= 1.0:
        raise ValueError(f"need 0 <= s < t <= 1, got s={s}, t={t}")
    if n < 1 or not 1 <= p <= n + 1:
        raise ValueError(f"need n >= 1 and 1 <= p <= n+1, got n={n}, p={p}")
    w = t - s
    m = n + 1
    centre = math.fsum(
        _binom_pmf(m, k, w) * abs(k / (m * w) - 1.0) for k in range(m + 1))
    return math.fsum([
        centre,
        _tail(n, s, p, n),
        _tail(n, 1.0 - t, n - p + 2, n),
        _tail(m, s, p, m),
        _tail(m, 1.0 - t, n - p + 2, m),
    ])


def lattice_decay(n: int):
    """(l1, hs) norms of n! S^n for the two-piece lattice path with legs of length 1/2."""
    if n < 0:
        raise ValueError("n must be non-negative")
    l1 = math.fsum(math.comb(n, k) for k in range(n + 1)) / 2.0**n
    hs = math.sqrt(math.fsum(math.comb(n, k) ** 2 for k in range(n + 1))) / 2.0**n
    return l1, hs


def lattice_path(dim: int = 2) -> PiecewiseLinearPath:
    """Unit-length monotone lattice path: 1/2 along e_2 then 1/2 along e_1."""
    e = np.eye(dim)
    return PiecewiseLinearPath([np.zeros(dim), 0.5 * e[1], 0.5 * e[1] + 0.5 * e[0]])


def hyperbolic_F(x) -> np.ndarray:
    x = np.asarray(x, dtype=float).ravel()
    d = x.size
    F = np.zeros((d + 1, d + 1))
    F[:d, d] = x
    F[d, :d] = x
    return F


@dataclass(frozen=True, eq=False)
class GradedDevelopment:
    """Images M_n = (F (x) ... (x) F)(S^n) of the signature levels of a path."""

    matrices: tuple
    length: float

    @property
    def depth(self) -> int:
        return len(self.matrices) - 1

    def witness(self, n: int) -> float:
        """n! L^{-n} ||M_n||_op, a lower bound for ||Sbar_n|| in the arrow norm."""
        op = np.linalg.norm(self.matrices[n], 2)
        return float(math.factorial(n) * op / self.length**n)

    def witnesses(self):
        return [self.witness(n) for n in range(self.depth + 1)]


def graded_development(path, depth: int) -> GradedDevelopment:
    path = _as_path(path)
    size = path.dim + 1
    total = None
    for delta in path.increments:
        F = hyperbolic_F(delta)
        seg = [np.eye(size)]
        for k in range(1, depth + 1):
            seg.append(seg[-1] @ F / k)
        if total is None:
            total = seg
            continue
        total = [sum(total[k] @ seg[n - k] for k in range(n + 1)) for n in range(depth + 1)]
    return GradedDevelopment(tuple(total), path.length)


def lower_bound_constant(pieces: int, omega: float, c: float) -> float:
    """c exp(-(M-1) K(omega)) with K(omega) = log(2 / (1 - cos|omega|))."""
    if pieces < 1:
        raise ValueError("piece count must be >= 1")
    if omega == 0:
        raise ValueError("half-angle omega must be non-zero")
    if not 0.0 < c < 1.0:
        raise ValueError(f"c must lie in (0, 1), got {c}")
    K = math.log(2.0 / (1.0 - math.cos(abs(omega))))
    return c * math.exp(-(pieces - 1) * K)


def smallest_half_angle(path) -> float:
    """Half of the smallest angle between adjacent edges of a polyline.

    The angle at a vertex is taken between the two edges meeting there, so a
    straight continuation has angle pi and a full reversal has angle 0.
    """
    path = _as_path(path)
    if path.n_pieces < 2:
        return math.pi / 2
    u = path.directions
    cosines = np.clip(np.sum(-u[:-1] * u[1:], axis=1), -1.0, 1.0)
    return float(np.min(np.arccos(cosines))) / 2


def length_estimate(sig: TruncatedTensorSeries, n: int, kind=NormKind.L2) -> float:
    """(n! ||S^n||)^{1/n}, which tends to the path length for smooth paths."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > sig.depth:
        raise ValueError(f"signature depth {sig.depth} < level {n}")
    norm = level_norm(sig[n], kind)
    if norm == 0.0:
        raise ValueError(f"signature level {n} is zero; no length estimate")
    return float((math.factorial(n) * norm) ** (1.0 / n))
