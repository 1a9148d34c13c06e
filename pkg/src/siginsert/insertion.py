"""The insertion operator and its least-squares inverses.

For a level-n block ``sbar`` and a position p in 1..n+1, ``insert`` places a
vector x at letter p of every word.  As a d^{n+1} x d matrix A the columns are
orthogonal with common norm ||sbar||_2, so A^T A = ||sbar||_2^2 I and the
minimiser of ||Ax - b||_2 over the unit sphere is A^T b normalised.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .tensor import block_level, level_norm

TOL = 1e-12
SVD_SIZE_LIMIT = 2**24


class InsertionError(ValueError):
    pass


class DegenerateSignature(InsertionError):
    """The level the vector is inserted into is (numerically) zero."""


class AmbiguousMinimum(InsertionError):
    """The target is orthogonal to the range of the insertion map."""


class SizeGuard(InsertionError):
    """The explicit insertion matrix would be too large to build."""


@dataclass(frozen=True, eq=False)
class InsertionContext:
    dim: int
    level: int
    position: int
    sbar: np.ndarray
    lam: float = field(init=False)

    def __post_init__(self):
        sbar = np.array(self.sbar, dtype=float).ravel()
        if self.level < 1:
            raise ValueError("insertion level must be >= 1")
        if sbar.size != self.dim**self.level:
            raise ValueError(
                f"level-{self.level} block over R^{self.dim} needs {self.dim ** self.level} "
                f"coefficients, got {sbar.size}")
        if not 1 <= self.position <= self.level + 1:
            raise ValueError(f"position {self.position} outside 1..{self.level + 1}")
        sbar.setflags(write=False)
        object.__setattr__(self, "sbar", sbar)
        object.__setattr__(self, "lam", level_norm(sbar))

    @classmethod
    def from_block(cls, sbar, dim: int, position: int) -> InsertionContext:
        return cls(dim, block_level(sbar, dim), position, sbar)

    @property
    def _shape(self):
        return (self.dim,) * self.level


def insertion_position(theta: float, n: int) -> int:
    """floor(theta (n+2)) clamped into 1..n+1."""
    return min(max(int(np.floor(theta * (n + 2))), 1), n + 1)


def insert(ctx: InsertionContext, x) -> np.ndarray:
    x = np.asarray(x, dtype=float).ravel()
    if x.size != ctx.dim:
        raise ValueError(f"vector has {x.size} entries, expected {ctx.dim}")
    out = np.multiply.outer(ctx.sbar.reshape(ctx._shape), x)
    return np.moveaxis(out, -1, ctx.position - 1).ravel()


def contract_at(ctx: InsertionContext, b_next) -> np.ndarray:
    """Adjoint of ``insert``: A^T b for a level-(n+1) block b."""
    b_next = np.asarray(b_next, dtype=float).ravel()
    if b_next.size != ctx.dim ** (ctx.level + 1):
        raise ValueError(
            f"level-{ctx.level + 1} block needs {ctx.dim ** (ctx.level + 1)} coefficients, "
            f"got {b_next.size}")
    b = np.moveaxis(b_next.reshape((ctx.dim,) * (ctx.level + 1)), ctx.position - 1, -1)
    return np.tensordot(ctx.sbar.reshape(ctx._shape), b, axes=ctx.level)


def insertion_matrix(ctx: InsertionContext) -> np.ndarray:
    """The d^{n+1} x d matrix of ``insert``, column j = insert(e_j)."""
    if ctx.dim ** (ctx.level + 2) > SVD_SIZE_LIMIT:
        raise SizeGuard(
            f"insertion matrix for d={ctx.dim}, n={ctx.level} exceeds {SVD_SIZE_LIMIT} entries")
    return np.stack([insert(ctx, e) for e in np.eye(ctx.dim)], axis=1)


def _check_solvable(ctx, target):
    if ctx.lam <= TOL:
        raise DegenerateSignature(f"||level {ctx.level}||_2 = {ctx.lam:.3g} is degenerate")
    target = np.asarray(target, dtype=float).ravel()
    if target.size != ctx.dim ** (ctx.level + 1):
        raise ValueError("target block has the wrong size")
    return target


def solve_insertion(ctx: InsertionContext, sbar_next):
    """Unit vector x minimising ||insert(ctx, x) - sbar_next||_2.

    Returns ``(x, residual)``.  Raises DegenerateSignature when the inserted
    level vanishes and AmbiguousMinimum when every unit vector is optimal
    to working precision.
    """
    target = _check_solvable(ctx, sbar_next)
    c = contract_at(ctx, target)
    cnorm = np.linalg.norm(c)
    if cnorm <= TOL * max(np.linalg.norm(target), TOL):
        raise AmbiguousMinimum(
            f"contraction vanishes (|c| = {cnorm:.3g}); minimiser on the sphere is not unique")
    x = c / cnorm
    residual = float(np.linalg.norm(insert(ctx, x) - target))
    return x, residual


def solve_insertion_svd(ctx: InsertionContext, sbar_next):
    """Same problem as ``solve_insertion`` but via an explicit SVD of A.

    With A = U S V^T and y the first d entries of U^T b, the minimiser is
    V y / |y|.  Kept as an independent cross-check of the contraction route.
    """
    target = _check_solvable(ctx, sbar_next)
    A = insertion_matrix(ctx)
    U, _, Vt = np.linalg.svd(A, full_matrices=False)
    y = U.T @ target
    ynorm = np.linalg.norm(y)
    if ynorm <= TOL * max(np.linalg.norm(target), TOL):
        raise AmbiguousMinimum("projection of the target onto range(A) vanishes")
    x = Vt.T @ (y / ynorm)
    residual = float(np.linalg.norm(A @ x - target))
    return x, residual


@dataclass(frozen=True)
class TwoPieceSolution:
    a: np.ndarray
    b: np.ndarray
    residual: float
    rank_deficient: bool


def two_piece_matrix(s_n, dim: int) -> np.ndarray:
    """Matrix of (a, b) -> a (x) S^n + S^n (x) b, shape d^{n+1} x 2d."""
    n = block_level(s_n, dim)
    if n == 0:
        raise ValueError("two-piece system needs level n >= 1")
    left = InsertionContext(dim, n, 1, s_n)
    right = InsertionContext(dim, n, n + 1, s_n)
    return np.hstack([insertion_matrix(left), insertion_matrix(right)])


def solve_two_piece(s_n, s_next, dim: int) -> TwoPieceSolution:
    """Increments (a, b) of a two-segment path from two adjacent signature levels.

    Solves a (x) S^n + S^n (x) b = (n+1) S^{n+1} in the least-squares sense,
    taking the minimum-norm solution when the pieces are collinear.
    """
    s_n = np.asarray(s_n, dtype=float).ravel()
    s_next = np.asarray(s_next, dtype=float).ravel()
    n = block_level(s_n, dim)
    if s_next.size != dim ** (n + 1):
        raise ValueError(f"level-{n + 1} block needs {dim ** (n + 1)} coefficients")
    M = two_piece_matrix(s_n, dim)
    rhs = (n + 1) * s_next
    sol, _, rank, _ = np.linalg.lstsq(M, rhs, rcond=None)
    residual = float(np.linalg.norm(M @ sol - rhs))
    return TwoPieceSolution(sol[:dim], sol[dim:], residual, bool(rank < 2 * dim))
