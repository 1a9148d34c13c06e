"""Dense truncated tensor algebra over R^d.

A level-n block is a flat float64 array of length d**n.  Words are ordered
most-significant-letter first, which is exactly numpy's C order for an array
of shape ``(d,) * n``, so ``block.reshape((d,) * n)[i1, ..., in]`` is the
coefficient of the word (i1+1, ..., in+1).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np


class NormKind(enum.Enum):
    """Entrywise norms on a level block; all are admissible tensor norms."""

    L1 = "l1"
    L2 = "l2"
    LINF = "linf"

    @classmethod
    def parse(cls, value) -> NormKind:
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown norm {value!r}; expected one of l1, l2, linf") from None


def level_norm(block, kind=NormKind.L2) -> float:
    block = np.asarray(block, dtype=float).ravel()
    kind = NormKind.parse(kind)
    if block.size == 0:
        return 0.0
    # fsum is correctly rounded, so the result does not depend on coefficient order
    if kind is NormKind.L1:
        return math.fsum(np.abs(block))
    peak = float(np.max(np.abs(block)))
    if kind is NormKind.L2:
        # scale first so tiny or huge coefficients neither underflow nor overflow
        return peak * math.sqrt(math.fsum((block / peak) ** 2)) if peak > 0 else 0.0
    return peak


def block_level(block, dim: int) -> int:
    """Return n such that ``len(block) == dim**n``; raise if there is none."""
    size = np.asarray(block).size
    n, count = 0, 1
    while count < size:
        count *= dim
        n += 1
    if count != size:
        raise ValueError(f"block of size {size} is not a power of dimension {dim}")
    return n


def tensor_product(a, b, dim: int | None = None) -> np.ndarray:
    """Tensor product of a level-m block and a level-n block.

    ``out[w + v] = a[w] * b[v]``.  When ``dim`` is given both blocks are
    checked to be whole levels over R^dim.
    """
    a = np.asarray(a, dtype=float).ravel()
    b = np.asarray(b, dtype=float).ravel()
    if dim is not None:
        block_level(a, dim)
        block_level(b, dim)
    return np.outer(a, b).ravel()


def permute_block(block, perm, dim: int) -> np.ndarray:
    """Apply a letter permutation to every word of a level block."""
    block = np.asarray(block, dtype=float)
    n = block_level(block, dim)
    if sorted(perm) != list(range(n)):
        raise ValueError(f"{perm!r} is not a permutation of {n} letters")
    if n == 0:
        return block.ravel().copy()
    return np.transpose(block.reshape((dim,) * n), perm).ravel()


@dataclass(frozen=True, eq=False)
class TruncatedTensorSeries:
    """Levels 0..depth of an element of the truncated tensor algebra.

    ``levels[n]`` holds ``dim**n`` coefficients; level 0 is a length-1 array.
    Arrays are made read-only on construction.
    """

    dim: int
    levels: tuple

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be positive")
        levels = []
        for n, block in enumerate(self.levels):
            arr = np.array(block, dtype=float).ravel()
            if arr.size != self.dim**n:
                raise ValueError(
                    f"level {n} has {arr.size} coefficients, expected {self.dim ** n}")
            arr.setflags(write=False)
            levels.append(arr)
        if not levels:
            raise ValueError("a series needs at least level 0")
        object.__setattr__(self, "levels", tuple(levels))

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    def __getitem__(self, n: int) -> np.ndarray:
        return self.levels[n]

    @property
    def is_group_like(self) -> bool:
        # necessary condition only; exact group-likeness is not decidable numerically
        return self.levels[0][0] == 1.0

    @classmethod
    def identity(cls, dim: int, depth: int) -> TruncatedTensorSeries:
        levels = [np.ones(1)] + [np.zeros(dim**n) for n in range(1, depth + 1)]
        return cls(dim, tuple(levels))

    @classmethod
    def zeros(cls, dim: int, depth: int) -> TruncatedTensorSeries:
        return cls(dim, tuple(np.zeros(dim**n) for n in range(depth + 1)))

    def truncate(self, depth: int) -> TruncatedTensorSeries:
        if depth > self.depth:
            raise ValueError(f"cannot truncate depth {self.depth} series to {depth}")
        return TruncatedTensorSeries(self.dim, self.levels[: depth + 1])

    def scale_levels(self, factor: float) -> TruncatedTensorSeries:
        """Multiply level n by factor**n (the dilation of the underlying path)."""
        return TruncatedTensorSeries(
            self.dim, tuple(block * factor**n for n, block in enumerate(self.levels)))

    def allclose(self, other, atol=1e-12, rtol=0.0) -> bool:
        if self.dim != other.dim or self.depth != other.depth:
            return False
        return all(np.allclose(a, b, atol=atol, rtol=rtol)
                   for a, b in zip(self.levels, other.levels))

    def max_abs_diff(self, other) -> float:
        if self.dim != other.dim or self.depth != other.depth:
            raise ValueError("series shapes differ")
        return max(float(np.max(np.abs(a - b))) for a, b in zip(self.levels, other.levels))

    def __repr__(self):
        return f"TruncatedTensorSeries(dim={self.dim}, depth={self.depth})"
