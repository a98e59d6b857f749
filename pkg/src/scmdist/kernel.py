"""Gaussian kernel evaluation and Gram-matrix construction.

The kernel family is fixed to the Gaussian kernel

    k(x, y) = exp(-(x - y)^2 / (2 * sigma_sq)),

parameterized by its variance ``sigma_sq`` (squared data units).  Joint
kernels over several variables are Hadamard (entrywise) products of the
per-variable Gram matrices, which realizes the product kernel.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ValidationError

__all__ = [
    "KernelConfig",
    "GramMatrix",
    "gaussian_kernel",
    "gram",
    "hadamard_gram",
    "median_heuristic",
]

# Cap on the number of points used by the median heuristic.
MEDIAN_HEURISTIC_MAX_POINTS = 1000


@dataclass(frozen=True)
class KernelConfig:
    """Gaussian kernel variance sigma_sq (must be > 0)."""

    bandwidth_sq: float

    def __post_init__(self):
        b = self.bandwidth_sq
        if not np.isfinite(b) or b <= 0:
            raise ValidationError(f"bandwidth_sq must be positive and finite, got {b!r}")


@dataclass(frozen=True)
class GramMatrix:
    """Kernel evaluations between two sample columns.

    ``entries[s, t] = k(row_points[s], col_points[t])``.  ``row_source`` and
    ``col_source`` are free-form identifiers (dataset/variable labels) used
    for bookkeeping only.
    """

    entries: np.ndarray
    row_source: str = ""
    col_source: str = ""

    def __post_init__(self):
        e = np.asarray(self.entries, dtype=float)
        if e.ndim != 2:
            raise ValidationError(f"Gram entries must be a 2-D array, got ndim={e.ndim}")
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape


def _as_clean_column(values, what: str) -> np.ndarray:
    col = np.asarray(values, dtype=float).ravel()
    if col.size == 0:
        raise ValidationError(f"{what} is empty")
    if not np.all(np.isfinite(col)):
        raise ValidationError(f"{what} contains non-finite values")
    return col


def gaussian_kernel(x: float, y: float, cfg: KernelConfig) -> float:
    """Evaluate k(x, y) = exp(-(x - y)^2 / (2 sigma_sq)); symmetric, in (0, 1]."""
    if not (np.isfinite(x) and np.isfinite(y)):
        raise ValidationError(f"kernel inputs must be finite, got ({x!r}, {y!r})")
    d = float(x) - float(y)
    return float(np.exp(-(d * d) / (2.0 * cfg.bandwidth_sq)))


def gram_entries(col_a, col_b, cfg: KernelConfig) -> np.ndarray:
    """Raw Gram array between two 1-D sample columns.

    Entry (s, t) is ``gaussian_kernel(col_a[s], col_b[t], cfg)``.
    """
    a = _as_clean_column(col_a, "first column")
    b = _as_clean_column(col_b, "second column")
    sq = np.subtract.outer(a, b)
    np.square(sq, out=sq)
    sq *= -1.0 / (2.0 * cfg.bandwidth_sq)
    return np.exp(sq, out=sq)


def gram(col_a, col_b, cfg: KernelConfig, row_source: str = "", col_source: str = "") -> GramMatrix:
    """Gram matrix of all pairwise kernel values between two sample columns."""
    return GramMatrix(gram_entries(col_a, col_b, cfg), row_source, col_source)


def kernel_vector(col, value: float, cfg: KernelConfig) -> np.ndarray:
    """Vector of kernel evaluations k(col[n], value) for a single query point."""
    a = _as_clean_column(col, "column")
    if not np.isfinite(value):
        raise ValidationError(f"query value must be finite, got {value!r}")
    d = a - float(value)
    return np.exp(-(d * d) / (2.0 * cfg.bandwidth_sq))


def hadamard_gram(grams: Sequence[GramMatrix]) -> GramMatrix:
    """Entrywise product of equally shaped Gram matrices (product kernel)."""
    if len(grams) == 0:
        raise ValidationError("hadamard_gram requires at least one Gram matrix")
    first = grams[0]
    if len(grams) == 1:
        return first
    shape = first.shape
    out = first.entries.copy()
    for g in grams[1:]:
        if g.shape != shape:
            raise ValidationError(f"Gram shape mismatch: {g.shape} vs {shape}")
        out *= g.entries
    row = "*".join(g.row_source for g in grams)
    col = "*".join(g.col_source for g in grams)
    return GramMatrix(out, row, col)


def median_heuristic(col, max_points: int = MEDIAN_HEURISTIC_MAX_POINTS) -> KernelConfig:
    """Default bandwidth: median of squared pairwise differences.

    Uses a deterministic evenly strided subsample of at most ``max_points``
    points so the cost stays quadratic in ``max_points`` only.  Raises when
    every value is identical (no usable scale; pass an explicit bandwidth).
    """
    a = _as_clean_column(col, "column")
    if a.size < 2:
        raise ValidationError("median heuristic needs at least 2 values")
    if a.size > max_points:
        idx = np.linspace(0, a.size - 1, max_points).round().astype(int)
        a = a[idx]
    diff_sq = np.subtract.outer(a, a) ** 2
    pair_vals = diff_sq[np.triu_indices(a.size, k=1)]
    med = float(np.median(pair_vals))
    if med <= 0.0:
        raise ValidationError(
            "median heuristic degenerate (all subsampled values identical); "
            "supply an explicit bandwidth_sq"
        )
    return KernelConfig(bandwidth_sq=med)
