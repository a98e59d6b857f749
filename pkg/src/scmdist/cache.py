"""Memoized Gram matrices and Cholesky factors.

Gram construction is the dominant repeated cost when the same dataset and
variables are queried at many intervention values or across many variable
pairs.  A :class:`GramCache` keys Grams by (row dataset, column dataset,
variable tuple, bandwidth) and Cholesky factors additionally by the total
ridge.  Reads are lock-free; construction is serialized per cache so each
key is built once.  Entries are evicted least-recently-used.

Dataset identity is the dataset ``id`` string: within one cache lifetime an
id must always refer to the same object (enforced), so cached entries can
never silently describe different data.
"""

from __future__ import annotations

import threading
from collections import OrderedDict

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from .dataset import Dataset
from .errors import NumericalError, ValidationError
from .kernel import KernelConfig, gram_entries

__all__ = ["GramCache", "CholFactor"]

JITTER_FLOOR = 1e-10
JITTER_CEILING = 1e-6


class CholFactor:
    """Cholesky factor of (Gram + ridge*I), exposing repeated solves."""

    def __init__(self, matrix: np.ndarray, ridge: float, jitter: float, label: str):
        self.label = label
        self.ridge = ridge
        jit = float(jitter)
        while True:
            m = matrix.copy()
            m[np.diag_indices_from(m)] += ridge + jit
            try:
                self._factor = cho_factor(m, lower=True, overwrite_a=True, check_finite=False)
                self.jitter_used = jit
                return
            except LinAlgError:
                nxt = JITTER_FLOOR if jit == 0.0 else jit * 10.0
                if nxt > JITTER_CEILING:
                    raise NumericalError(
                        f"Cholesky factorization failed for {label} "
                        f"(ridge_lambda={ridge:g}, jitter escalated to {jit:g})"
                    ) from None
                jit = nxt

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        return cho_solve(self._factor, rhs, check_finite=False)


class GramCache:
    """LRU cache of Gram matrices and factors over registered datasets."""

    def __init__(self, capacity: int = 12):
        if capacity < 1:
            raise ValidationError("cache capacity must be >= 1")
        self._capacity = capacity
        self._lock = threading.Lock()
        self._entries: OrderedDict = OrderedDict()
        self._datasets: dict[str, Dataset] = {}

    def _register(self, ds: Dataset):
        known = self._datasets.get(ds.id)
        if known is None:
            self._datasets[ds.id] = ds
        elif known is not ds:
            raise ValidationError(
                f"dataset id {ds.id!r} reused for a different dataset; "
                "give distinct datasets distinct ids"
            )

    def _get_or_build(self, key, build):
        entry = self._entries.get(key)
        if entry is not None:
            return entry
        with self._lock:
            entry = self._entries.get(key)
            if entry is not None:
                self._entries.move_to_end(key)
                return entry
            entry = build()
            self._entries[key] = entry
            while len(self._entries) > self._capacity:
                self._entries.popitem(last=False)
            return entry

    def gram(self, row: Dataset, col: Dataset, variables: tuple[str, ...],
             kcfg: KernelConfig) -> np.ndarray:
        """Hadamard-product Gram over ``variables`` between two datasets."""
        if not variables:
            raise ValidationError("need at least one variable for a Gram matrix")
        with self._lock:
            self._register(row)
            self._register(col)
        key = ("gram", row.id, col.id, tuple(variables), kcfg.bandwidth_sq)
        if len(variables) > 1:
            # joint product kernel assembled from cached per-variable Grams;
            # resolve the factors first (the cache lock is not reentrant)
            factors = [self.gram(row, col, (v,), kcfg) for v in variables]

            def build():
                out = factors[0].copy()
                for f in factors[1:]:
                    out *= f
                out.setflags(write=False)
                return out
        else:
            def build():
                out = gram_entries(row.column(variables[0]), col.column(variables[0]), kcfg)
                out.setflags(write=False)
                return out

        return self._get_or_build(key, build)

    def factor(self, data: Dataset, variables: tuple[str, ...], kcfg: KernelConfig,
               ridge: float, jitter: float) -> CholFactor:
        """Cholesky factor of the joint Gram over ``variables`` plus ridge."""
        key = ("chol", data.id, tuple(variables), kcfg.bandwidth_sq, ridge, jitter)
        base = self.gram(data, data, variables, kcfg)
        label = f"variables {list(variables)!r} of dataset {data.id!r}"
        return self._get_or_build(key, lambda: CholFactor(base, ridge, jitter, label))
