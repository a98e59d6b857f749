"""In-memory dataset: named real-valued columns of equal length."""

from __future__ import annotations

from typing import Mapping, Sequence

import numpy as np

from .errors import ValidationError

__all__ = ["Dataset"]


class Dataset:
    """N observations of d named real variables, all columns complete and finite.

    Columns are aligned by name everywhere in the package, so the declaration
    order of ``variable_names`` never affects computed distances.
    """

    def __init__(self, columns: Mapping[str, Sequence[float]], id: str = "",
                 variable_names: Sequence[str] | None = None):
        names = list(variable_names) if variable_names is not None else list(columns)
        if len(set(names)) != len(names):
            raise ValidationError("duplicate variable names")
        if set(names) != set(columns):
            raise ValidationError("variable_names must match the column keys")
        if not names:
            raise ValidationError("dataset needs at least one variable")
        cols = {}
        n = None
        for name in names:
            col = np.asarray(columns[name], dtype=float).ravel()
            if col.size == 0:
                raise ValidationError(f"column {name!r} is empty")
            if n is None:
                n = col.size
            elif col.size != n:
                raise ValidationError(
                    f"column {name!r} has length {col.size}, expected {n}")
            if not np.all(np.isfinite(col)):
                raise ValidationError(f"column {name!r} contains non-finite values")
            col.setflags(write=False)
            cols[name] = col
        self._columns = cols
        self._names = tuple(names)
        self.id = str(id)
        self.n = int(n)

    @property
    def variable_names(self) -> tuple[str, ...]:
        return self._names

    def column(self, name: str) -> np.ndarray:
        if name not in self._columns:
            raise ValidationError(f"unknown variable {name!r} in dataset {self.id!r}")
        return self._columns[name]

    def mean(self, name: str) -> float:
        return float(self.column(name).mean())

    def quantile(self, name: str, level: float) -> float:
        if not 0.0 < level < 1.0:
            raise ValidationError(f"quantile level must be in (0, 1), got {level}")
        return float(np.quantile(self.column(name), level))

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"Dataset(id={self.id!r}, n={self.n}, variables={list(self._names)!r})"
