"""File ingestion and result serialization.

Formats:
  datasets   strict CSV, mandatory header of unique variable names, numeric
             finite body, comma separator, '.' decimal point, UTF-8
  graphs     edge-list text: one ``parent -> child`` per line, ``#`` comments,
             bare names declare isolated nodes
  reports    JSON (deterministic key order) or CSV (pairwise matrices carry a
             header row/column of environment ids)

All parsing is strict: malformed input raises with the offending line/cell
rather than being coerced.
"""

from __future__ import annotations

import csv
import json
import math
from importlib import resources
from pathlib import Path

import numpy as np

from ._version import __version__
from .dataset import Dataset
from .distance import DistanceReport, PairwiseMatrix
from .errors import ValidationError
from .graph import Dag

__all__ = [
    "load_dataset",
    "save_dataset",
    "load_graph",
    "save_graph",
    "write_report",
    "sachs_expert_graph",
]


def load_dataset(path, id: str | None = None) -> Dataset:
    """Read a dataset from CSV; the id defaults to the file stem."""
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValidationError(f"{path}: empty file, expected a header row") from None
        names = [h.strip() for h in header]
        if any(not n for n in names):
            raise ValidationError(f"{path}: header has an empty column name")
        if len(set(names)) != len(names):
            raise ValidationError(f"{path}: duplicate variable names in header")
        columns = {n: [] for n in names}
        for lineno, row in enumerate(reader, start=2):
            if len(row) != len(names):
                raise ValidationError(
                    f"{path}: line {lineno} has {len(row)} cells, expected {len(names)}")
            for name, cell in zip(names, row):
                try:
                    value = float(cell)
                except ValueError:
                    raise ValidationError(
                        f"{path}: line {lineno}, column {name!r}: "
                        f"non-numeric cell {cell.strip()!r}") from None
                if not math.isfinite(value):
                    raise ValidationError(
                        f"{path}: line {lineno}, column {name!r}: "
                        f"non-finite cell {cell.strip()!r}")
                columns[name].append(value)
        if not columns[names[0]]:
            raise ValidationError(f"{path}: no data rows")
    return Dataset(columns, id=id if id is not None else path.stem, variable_names=names)


def save_dataset(data: Dataset, path) -> None:
    """Write a dataset as CSV at full float precision."""
    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(data.variable_names)
        cols = [data.column(v) for v in data.variable_names]
        for idx in range(data.n):
            writer.writerow([repr(float(c[idx])) for c in cols])


def load_graph(path, nodes=None) -> Dag:
    """Read an edge-list graph file; optionally check the exact node set."""
    path = Path(path)
    seen_nodes: list[str] = []
    seen_set: set[str] = set()
    edges: list[tuple[str, str]] = []

    def note(name: str):
        if name not in seen_set:
            seen_set.add(name)
            seen_nodes.append(name)

    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "->" in line:
                parts = [p.strip() for p in line.split("->")]
                if len(parts) != 2 or not parts[0] or not parts[1]:
                    raise ValidationError(
                        f"{path}: line {lineno}: expected 'parent -> child', got {raw.strip()!r}")
                note(parts[0])
                note(parts[1])
                edges.append((parts[0], parts[1]))
            else:
                if any(ch.isspace() for ch in line):
                    raise ValidationError(
                        f"{path}: line {lineno}: expected 'parent -> child' or a "
                        f"single node name, got {raw.strip()!r}")
                note(line)
    if nodes is not None:
        expected = set(nodes)
        if expected != seen_set:
            missing = sorted(expected - seen_set)
            extra = sorted(seen_set - expected)
            raise ValidationError(
                f"{path}: node set mismatch (missing {missing}, unexpected {extra})")
    return Dag(seen_nodes, edges)


def save_graph(g: Dag, path) -> None:
    path = Path(path)
    with open(path, "w", encoding="utf-8") as fh:
        linked = set()
        for u, v in sorted(g.edges):
            fh.write(f"{u} -> {v}\n")
            linked.add(u)
            linked.add(v)
        for n in g.nodes:
            if n not in linked:
                fh.write(f"{n}\n")


def sachs_expert_graph() -> Dag:
    """The bundled 11-node expert consensus protein-signaling network."""
    ref = resources.files("scmdist").joinpath("resources/sachs_expert_graph.txt")
    with resources.as_file(ref) as path:
        return load_graph(path)


def _pair_key(i: str, j: str) -> str:
    return f"{i}->{j}"


def report_to_dict(report: DistanceReport) -> dict:
    return {
        "kind": report.kind,
        "value": report.value,
        "dataset_ids": list(report.dataset_ids),
        "pair_terms": {_pair_key(i, j): v for (i, j), v in sorted(report.pair_terms.items())},
        "config": _jsonable(dict(report.config_echo)),
        "version": __version__,
    }


def matrix_to_dict(matrix: PairwiseMatrix) -> dict:
    return {
        "kind": "pairwise",
        "metric": matrix.metric,
        "ids": list(matrix.ids),
        "values": [[float(v) for v in row] for row in matrix.values],
        "version": __version__,
    }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    return obj


def render_report(result: DistanceReport | PairwiseMatrix, format: str = "json") -> str:
    """Serialize a result to a deterministic JSON or CSV string."""
    if format not in ("json", "csv"):
        raise ValidationError(f"format must be 'json' or 'csv', got {format!r}")
    if format == "json":
        payload = (matrix_to_dict(result) if isinstance(result, PairwiseMatrix)
                   else report_to_dict(result))
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    lines = []
    if isinstance(result, PairwiseMatrix):
        lines.append(",".join(["id"] + list(result.ids)))
        for label, row in zip(result.ids, result.values):
            lines.append(",".join([label] + [repr(float(v)) for v in row]))
    else:
        lines.append("term,value")
        lines.append(f"{result.kind},{result.value!r}")
        for (i, j), v in sorted(result.pair_terms.items()):
            lines.append(f"{_pair_key(i, j)},{v!r}")
    return "\n".join(lines) + "\n"


def write_report(result: DistanceReport | PairwiseMatrix, path, format: str = "json") -> None:
    """Write a distance report or pairwise matrix to disk."""
    Path(path).write_text(render_report(result, format), encoding="utf-8")
