"""Result tables and their CSV form."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from pathlib import Path

__all__ = ["ResultTable", "format_value"]


def format_value(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return f"{v:.16e}"
    return str(v)


@dataclass
class ResultTable:
    """Rectangular table with a metadata block.

    ``children`` holds derived tables (fitted orders, ratios) written next
    to the main one.
    """

    name: str
    columns: tuple
    rows: list = field(default_factory=list)
    metadata: list = field(default_factory=list)
    children: list = field(default_factory=list)

    def add(self, *values):
        if len(values) != len(self.columns):
            raise ValueError(f"{self.name}: expected {len(self.columns)} values, got {len(values)}")
        self.rows.append(tuple(values))

    def column(self, name):
        k = self.columns.index(name)
        return [r[k] for r in self.rows]

    def where(self, **match):
        idx = {k: self.columns.index(k) for k in match}
        return [r for r in self.rows if all(r[idx[k]] == v for k, v in match.items())]

    def child(self, name) -> "ResultTable":
        for c in self.children:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_csv(self) -> str:
        buf = io.StringIO()
        for key, value in self.metadata:
            buf.write(f"# {key} = {value}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([format_value(v) for v in row])
        return buf.getvalue()

    def write(self, directory) -> list[Path]:
        """Write this table and its children as ``<name>.csv`` files."""
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        paths = []
        for table in [self, *self.children]:
            path = directory / f"{table.name}.csv"
            with open(path, "w", newline="") as fh:
                fh.write(table.to_csv())
            paths.append(path)
        return paths
