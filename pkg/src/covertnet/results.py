"""Result tables with embedded provenance and deterministic CSV emission."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ParameterError


def format_cell(value) -> str:
    """Round-trippable, platform-stable cell text."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, str):
        return value
    # numpy scalars and anything else numeric
    try:
        f = float(value)
    except (TypeError, ValueError):
        return str(value)
    if f == int(f) and abs(f) < 1e15 and isinstance(value, (int,)):
        return str(int(f))
    return repr(f)


@dataclass
class ResultTable:
    """Rectangular numeric table plus a provenance header.

    meta rows are emitted as '# key = value' comment lines in insertion
    order, followed by a config hash computed over them, so every CSV
    carries its full configuration.
    """

    columns: list[str]
    rows: list[tuple] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def add_row(self, *cells):
        if len(cells) != len(self.columns):
            raise ParameterError(
                f"row width {len(cells)} != {len(self.columns)} columns")
        self.rows.append(tuple(cells))

    def column(self, name: str) -> list:
        idx = self.columns.index(name)
        return [row[idx] for row in self.rows]

    def config_hash(self) -> str:
        blob = "\n".join(f"{k}={format_cell(v)}" for k, v in self.meta.items())
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:12]

    def to_csv_text(self) -> str:
        lines = [f"# {k} = {format_cell(v)}" for k, v in self.meta.items()]
        lines.append(f"# config_hash = {self.config_hash()}")
        lines.append(",".join(self.columns))
        for row in self.rows:
            lines.append(",".join(format_cell(c) for c in row))
        return "\n".join(lines) + "\n"

    def write_csv(self, path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_csv_text(), encoding="utf-8", newline="\n")
        return path

    def pretty(self, max_rows: int = 40) -> str:
        widths = [max(len(c), *(len(format_cell(r[i])) for r in self.rows))
                  if self.rows else len(c) for i, c in enumerate(self.columns)]
        out = ["  ".join(c.ljust(w) for c, w in zip(self.columns, widths))]
        for row in self.rows[:max_rows]:
            out.append("  ".join(format_cell(c).ljust(w) for c, w in zip(row, widths)))
        if len(self.rows) > max_rows:
            out.append(f"... ({len(self.rows) - max_rows} more rows)")
        return "\n".join(out)


def read_csv(path):
    """Parse a table written by write_csv back into (meta, columns, rows)."""
    meta = {}
    columns = None
    rows = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if "=" in body:
                k, v = body.split("=", 1)
                meta[k.strip()] = v.strip()
            continue
        cells = line.split(",")
        if columns is None:
            columns = cells
        else:
            parsed = []
            for c in cells:
                try:
                    parsed.append(float(c))
                except ValueError:
                    parsed.append(c)
            rows.append(tuple(parsed))
    return meta, columns or [], rows
