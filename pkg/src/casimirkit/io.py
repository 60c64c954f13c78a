"""Curve containers and byte-stable CSV/JSON emission."""
from __future__ import annotations

import json
import math
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ValidationError


def _round12(v: float) -> float:
    v = float(v)
    return v if not math.isfinite(v) else float(f"{v:.11e}")


@dataclass(frozen=True)
class Column:
    name: str
    unit: str
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(_round12(v) for v in self.values))


@dataclass(frozen=True)
class CurveOutput:
    columns: tuple
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        lengths = {len(c.values) for c in self.columns}
        if len(lengths) > 1:
            raise ValidationError(f"columns have unequal lengths {sorted(lengths)}")

    def column(self, name: str) -> Column:
        for c in self.columns:
            if c.name == name:
                return c
        raise KeyError(name)

    def __len__(self):
        return len(self.columns[0].values) if self.columns else 0


def _fmt(v: float) -> str:
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return f"{v:.11e}"


def _json_value(v: float):
    return v if math.isfinite(v) else _fmt(v)


def emit(curve: CurveOutput, fmt: str = "csv") -> bytes:
    if fmt == "csv":
        lines = [",".join(f"{c.name}[{c.unit}]" for c in curve.columns)]
        for row in zip(*(c.values for c in curve.columns)):
            lines.append(",".join(_fmt(v) for v in row))
        return ("\n".join(lines) + "\n").encode()
    if fmt == "json":
        doc = {
            "columns": [{"name": c.name, "unit": c.unit, "values": [_json_value(v) for v in c.values]}
                        for c in curve.columns],
            "metadata": curve.metadata,
        }
        return (json.dumps(doc, indent=2, sort_keys=True, allow_nan=False) + "\n").encode()
    raise ValidationError(f"unknown output format {fmt!r}")


def parse_json(data: bytes) -> CurveOutput:
    doc = json.loads(data)
    cols = tuple(Column(c["name"], c["unit"], tuple(float(v) for v in c["values"])) for c in doc["columns"])
    return CurveOutput(cols, doc.get("metadata", {}))


def write_atomic(path, data: bytes) -> None:
    """Write via a temporary file in the target directory, then rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
