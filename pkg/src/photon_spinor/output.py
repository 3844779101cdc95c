"""JSON and CSV emission with the package's number conventions.

Complex numbers become ``[re, im]`` pairs, arrays become nested lists and
non-finite floats are refused.  CSV cells carry 17 significant digits so
64-bit floats round-trip exactly.
"""

from __future__ import annotations

import csv
import dataclasses
import enum
import io
import json
import math
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np

__all__ = ["NonFiniteOutput", "jsonable", "dumps_json", "format_float", "dumps_csv", "emit"]


class NonFiniteOutput(ValueError):
    """A NaN or infinity reached an output document."""


def format_float(value: float) -> str:
    value = float(value)
    if not math.isfinite(value):
        raise NonFiniteOutput(f"refusing to write non-finite value {value}")
    return format(value, ".17g")


def _real(value: float, path: str) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise NonFiniteOutput(f"non-finite value {value} at {path or 'top level'}")
    return value


def jsonable(obj: Any, path: str = "") -> Any:
    """Convert ``obj`` into plain JSON types.

    Raises
    ------
    NonFiniteOutput
        When a NaN or infinity is found; ``path`` locates it.
    """
    if obj is None or isinstance(obj, (bool, np.bool_, str)):
        return bool(obj) if isinstance(obj, np.bool_) else obj
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _real(obj, path)
    if isinstance(obj, (complex, np.complexfloating)):
        return [_real(obj.real, path + ".re"), _real(obj.imag, path + ".im")]
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist(), path)
    if hasattr(obj, "to_json"):
        return jsonable(obj.to_json(), path)
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return jsonable(dataclasses.asdict(obj), path)
    if isinstance(obj, dict):
        return {str(k): jsonable(v, f"{path}.{k}") for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v, f"{path}[{i}]") for i, v in enumerate(obj)]
    raise TypeError(f"cannot serialize {type(obj).__name__} at {path or 'top level'}")


def dumps_json(obj: Any) -> str:
    return json.dumps(jsonable(obj), indent=2, allow_nan=False) + "\n"


def dumps_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """RFC 4180 text; floats use 17 significant digits."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_float(v) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def emit(text: str, out: str | Path | None, stream) -> None:
    """Write ``text`` to ``out`` when given, otherwise to ``stream``."""
    if out is None:
        stream.write(text)
    else:
        Path(out).write_text(text, newline="")
