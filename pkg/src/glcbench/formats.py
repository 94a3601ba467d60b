"""Canonical text encoding shared by the scene, model, and rule documents.

Every float is written with 17 significant digits, which round-trips IEEE
doubles exactly, and every object key is emitted in sorted order, so equal
values always serialize to identical bytes.
"""

import json
import math

from .errors import ValidationError

FORMAT_VERSION = 1


def format_float(x: float) -> str:
    """17-significant-digit decimal form of ``x``; parses back bit-exact."""
    if not math.isfinite(x):
        raise ValidationError(f"non-finite value {x!r} cannot be serialized")
    s = f"{x:.17g}"
    if "." not in s and "e" not in s and "E" not in s:
        s += ".0"
    return s


def _emit(obj, out: list) -> None:
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(format_float(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=False))
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, item in enumerate(obj):
            if i:
                out.append(",")
            _emit(item, out)
        out.append("]")
    elif isinstance(obj, dict):
        out.append("{")
        for i, key in enumerate(sorted(obj)):
            if not isinstance(key, str):
                raise ValidationError(f"object keys must be strings, got {key!r}")
            if i:
                out.append(",")
            out.append(json.dumps(key, ensure_ascii=False))
            out.append(":")
            _emit(obj[key], out)
        out.append("}")
    else:
        raise ValidationError(f"cannot serialize value of type {type(obj).__name__}")


def dumps_canonical(obj) -> str:
    """Serialize ``obj`` to the canonical JSON-compatible text form."""
    out: list = []
    _emit(obj, out)
    return "".join(out)


def dumps_canonical_bytes(obj) -> bytes:
    return dumps_canonical(obj).encode("utf-8")


def loads_canonical(data) -> object:
    """Parse canonical text (accepts any valid JSON, bytes or str)."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        return json.loads(data)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed document: {exc}") from exc
