"""JSON matrix documents used to persist counterexamples and worst instances.

A matrix is stored as ``{"n": rows, "m": cols, "re": [...], "im": [...]}``
with entries in row-major order (``m`` is omitted for square matrices).
Floats are written with Python's shortest round-trip repr, so a save/load
cycle reproduces every entry bit for bit.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np


def matrix_to_doc(m) -> dict:
    a = np.atleast_2d(np.asarray(m, dtype=np.complex128))
    doc = {"n": int(a.shape[0])}
    if a.shape[1] != a.shape[0]:
        doc["m"] = int(a.shape[1])
    doc["re"] = [float(x) for x in a.real.ravel()]
    doc["im"] = [float(x) for x in a.imag.ravel()]
    return doc


def doc_to_matrix(doc: dict) -> np.ndarray:
    n = int(doc["n"])
    m = int(doc.get("m", n))
    re = np.asarray(doc["re"], dtype=float)
    im = np.asarray(doc.get("im", [0.0] * re.size), dtype=float)
    if re.size != n * m or im.size != n * m:
        raise ValueError(f"matrix document has {re.size} entries, expected {n * m}")
    return (re + 1j * im).reshape(n, m)


def encode(obj):
    """Recursively turn arrays into matrix documents / lists for JSON."""
    if isinstance(obj, np.ndarray):
        if obj.ndim == 2:
            return {"matrix": matrix_to_doc(obj)}
        return [encode(x) for x in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(x) for x in obj]
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    return obj


def decode(obj):
    """Inverse of :func:`encode` for matrix documents."""
    if isinstance(obj, dict):
        if set(obj) == {"matrix"}:
            return doc_to_matrix(obj["matrix"])
        return {k: decode(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [decode(x) for x in obj]
    return obj


def dumps(obj) -> str:
    return json.dumps(encode(obj), indent=2, sort_keys=True, allow_nan=True)


def save(path, obj) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(obj) + "\n")
    return path


def load(path):
    return decode(json.loads(Path(path).read_text()))
