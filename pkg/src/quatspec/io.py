"""JSON files: matrices, models and reports.

Floats are written with 17 significant digits, which makes
``load(dump(x))`` bit-exact for every finite double.
"""

from __future__ import annotations

import hashlib
import json
import math

import numpy as np

from .spectral import as_qmatrix


class ParseError(ValueError):
    pass


def _fmt(x) -> str:
    if isinstance(x, bool) or x is None:
        return json.dumps(x)
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if not math.isfinite(x):
            # JSON has no infinities; keep them readable and loadable by Python
            return json.dumps(x)
        return format(x, ".17g")
    if isinstance(x, str):
        return json.dumps(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def dumps(obj, indent: int = 0) -> str:
    """Deterministic JSON; lists of scalars stay on one line."""
    pad = "  " * indent
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{pad}  {json.dumps(str(k))}: {dumps(v, indent + 1)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if all(not isinstance(v, (list, tuple, dict, np.ndarray)) for v in obj):
            return "[" + ", ".join(_fmt(v) for v in obj) + "]"
        if all(isinstance(v, (list, tuple, np.ndarray))
               and all(not isinstance(w, (list, tuple, dict, np.ndarray)) for w in v)
               for v in obj):
            # rows of scalars: one per line
            items = [pad + "  " + dumps(v) for v in obj]
        else:
            items = [pad + "  " + dumps(v, indent + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return _fmt(obj)


def matrix_to_json(A) -> dict:
    A = as_qmatrix(A)
    return {"n": int(A.shape[0]), "entries": A.tolist()}


def dump_matrix(A) -> str:
    return dumps(matrix_to_json(A)) + "\n"


def load_matrix(text: str) -> np.ndarray:
    try:
        obj = json.loads(text)
        n = int(obj["n"])
        A = np.array(obj["entries"], dtype=float)
    except (ValueError, KeyError, TypeError) as exc:
        raise ParseError(f"not a matrix file: {exc}") from exc
    if A.shape != (n, n, 4):
        raise ParseError(f"entries have shape {A.shape}, expected ({n}, {n}, 4)")
    try:
        return as_qmatrix(A)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def matrix_hash(A) -> str:
    """SHA-256 of the canonical serialization."""
    return hashlib.sha256(dump_matrix(A).encode()).hexdigest()
