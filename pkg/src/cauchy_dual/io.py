"""JSON formats.

Matrix::

    {"rows": m, "cols": n, "data": [[re, im], ...]}     # row-major, m*n pairs

Block instance::

    {"layout": "upper_1x2", "blocks": {"T1": <matrix>, "T2": <matrix>}}

Kernel spec::

    {"kernel": "min" | "rank1" | "expr:<id>", "a": 0, "b": 1, "m": 200,
     "rule": "trapezoid" | "gauss_legendre", "params": {...}}
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .blocks import LAYOUTS, BlockOperator, make_block_operator
from .errors import CauchyDualError, MatrixFormatError
from .models import KernelSpec


def matrix_to_json(A) -> dict:
    A = np.asarray(A, dtype=np.complex128)
    return {
        "rows": int(A.shape[0]),
        "cols": int(A.shape[1]),
        "data": [[float(z.real), float(z.imag)] for z in A.ravel()],
    }


def _positive_int(obj, key, where):
    v = obj.get(key)
    if isinstance(v, bool) or not isinstance(v, int) or v < 1:
        raise MatrixFormatError(f"'{key}' must be a positive integer, got {v!r}", f"{where}.{key}")
    return v


def matrix_from_json(obj, where: str = "$") -> np.ndarray:
    if not isinstance(obj, dict):
        raise MatrixFormatError("matrix must be a JSON object", where)
    for key in ("rows", "cols", "data"):
        if key not in obj:
            raise MatrixFormatError(f"missing field '{key}'", where)
    m = _positive_int(obj, "rows", where)
    n = _positive_int(obj, "cols", where)
    data = obj["data"]
    if not isinstance(data, list):
        raise MatrixFormatError("'data' must be a list of [re, im] pairs", f"{where}.data")
    if len(data) != m * n:
        raise MatrixFormatError(f"expected {m * n} entries for a {m}x{n} matrix, got {len(data)}", f"{where}.data")
    out = np.empty(m * n, dtype=np.complex128)
    for i, pair in enumerate(data):
        ok = (
            isinstance(pair, list)
            and len(pair) == 2
            and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in pair)
        )
        if not ok or not all(math.isfinite(v) for v in pair):
            raise MatrixFormatError(f"entry must be a finite [re, im] pair, got {pair!r}", f"{where}.data[{i}]")
        out[i] = complex(pair[0], pair[1])
    return out.reshape(m, n)


def block_to_json(op: BlockOperator) -> dict:
    return {"layout": op.layout, "blocks": {k: matrix_to_json(v) for k, v in op.blocks.items()}}


def block_from_json(obj, where: str = "$") -> BlockOperator:
    if not isinstance(obj, dict):
        raise MatrixFormatError("block instance must be a JSON object", where)
    layout = obj.get("layout")
    if layout not in LAYOUTS:
        raise MatrixFormatError(f"'layout' must be one of {LAYOUTS}, got {layout!r}", f"{where}.layout")
    blocks = obj.get("blocks")
    if not isinstance(blocks, dict):
        raise MatrixFormatError("'blocks' must be an object of named matrices", f"{where}.blocks")
    parsed = {k: matrix_from_json(v, f"{where}.blocks.{k}") for k, v in blocks.items()}
    try:
        return make_block_operator(layout, parsed)
    except CauchyDualError as exc:
        raise MatrixFormatError(str(exc), f"{where}.blocks") from exc


def kernel_spec_from_json(obj, where: str = "$") -> KernelSpec:
    if not isinstance(obj, dict):
        raise MatrixFormatError("kernel spec must be a JSON object", where)
    if "kernel" not in obj:
        raise MatrixFormatError("missing field 'kernel'", where)
    unknown = set(obj) - {"kernel", "a", "b", "m", "rule", "params"}
    if unknown:
        raise MatrixFormatError(f"unknown fields {sorted(unknown)}", where)
    try:
        return KernelSpec(
            kernel=str(obj["kernel"]),
            a=float(obj.get("a", 0.0)),
            b=float(obj.get("b", 1.0)),
            m=int(obj.get("m", 200)),
            rule=str(obj.get("rule", "trapezoid")),
            params=dict(obj.get("params", {})),
        )
    except (TypeError, ValueError) as exc:
        raise MatrixFormatError(str(exc), where) from exc


def load_json(path) -> object:
    """Read JSON, converting decode errors to :class:`MatrixFormatError` with line/column."""
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(exc.msg, f"{path}: line {exc.lineno} column {exc.colno}") from exc


def load_matrix(path) -> np.ndarray:
    return matrix_from_json(load_json(path), str(path))


def save_matrix(path, A):
    Path(path).write_text(json.dumps(matrix_to_json(A)))
