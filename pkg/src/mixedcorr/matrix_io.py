"""Plain-text matrix files.

Line 1 holds the dimension; each following line is one row with the real and
imaginary parts of every entry interleaved (``re im re im ...``).
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

from .linalg import as_matrix


def format_float(x: float) -> str:
    return f"{float(x):.17g}"


def dumps_matrix(M) -> str:
    M = as_matrix(M)
    lines = [str(M.shape[0])]
    for row in M:
        parts = []
        for z in row:
            parts += [format_float(z.real), format_float(z.imag)]
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def loads_matrix(text: str) -> np.ndarray:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix file")
    try:
        dim = int(lines[0])
    except ValueError:
        raise ValueError(f"first line must be an integer dimension, got {lines[0]!r}") from None
    if len(lines) != dim + 1:
        raise ValueError(f"expected {dim} rows, found {len(lines) - 1}")
    M = np.empty((dim, dim), dtype=complex)
    for r, line in enumerate(lines[1:]):
        vals = [float(t) for t in line.split()]
        if len(vals) != 2 * dim:
            raise ValueError(f"row {r} has {len(vals)} numbers, expected {2 * dim}")
        M[r] = np.asarray(vals[0::2]) + 1j * np.asarray(vals[1::2])
    return as_matrix(M)


def write_matrix(path, M) -> None:
    Path(path).write_text(dumps_matrix(M))


def read_matrix(path) -> np.ndarray:
    return loads_matrix(Path(path).read_text())
