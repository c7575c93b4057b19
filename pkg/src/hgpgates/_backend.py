"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``HGPGATES_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

import numpy as np

from hgpgates import _purepy

try:
    if os.environ.get("HGPGATES_PURE_PYTHON"):
        raise ImportError("pure-Python kernels requested")
    from hgpgates import _kernels
except ImportError:
    _kernels = None

BACKEND = "python" if _kernels is None else "cython"

_MASK64 = (1 << 64) - 1


def pack_words(rows: list[int], ncols: int) -> np.ndarray:
    """Pack int rows into a C-contiguous ``(len(rows), nwords)`` uint64 array."""
    nwords = max(1, (ncols + 63) // 64)
    out = np.zeros((len(rows), nwords), dtype=np.uint64)
    for r, row in enumerate(rows):
        w = 0
        while row:
            out[r, w] = row & _MASK64
            row >>= 64
            w += 1
    return out


def rank_bits(rows: list[int], ncols: int, backend: str | None = None) -> int:
    if _use_python(backend):
        return _purepy.rank_ints(list(rows))
    return int(_kernels.rank_words(pack_words(rows, ncols)))


def min_weight_span(rows: list[int], ncols: int, backend: str | None = None) -> int:
    """Minimum weight of a nonzero vector in span(rows); -1 when rows is empty."""
    if _use_python(backend):
        return _purepy.min_weight_ints(list(rows))
    return int(_kernels.min_weight_words(pack_words(rows, ncols)))


def _use_python(backend: str | None) -> bool:
    choice = backend or BACKEND
    if choice == "cython" and _kernels is None:
        raise RuntimeError("compiled kernels are not available in this build")
    if choice not in ("cython", "python"):
        raise ValueError(f"unknown backend {choice!r}")
    return choice == "python"
