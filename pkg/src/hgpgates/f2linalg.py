"""Dense linear algebra over GF(2).

Matrices are immutable and stored as read-only ``uint8`` numpy arrays, with
bit-packed row/column views (Python ints, bit ``c`` = index ``c``) cached for
the elimination routines. Every index that crosses the public surface (pivot
sets, supports, ``entry`` lookups) is 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from hgpgates import _backend


class MatrixFormatError(ValueError):
    """Raised when a matrix text file is malformed."""


def _bits_to_support(bits: int) -> tuple[int, ...]:
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length())
        bits ^= low
    return tuple(out)


@dataclass(frozen=True)
class BitVector:
    """Binary vector of fixed length, packed into an int (bit i-1 = entry i)."""

    length: int
    bits: int = 0

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("negative length")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError("bits outside the vector length")

    @classmethod
    def from_support(cls, length: int, support: Iterable[int]) -> BitVector:
        bits = 0
        for i in support:
            if not 1 <= i <= length:
                raise IndexError(f"index {i} outside 1..{length}")
            bits |= 1 << (i - 1)
        return cls(length, bits)

    @classmethod
    def from_array(cls, values: Sequence[int]) -> BitVector:
        arr = np.asarray(values)
        if arr.ndim != 1 or not np.isin(arr, (0, 1)).all():
            raise ValueError("expected a 1-D 0/1 array")
        return cls.from_support(len(arr), (i + 1 for i in np.flatnonzero(arr)))

    def support(self) -> tuple[int, ...]:
        """Ordered 1-based indices of the nonzero entries."""
        return _bits_to_support(self.bits)

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def entry(self, i: int) -> int:
        if not 1 <= i <= self.length:
            raise IndexError(f"index {i} outside 1..{self.length}")
        return (self.bits >> (i - 1)) & 1

    def to_array(self) -> np.ndarray:
        out = np.zeros(self.length, dtype=np.uint8)
        for i in self.support():
            out[i - 1] = 1
        return out

    def dot(self, other: BitVector) -> int:
        return (self.bits & other.bits).bit_count() & 1

    def __add__(self, other: BitVector) -> BitVector:
        if self.length != other.length:
            raise ValueError("length mismatch")
        return BitVector(self.length, self.bits ^ other.bits)

    def __str__(self) -> str:
        return "".join(str(self.entry(i)) for i in range(1, self.length + 1))


class BinaryMatrix:
    """Immutable dense matrix over GF(2)."""

    def __init__(self, entries):
        arr = np.array(entries, dtype=np.int64)
        if arr.ndim == 1 and arr.size == 0:
            arr = arr.reshape(0, 0)
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-D array, got shape {arr.shape}")
        if not np.isin(arr, (0, 1)).all():
            raise ValueError("entries must be 0 or 1")
        arr = arr.astype(np.uint8)
        arr.setflags(write=False)
        self._a = arr

    @classmethod
    def identity(cls, n: int) -> BinaryMatrix:
        return cls(np.eye(n, dtype=np.uint8))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> BinaryMatrix:
        return cls(np.zeros((rows, cols), dtype=np.uint8))

    @classmethod
    def from_row_bits(cls, rows: Sequence[int], ncols: int) -> BinaryMatrix:
        arr = np.zeros((len(rows), ncols), dtype=np.uint8)
        for r, bits in enumerate(rows):
            for c in _bits_to_support(bits):
                if c > ncols:
                    raise ValueError("row bits exceed the column count")
                arr[r, c - 1] = 1
        return cls(arr)

    @classmethod
    def from_columns(cls, columns: Sequence[BitVector], nrows: int) -> BinaryMatrix:
        arr = np.zeros((nrows, len(columns)), dtype=np.uint8)
        for j, col in enumerate(columns):
            if col.length != nrows:
                raise ValueError("column length mismatch")
            arr[:, j] = col.to_array()
        return cls(arr)

    @property
    def array(self) -> np.ndarray:
        """Read-only 0-based numpy view."""
        return self._a

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def T(self) -> BinaryMatrix:
        return BinaryMatrix(self._a.T)

    def entry(self, r: int, c: int) -> int:
        if not (1 <= r <= self.rows and 1 <= c <= self.cols):
            raise IndexError(f"({r}, {c}) outside {self.rows}x{self.cols}")
        return int(self._a[r - 1, c - 1])

    def row(self, r: int) -> BitVector:
        return BitVector(self.cols, self.row_bits[r - 1])

    def column(self, c: int) -> BitVector:
        return BitVector(self.rows, self.col_bits[c - 1])

    @cached_property
    def row_bits(self) -> tuple[int, ...]:
        packed = np.packbits(self._a, axis=1, bitorder="little")
        return tuple(int.from_bytes(row.tobytes(), "little") for row in packed)

    @cached_property
    def col_bits(self) -> tuple[int, ...]:
        return self.T.row_bits

    def row_weights(self) -> tuple[int, ...]:
        return tuple(int(w) for w in self._a.sum(axis=1))

    def __matmul__(self, other: BinaryMatrix) -> BinaryMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        prod = self._a.astype(np.int64) @ other._a.astype(np.int64)
        return BinaryMatrix(prod & 1)

    def __add__(self, other: BinaryMatrix) -> BinaryMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return BinaryMatrix(self._a ^ other._a)

    def is_zero(self) -> bool:
        return not self._a.any()

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinaryMatrix):
            return NotImplemented
        return self.shape == other.shape and bool((self._a == other._a).all())

    def __hash__(self) -> int:
        return hash((self.shape, self._a.tobytes()))

    def __repr__(self) -> str:
        return f"BinaryMatrix({self._a.tolist()})"


def hstack(*mats: BinaryMatrix) -> BinaryMatrix:
    return BinaryMatrix(np.hstack([m.array for m in mats]))


def vstack(*mats: BinaryMatrix) -> BinaryMatrix:
    return BinaryMatrix(np.vstack([m.array for m in mats]))


def rank(m: BinaryMatrix) -> int:
    """Rank over GF(2)."""
    return rank_of_bits(m.row_bits, m.cols)


def rank_of_bits(rows: Sequence[int], ncols: int) -> int:
    return _backend.rank_bits(list(rows), ncols)


def kron(a: BinaryMatrix, b: BinaryMatrix) -> BinaryMatrix:
    """Kronecker product; block (i, j) is ``a[i, j] * b``."""
    return BinaryMatrix(np.kron(a.array, b.array) & 1)


def min_weight_in_span(vectors: Sequence[BitVector]) -> int | None:
    """Smallest weight of a nonzero combination of independent ``vectors``.

    Returns None when ``vectors`` is empty.
    """
    if not vectors:
        return None
    n = vectors[0].length
    best = _backend.min_weight_span([v.bits for v in vectors], n)
    return best


@dataclass(frozen=True)
class TriangularKernel:
    """Output of the strongly lower triangular reduction of a matrix ``h``.

    ``kernel`` holds the kernel basis as columns, ordered by pivot; ``pivots``
    are the 1-based pivot rows of those columns; ``complement`` holds the unit
    vectors on the same pivots; ``independent_columns`` are the 1-based
    indices of the columns of ``h`` left out of the pivot set, which form a
    basis of its column span.
    """

    kernel: BinaryMatrix
    pivots: tuple[int, ...]
    complement: BinaryMatrix
    independent_columns: tuple[int, ...]

    @property
    def dimension(self) -> int:
        return len(self.pivots)

    def vector(self, pivot: int) -> BitVector:
        """Kernel basis vector whose pivot is ``pivot``."""
        try:
            pos = self.pivots.index(pivot)
        except ValueError:
            raise KeyError(f"{pivot} is not a pivot; pivots are {self.pivots}") from None
        return self.kernel.column(pos + 1)

    def vectors(self) -> dict[int, BitVector]:
        return {p: self.kernel.column(pos + 1) for pos, p in enumerate(self.pivots)}


def strong_triangular_reduce(h: BinaryMatrix) -> TriangularKernel:
    """Strongly lower triangular kernel basis by column reduction of ``h``.

    Columns are swept left to right. A nonzero working column picks its first
    nonzero row as pivot row (the search restarts at the top for every column)
    and is added to every later column that is nonzero on that row, with the
    same additions replayed on the kernel tracker ``K`` (initially identity).
    Columns reduced to zero survive as kernel vectors.
    """
    n = h.cols
    work = list(h.col_bits)
    tracker = [1 << j for j in range(n)]
    kept: list[int] = []
    independent: list[int] = []
    for j in range(n):
        col = work[j]
        if col == 0:
            kept.append(j)
            continue
        independent.append(j + 1)
        pivot_row = (col & -col).bit_length() - 1
        for ell in range(j + 1, n):
            if (work[ell] >> pivot_row) & 1:
                work[ell] ^= col
                tracker[ell] ^= tracker[j]

    kernel_cols = [BitVector(n, tracker[j]) for j in kept]
    unit_cols = [BitVector(n, 1 << j) for j in kept]
    return TriangularKernel(
        kernel=BinaryMatrix.from_columns(kernel_cols, n),
        pivots=tuple(j + 1 for j in kept),
        complement=BinaryMatrix.from_columns(unit_cols, n),
        independent_columns=tuple(independent),
    )


def column_pivots(m: BinaryMatrix) -> tuple[int, ...] | None:
    """Lowest nonzero row (1-based) of each column, or None if a column is zero."""
    out = []
    for bits in m.col_bits:
        if bits == 0:
            return None
        out.append(bits.bit_length())
    return tuple(out)


def is_strongly_lower_triangular(m: BinaryMatrix) -> bool:
    """Check the strongly lower triangular shape without reordering columns.

    Every column needs a pivot (its lowest 1), pivots must sit on distinct
    rows, and each pivot row must vanish on every column whose pivot lies
    strictly lower.
    """
    pivots = column_pivots(m)
    if pivots is None:
        return False
    if len(set(pivots)) != len(pivots):
        return False
    rows = m.row_bits
    for p in pivots:
        row = rows[p - 1]
        for j2, p2 in enumerate(pivots):
            if p2 > p and (row >> j2) & 1:
                return False
    return True


class SpanSolver:
    """Incremental echelon basis that expresses vectors in terms of generators.

    ``reduce(v)`` returns ``(residual, combo)`` where bit ``g`` of ``combo``
    marks generator ``g`` (0-based, insertion order) and
    ``v = residual + sum of marked generators``. A zero residual means ``v``
    lies in the span.
    """

    def __init__(self, generators: Iterable[int] = ()):
        self._rows: list[tuple[int, int, int]] = []  # (low bit, vector, combo)
        self._count = 0
        for g in generators:
            self.add(g)

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def count(self) -> int:
        return self._count

    def add(self, vector: int) -> bool:
        """Append a generator; returns True when it increases the rank."""
        combo = 1 << self._count
        self._count += 1
        vector, used = self._reduce(vector)
        if vector == 0:
            return False
        self._rows.append((vector & -vector, vector, combo ^ used))
        return True

    def _reduce(self, vector: int) -> tuple[int, int]:
        combo = 0
        for low, vec, vcombo in self._rows:
            if vector & low:
                vector ^= vec
                combo ^= vcombo
        return vector, combo

    def reduce(self, vector: int) -> tuple[int, int]:
        return self._reduce(vector)

    def contains(self, vector: int) -> bool:
        return self._reduce(vector)[0] == 0


def in_row_space(m: BinaryMatrix, v: BitVector) -> bool:
    if v.length != m.cols:
        raise ValueError("length mismatch")
    return SpanSolver(m.row_bits).contains(v.bits)


def nullspace(m: BinaryMatrix) -> list[BitVector]:
    """Kernel basis from reduced row echelon form (no triangular structure)."""
    n = m.cols
    rows = [r for r in m.row_bits]
    pivot_cols: list[int] = []
    r = 0
    for c in range(n):
        bit = 1 << c
        p = next((i for i in range(r, len(rows)) if rows[i] & bit), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i] & bit:
                rows[i] ^= rows[r]
        pivot_cols.append(c)
        r += 1
    basis = []
    for f in range(n):
        if f in pivot_cols:
            continue
        bits = 1 << f
        for i, c in enumerate(pivot_cols):
            if (rows[i] >> f) & 1:
                bits |= 1 << c
        basis.append(BitVector(n, bits))
    return basis


def parse_matrix(text: str) -> BinaryMatrix:
    """Parse the ``rows cols`` header followed by rows of space-separated bits.

    Blank lines and ``#`` comments are ignored.
    """
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise MatrixFormatError("empty matrix file")
    header = lines[0].split()
    if len(header) != 2 or not all(t.isdigit() for t in header):
        raise MatrixFormatError(f"bad header {lines[0]!r}; expected 'rows cols'")
    nrows, ncols = int(header[0]), int(header[1])
    body = lines[1:]
    if len(body) != nrows:
        raise MatrixFormatError(f"header says {nrows} rows, found {len(body)}")
    data = []
    for lineno, line in enumerate(body, start=2):
        toks = line.split()
        if len(toks) != ncols:
            raise MatrixFormatError(f"row {lineno - 1} has {len(toks)} entries, expected {ncols}")
        bad = [t for t in toks if t not in ("0", "1")]
        if bad:
            raise MatrixFormatError(f"row {lineno - 1} has non-binary symbol {bad[0]!r}")
        data.append([int(t) for t in toks])
    return BinaryMatrix(np.array(data, dtype=np.uint8).reshape(nrows, ncols))


def format_matrix(m: BinaryMatrix) -> str:
    lines = [f"{m.rows} {m.cols}"]
    lines += [" ".join(str(int(x)) for x in row) for row in m.array]
    return "\n".join(lines) + "\n"


def read_matrix(path: str | Path) -> BinaryMatrix:
    return parse_matrix(Path(path).read_text(encoding="utf-8"))
