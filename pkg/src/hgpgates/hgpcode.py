"""Hypergraph product codes, their two-grid qubit layout and parameters."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

from hgpgates.f2linalg import (
    BinaryMatrix,
    BitVector,
    hstack,
    kron,
    min_weight_in_span,
    rank,
    strong_triangular_reduce,
    vstack,
)
from hgpgates.pauli import PauliOperator

#: Largest kernel dimension enumerated when computing a classical distance.
MAX_ENUMERATION_DIM = 24

INFINITE = math.inf


class DistanceGuardError(ValueError):
    """Raised when exhaustive distance enumeration would be too large."""


class Sector(str, enum.Enum):
    L = "L"
    R = "R"

    def flip(self) -> Sector:
        return Sector.R if self is Sector.L else Sector.L


@dataclass(frozen=True, order=True)
class QubitCoord:
    """Physical qubit position: 1-based ``row``/``col`` in grid ``sector``."""

    sector: Sector
    row: int
    col: int

    def __post_init__(self):
        object.__setattr__(self, "sector", Sector(self.sector))

    def __str__(self) -> str:
        return f"({self.row},{self.col},{self.sector.value})"


@dataclass(frozen=True, eq=False)
class HgpCode:
    """CSS code HGP(ha, hb).

    Left-sector qubit ``(i, h)`` sits at index ``(i-1)*n_b + h`` and
    right-sector qubit ``(j, l)`` at ``n_a*n_b + (j-1)*m_b + l``, so that the
    tensor product ``u ⊗ v`` lands on grid positions ``(i, h)`` with
    ``u[i] = v[h] = 1``.
    """

    ha: BinaryMatrix
    hb: BinaryMatrix
    hx: BinaryMatrix
    hz: BinaryMatrix

    @property
    def m_a(self) -> int:
        return self.ha.rows

    @property
    def n_a(self) -> int:
        return self.ha.cols

    @property
    def m_b(self) -> int:
        return self.hb.rows

    @property
    def n_b(self) -> int:
        return self.hb.cols

    @property
    def n_left(self) -> int:
        return self.n_a * self.n_b

    @property
    def n_qubits(self) -> int:
        return self.n_a * self.n_b + self.m_a * self.m_b

    def grid_shape(self, sector: Sector) -> tuple[int, int]:
        return (self.n_a, self.n_b) if Sector(sector) is Sector.L else (self.m_a, self.m_b)

    def qubit_index(self, c: QubitCoord) -> int:
        rows, cols = self.grid_shape(c.sector)
        if not (1 <= c.row <= rows and 1 <= c.col <= cols):
            raise IndexError(f"{c} outside the {rows}x{cols} {c.sector.value} grid")
        if c.sector is Sector.L:
            return (c.row - 1) * self.n_b + c.col
        return self.n_left + (c.row - 1) * self.m_b + c.col

    def coord(self, index: int) -> QubitCoord:
        if not 1 <= index <= self.n_qubits:
            raise IndexError(f"qubit index {index} outside 1..{self.n_qubits}")
        if index <= self.n_left:
            row, col = divmod(index - 1, self.n_b)
            return QubitCoord(Sector.L, row + 1, col + 1)
        row, col = divmod(index - self.n_left - 1, self.m_b)
        return QubitCoord(Sector.R, row + 1, col + 1)

    def coords(self) -> Iterator[QubitCoord]:
        for index in range(1, self.n_qubits + 1):
            yield self.coord(index)

    def stabilizer_x(self, j: int, h: int) -> PauliOperator:
        """X check on column ``h`` of the left grid and row ``j`` of the right grid."""
        if not (1 <= j <= self.m_a and 1 <= h <= self.n_b):
            raise IndexError(f"S_x({j},{h}) outside 1..{self.m_a} x 1..{self.n_b}")
        row = self.hx.row_bits[(j - 1) * self.n_b + h - 1]
        return PauliOperator(self.n_qubits, x=row)

    def stabilizer_z(self, i: int, ell: int) -> PauliOperator:
        """Z check on row ``i`` of the left grid and column ``ell`` of the right grid."""
        if not (1 <= i <= self.n_a and 1 <= ell <= self.m_b):
            raise IndexError(f"S_z({i},{ell}) outside 1..{self.n_a} x 1..{self.m_b}")
        row = self.hz.row_bits[(i - 1) * self.m_b + ell - 1]
        return PauliOperator(self.n_qubits, z=row)

    def x_stabilizers(self) -> list[PauliOperator]:
        return [PauliOperator(self.n_qubits, x=r) for r in self.hx.row_bits]

    def z_stabilizers(self) -> list[PauliOperator]:
        return [PauliOperator(self.n_qubits, z=r) for r in self.hz.row_bits]

    def support_coords(self, bits: int) -> list[QubitCoord]:
        return [self.coord(i) for i in BitVector(self.n_qubits, bits).support()]

    def line_bits(self, sector: Sector, *, row: int | None = None, col: int | None = None,
                  entries: BitVector) -> int:
        """Qubit mask of ``entries`` laid along one grid row or column.

        With ``row`` fixed, ``entries`` indexes the columns of that row;
        with ``col`` fixed, it indexes the rows of that column.
        """
        bits = 0
        for t in entries.support():
            c = QubitCoord(sector, row, t) if row is not None else QubitCoord(sector, t, col)
            bits |= 1 << (self.qubit_index(c) - 1)
        return bits

    @property
    def is_square(self) -> bool:
        return self.ha == self.hb

    @cached_property
    def is_symmetric(self) -> bool:
        return is_symmetric(self)

    def __repr__(self) -> str:
        return f"HgpCode(ha={self.ha.shape}, hb={self.hb.shape}, n={self.n_qubits})"


def build_hgp(ha: BinaryMatrix, hb: BinaryMatrix) -> HgpCode:
    """HGP(ha, hb) with Hx = (ha⊗I | I⊗hbᵀ) and Hz = (I⊗hb | haᵀ⊗I)."""
    ma, na = ha.shape
    mb, nb = hb.shape
    hx = hstack(kron(ha, BinaryMatrix.identity(nb)), kron(BinaryMatrix.identity(ma), hb.T))
    hz = hstack(kron(BinaryMatrix.identity(na), hb), kron(ha.T, BinaryMatrix.identity(mb)))
    if not (hx @ hz.T).is_zero():
        raise AssertionError("Hx·Hzᵀ ≠ 0: product construction is broken")
    return HgpCode(ha, hb, hx, hz)


def symmetric_square(h: BinaryMatrix) -> HgpCode:
    """HGP_sy(hᵀh), the symmetric code built from a seed parity-check matrix."""
    s = h.T @ h
    return build_hgp(s, s)


def is_symmetric(code: HgpCode) -> bool:
    """Square code whose seed is square with equal row and column spaces."""
    h = code.ha
    if not code.is_square or h.rows != h.cols:
        return False
    r = rank(h)
    return rank(vstack(h, h.T)) == r


def minimum_distance(h: BinaryMatrix) -> float:
    """Minimum weight of a nonzero codeword of ker(h), by exhaustive enumeration.

    Returns ``INFINITE`` for a trivial kernel.
    """
    reduced = strong_triangular_reduce(h)
    if reduced.dimension == 0:
        return INFINITE
    if reduced.dimension > MAX_ENUMERATION_DIM:
        raise DistanceGuardError(
            f"kernel dimension {reduced.dimension} exceeds the enumeration guard "
            f"of {MAX_ENUMERATION_DIM}"
        )
    return min_weight_in_span(list(reduced.vectors().values()))


@dataclass(frozen=True)
class CodeParams:
    n: int
    k: int
    max_stab_weight: int
    d: float | None = None

    @property
    def rate(self) -> float:
        return self.k / self.n

    def to_dict(self) -> dict:
        if self.d is None:
            d = None
        elif math.isinf(self.d):
            d = "inf"
        else:
            d = int(self.d)
        return {
            "n": self.n,
            "k": self.k,
            "d": d,
            "rate": round(self.rate, 2),
            "maxStabWeight": self.max_stab_weight,
        }


def code_params(code: HgpCode, compute_distance: bool = False) -> CodeParams:
    """n, k and (optionally) d from the seed codes, plus the max check weight."""
    ka = code.n_a - rank(code.ha)
    kb = code.n_b - rank(code.hb)
    ka_t = code.m_a - rank(code.ha)
    kb_t = code.m_b - rank(code.hb)
    k = ka * kb + ka_t * kb_t
    w = max(max(code.hx.row_weights(), default=0), max(code.hz.row_weights(), default=0))
    d = None
    if compute_distance:
        d = min(
            minimum_distance(code.ha),
            minimum_distance(code.ha.T),
            minimum_distance(code.hb),
            minimum_distance(code.hb.T),
        )
    return CodeParams(n=code.n_qubits, k=k, max_stab_weight=w, d=d)


def logical_dimension(code: HgpCode) -> int:
    """k computed directly from the check matrices."""
    return code.n_qubits - rank(code.hx) - rank(code.hz)
