"""Qubit partitions for transversal gates and their partition distance."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable

from hgpgates.f2linalg import rank_of_bits
from hgpgates.hgpcode import HgpCode, QubitCoord, Sector


class PartitionKind(str, enum.Enum):
    DIAGONAL_TWIN = "diagonalTwin"
    SIBLING = "sibling"
    SINGLETON = "singleton"
    CUSTOM = "custom"


@dataclass(frozen=True)
class QubitPartition:
    kind: PartitionKind
    subsets: tuple[frozenset[QubitCoord], ...]

    @property
    def locality(self) -> int:
        return max((len(s) for s in self.subsets), default=0)

    def validate(self, code: HgpCode) -> None:
        """Raise ValueError unless subsets are non-empty, disjoint and cover the code."""
        seen: set[QubitCoord] = set()
        for s in self.subsets:
            if not s:
                raise ValueError("empty subset")
            if seen & s:
                raise ValueError(f"subsets overlap on {sorted(seen & s)}")
            seen |= s
        everything = set(code.coords())
        if seen != everything:
            missing = sorted(everything - seen)[:3]
            extra = sorted(seen - everything)[:3]
            raise ValueError(f"partition does not cover the code: missing {missing}, extra {extra}")

    def index_sets(self, code: HgpCode) -> list[list[int]]:
        return [sorted(code.qubit_index(c) for c in s) for s in self.subsets]


def _make(code: HgpCode, kind: PartitionKind, subsets: Iterable[Iterable[QubitCoord]]) -> QubitPartition:
    frozen = [frozenset(s) for s in subsets]
    frozen.sort(key=lambda s: min(code.qubit_index(c) for c in s))
    p = QubitPartition(kind, tuple(frozen))
    p.validate(code)
    return p


def singleton_partition(code: HgpCode) -> QubitPartition:
    return _make(code, PartitionKind.SINGLETON, ([c] for c in code.coords()))


def custom_partition(code: HgpCode, subsets: Iterable[Iterable[QubitCoord]]) -> QubitPartition:
    return _make(code, PartitionKind.CUSTOM, subsets)


def diagonal_twin_partition(code: HgpCode) -> QubitPartition:
    """Diagonal singletons plus twin pairs {(i,h), (h,i)} in each sector."""
    if not code.is_square:
        raise ValueError("the diagonal-twin partition needs a square code")
    subsets = []
    for sector in Sector:
        size = code.grid_shape(sector)[0]
        for i in range(1, size + 1):
            subsets.append([QubitCoord(sector, i, i)])
            for h in range(i + 1, size + 1):
                subsets.append([QubitCoord(sector, i, h), QubitCoord(sector, h, i)])
    return _make(code, PartitionKind.DIAGONAL_TWIN, subsets)


def sibling_partition(code: HgpCode) -> QubitPartition:
    """Pairs {(i,h,L), (i,h,R)} on a symmetric code."""
    if not code.is_symmetric:
        raise ValueError("the sibling partition needs a symmetric code")
    n = code.n_a
    subsets = [
        [QubitCoord(Sector.L, i, h), QubitCoord(Sector.R, i, h)]
        for i in range(1, n + 1)
        for h in range(1, n + 1)
    ]
    return _make(code, PartitionKind.SIBLING, subsets)


def is_sector_transversal(p: QubitPartition) -> bool:
    """At most one qubit per sector in every subset."""
    for s in p.subsets:
        sectors = [c.sector for c in s]
        if len(sectors) != len(set(sectors)):
            return False
    return True


@dataclass(frozen=True)
class PartitionDistance:
    """Exact partition distance, or a lower bound when the search stopped early."""

    value: int
    exact: bool
    witness: tuple[int, ...] = ()  # subset positions of a minimal supporting union

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "exact": self.exact,
            "display": str(self.value) if self.exact else f">={self.value}",
            "witness": list(self.witness),
        }


class _LogicalSupportTest:
    """Does a qubit set carry a nontrivial X- or Z-type logical operator?

    For X type: the X vectors supported in U and commuting with all Z checks
    span |U| - rank(Hz|U) dimensions; the X stabilizers inside U span
    rank(Hx) - rank(Hx|Ū). U supports a logical iff the first exceeds the second.
    """

    def __init__(self, code: HgpCode):
        self.n = code.n_qubits
        self.full = (1 << self.n) - 1
        self.hx = code.hx.row_bits
        self.hz = code.hz.row_bits
        self.rank_hx = rank_of_bits(self.hx, self.n)
        self.rank_hz = rank_of_bits(self.hz, self.n)

    def _kind(self, u: int, checks, stabs, rank_stabs) -> bool:
        size = u.bit_count()
        inside = size - rank_of_bits([r & u for r in checks], self.n)
        stab_inside = rank_stabs - rank_of_bits([r & (self.full ^ u) for r in stabs], self.n)
        return inside > stab_inside

    def __call__(self, u: int) -> bool:
        return (self._kind(u, self.hz, self.hx, self.rank_hx)
                or self._kind(u, self.hx, self.hz, self.rank_hz))


def partition_distance_search(code: HgpCode, p: QubitPartition, max_subsets: int) -> PartitionDistance:
    """Smallest number of subsets whose union supports a nontrivial logical.

    Tries every combination of 1, 2, ..., ``max_subsets`` subsets in a fixed
    order. Without a hit, returns the lower bound ``max_subsets + 1``.
    """
    p.validate(code)
    test = _LogicalSupportTest(code)
    masks = [sum(1 << (code.qubit_index(c) - 1) for c in s) for s in p.subsets]
    for size in range(1, min(max_subsets, len(masks)) + 1):
        for combo in itertools.combinations(range(len(masks)), size):
            u = 0
            for pos in combo:
                u |= masks[pos]
            if test(u):
                return PartitionDistance(size, True, combo)
    if max_subsets >= len(masks):
        raise ValueError("no union of subsets supports a logical operator; the code encodes nothing")
    return PartitionDistance(max_subsets + 1, False)


def supports_logical(code: HgpCode, qubits: Iterable[int]) -> bool:
    """True when the 1-based qubit indices support a nontrivial logical operator."""
    u = 0
    for q in qubits:
        u |= 1 << (q - 1)
    return _LogicalSupportTest(code)(u)
