"""Canonical symplectic line basis of a hypergraph product code.

Strongly lower triangular kernel bases of ha, haᵀ, hb, hbᵀ (pivot-indexed
vectors a_i, α_j, b_h, β_l) give, for pivots i, h, j, l:

    left  q(i,h):  X = f_i ⊗ b_h  (row i),    Z = a_i ⊗ f_h  (column h)
    right q(j,l):  X = α_j ⊗ f_l  (column l), Z = f_j ⊗ β_l  (row j)

Each X/Z pair crosses on exactly one qubit, the pivot (i, h) or (j, l).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from hgpgates.f2linalg import SpanSolver, TriangularKernel, strong_triangular_reduce
from hgpgates.hgpcode import HgpCode, QubitCoord, Sector
from hgpgates.pauli import PauliOperator


class QubitClass(str, enum.Enum):
    DIAGONAL = "diagonal"
    MIRROR = "mirror"


@dataclass(frozen=True, order=True)
class LogicalQubitId:
    """Logical qubit named by the sector and grid position of its pivot."""

    sector: Sector
    row: int
    col: int

    def __post_init__(self):
        object.__setattr__(self, "sector", Sector(self.sector))

    @classmethod
    def parse(cls, text: str) -> LogicalQubitId:
        """Parse ``"L:3,3"`` style selectors."""
        try:
            sector, _, rest = text.partition(":")
            row, col = (int(t) for t in rest.split(","))
            return cls(Sector(sector.strip().upper()), row, col)
        except ValueError:
            raise ValueError(f"bad logical qubit selector {text!r}; expected e.g. 'L:3,5'") from None

    @property
    def qubit_class(self) -> QubitClass:
        return QubitClass.DIAGONAL if self.row == self.col else QubitClass.MIRROR

    @property
    def is_diagonal(self) -> bool:
        return self.row == self.col

    def __str__(self) -> str:
        return f"q{self.sector.value}({self.row},{self.col})"

    def selector(self) -> str:
        return f"{self.sector.value}:{self.row},{self.col}"


def pivot_qubit(q: LogicalQubitId) -> QubitCoord:
    return QubitCoord(q.sector, q.row, q.col)


def twin_of(q: LogicalQubitId) -> LogicalQubitId:
    """Coordinate-swapped partner within the sector (mirror qubits only)."""
    if q.is_diagonal:
        raise ValueError(f"{q} is diagonal and has no twin")
    return LogicalQubitId(q.sector, q.col, q.row)


def sibling_of(q: LogicalQubitId, basis: CanonicalBasis | None = None) -> LogicalQubitId:
    """Same-coordinate partner in the other sector.

    With ``basis`` given, the partner must be one of its logical qubits.
    """
    partner = LogicalQubitId(q.sector.flip(), q.row, q.col)
    if basis is not None:
        if not basis.code.is_symmetric:
            raise ValueError("siblings are defined on symmetric codes only")
        if partner not in basis.x_ops:
            raise ValueError(f"sibling {partner} of {q} is not a logical qubit of this code")
    return partner


@dataclass(frozen=True, eq=False)
class CanonicalBasis:
    code: HgpCode
    ids: tuple[LogicalQubitId, ...]
    x_ops: dict[LogicalQubitId, PauliOperator]
    z_ops: dict[LogicalQubitId, PauliOperator]
    ker_a: TriangularKernel
    ker_a_t: TriangularKernel
    ker_b: TriangularKernel
    ker_b_t: TriangularKernel
    _index: dict[LogicalQubitId, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._index.update({q: pos for pos, q in enumerate(self.ids)})

    @property
    def k(self) -> int:
        return len(self.ids)

    @property
    def seed_pivots(self) -> dict[str, tuple[int, ...]]:
        return {
            "ker_a": self.ker_a.pivots,
            "ker_a_t": self.ker_a_t.pivots,
            "ker_b": self.ker_b.pivots,
            "ker_b_t": self.ker_b_t.pivots,
        }

    def position(self, q: LogicalQubitId) -> int:
        """0-based position of ``q`` in the basis ordering."""
        try:
            return self._index[q]
        except KeyError:
            raise KeyError(f"{q} is not a logical qubit of this code") from None

    def __contains__(self, q: LogicalQubitId) -> bool:
        return q in self._index

    def sector_ids(self, sector: Sector) -> list[LogicalQubitId]:
        return [q for q in self.ids if q.sector is Sector(sector)]

    def z_column(self, q: LogicalQubitId) -> tuple[int, ...]:
        """Grid positions along the logical Z line: rows of column h (left) or columns of row j (right)."""
        if q.sector is Sector.L:
            return self.ker_a.vector(q.row).support()
        return self.ker_b_t.vector(q.col).support()

    def x_line(self, q: LogicalQubitId) -> tuple[int, ...]:
        """Grid positions along the logical X line: columns of row i (left) or rows of column l (right)."""
        if q.sector is Sector.L:
            return self.ker_b.vector(q.col).support()
        return self.ker_a_t.vector(q.row).support()

    def max_weight(self) -> int:
        ops = list(self.x_ops.values()) + list(self.z_ops.values())
        return max((op.weight for op in ops), default=0)


def canonical_basis(code: HgpCode) -> CanonicalBasis:
    ker_a = strong_triangular_reduce(code.ha)
    ker_a_t = strong_triangular_reduce(code.ha.T)
    ker_b = strong_triangular_reduce(code.hb)
    ker_b_t = strong_triangular_reduce(code.hb.T)
    a, alpha, b, beta = ker_a.vectors(), ker_a_t.vectors(), ker_b.vectors(), ker_b_t.vectors()
    n = code.n_qubits

    x_ops: dict[LogicalQubitId, PauliOperator] = {}
    z_ops: dict[LogicalQubitId, PauliOperator] = {}
    for i in ker_a.pivots:
        for h in ker_b.pivots:
            q = LogicalQubitId(Sector.L, i, h)
            x_ops[q] = PauliOperator(n, x=code.line_bits(Sector.L, row=i, entries=b[h]))
            z_ops[q] = PauliOperator(n, z=code.line_bits(Sector.L, col=h, entries=a[i]))
    for j in ker_a_t.pivots:
        for ell in ker_b_t.pivots:
            q = LogicalQubitId(Sector.R, j, ell)
            x_ops[q] = PauliOperator(n, x=code.line_bits(Sector.R, col=ell, entries=alpha[j]))
            z_ops[q] = PauliOperator(n, z=code.line_bits(Sector.R, row=j, entries=beta[ell]))

    ids = tuple(sorted(x_ops))
    return CanonicalBasis(
        code=code,
        ids=ids,
        x_ops={q: x_ops[q] for q in ids},
        z_ops={q: z_ops[q] for q in ids},
        ker_a=ker_a,
        ker_a_t=ker_a_t,
        ker_b=ker_b,
        ker_b_t=ker_b_t,
    )


@dataclass
class SymplecticReport:
    passed: bool = True
    checks: dict[str, bool] = field(default_factory=dict)
    first_violation: str | None = None

    def fail(self, check: str, message: str) -> None:
        self.checks[check] = False
        self.passed = False
        if self.first_violation is None:
            self.first_violation = f"{check}: {message}"

    def to_dict(self) -> dict:
        return {"passed": self.passed, "checks": self.checks, "firstViolation": self.first_violation}


def _on_line(code: HgpCode, bits: int) -> bool:
    coords = code.support_coords(bits)
    if not coords:
        return False
    sectors = {c.sector for c in coords}
    rows = {c.row for c in coords}
    cols = {c.col for c in coords}
    return len(sectors) == 1 and (len(rows) == 1 or len(cols) == 1)


def verify_symplectic(code: HgpCode, basis: CanonicalBasis) -> SymplecticReport:
    """Check logical validity, the crossing pattern and line supports of ``basis``."""
    report = SymplecticReport()
    for name in ("x_type", "commutes", "nontrivial", "overlap", "pivot", "line", "count"):
        report.checks[name] = True

    from hgpgates.hgpcode import code_params

    if basis.k != code_params(code).k:
        report.fail("count", f"basis has {basis.k} qubits, code encodes {code_params(code).k}")

    hx_rows, hz_rows = code.hx.row_bits, code.hz.row_bits
    x_stab = SpanSolver(hx_rows)
    z_stab = SpanSolver(hz_rows)
    for q in basis.ids:
        xo, zo = basis.x_ops[q], basis.z_ops[q]
        if not (xo.is_x_type() and zo.is_z_type()) or xo.phase or zo.phase:
            report.fail("x_type", f"{q} operators are not pure X / pure Z with phase 0")
        if any((xo.x & r).bit_count() & 1 for r in hz_rows):
            report.fail("commutes", f"X of {q} anticommutes with a Z check")
        if any((zo.z & r).bit_count() & 1 for r in hx_rows):
            report.fail("commutes", f"Z of {q} anticommutes with an X check")
        if x_stab.contains(xo.x):
            report.fail("nontrivial", f"X of {q} is a stabilizer")
        if z_stab.contains(zo.z):
            report.fail("nontrivial", f"Z of {q} is a stabilizer")
        if not _on_line(code, xo.x):
            report.fail("line", f"X of {q} is not supported on one grid line")
        if not _on_line(code, zo.z):
            report.fail("line", f"Z of {q} is not supported on one grid line")

    for q in basis.ids:
        xo = basis.x_ops[q]
        for q2 in basis.ids:
            overlap = xo.x & basis.z_ops[q2].z
            expected = 1 if q == q2 else 0
            if overlap.bit_count() != expected:
                report.fail(
                    "overlap",
                    f"X of {q} meets Z of {q2} on {overlap.bit_count()} qubits, expected {expected}",
                )
            elif q == q2 and code.coord(overlap.bit_length()) != pivot_qubit(q):
                report.fail("pivot", f"X/Z of {q} cross at {code.coord(overlap.bit_length())}")
    return report
