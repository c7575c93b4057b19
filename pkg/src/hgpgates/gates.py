"""Transversal logical gates on square and symmetric codes, and their verification.

Verification conjugates every stabilizer generator and every canonical basis
operator through a physical circuit. Stabilizer images must land back in the
stabilizer group with the exact sign +1. Logical images are decomposed over
the basis (modulo stabilizers), which yields a 2k x 2k symplectic matrix plus
a phase per basis operator: a logical image ``i**φ X^a Z^b`` records φ, so
S shows up as phase 1 and S† as phase 3.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from hgpgates.canonical import CanonicalBasis, LogicalQubitId, twin_of
from hgpgates.f2linalg import BinaryMatrix, SpanSolver
from hgpgates.hgpcode import HgpCode, QubitCoord, Sector
from hgpgates.partition import PartitionKind, QubitPartition
from hgpgates.pauli import Circuit, GateOp, PauliOperator, conjugate, gate


class GateVerificationError(Exception):
    """Base class for failed gate verification."""

    def __init__(self, message: str, details: dict | None = None):
        super().__init__(message)
        self.details = details or {}


class StabilizerNotPreserved(GateVerificationError):
    pass


class StabilizerPhaseError(GateVerificationError):
    pass


class LogicalSpanError(GateVerificationError):
    pass


@dataclass(frozen=True, eq=False)
class StabilizerFrame:
    """Checks and a symplectic logical basis, all as qubit bitmasks."""

    n: int
    x_checks: tuple[int, ...]
    z_checks: tuple[int, ...]
    labels: tuple[str, ...]
    x_logicals: tuple[int, ...]
    z_logicals: tuple[int, ...]

    @classmethod
    def from_basis(cls, basis: CanonicalBasis) -> StabilizerFrame:
        code = basis.code
        return cls(
            n=code.n_qubits,
            x_checks=code.hx.row_bits,
            z_checks=code.hz.row_bits,
            labels=tuple(q.selector() for q in basis.ids),
            x_logicals=tuple(basis.x_ops[q].x for q in basis.ids),
            z_logicals=tuple(basis.z_ops[q].z for q in basis.ids),
        )

    @classmethod
    def css(cls, hx: BinaryMatrix, hz: BinaryMatrix, x_logicals: Sequence[int],
            z_logicals: Sequence[int], labels: Sequence[str]) -> StabilizerFrame:
        return cls(hx.cols, hx.row_bits, hz.row_bits, tuple(labels), tuple(x_logicals), tuple(z_logicals))

    @property
    def k(self) -> int:
        return len(self.labels)

    def direct_sum(self, other: StabilizerFrame) -> StabilizerFrame:
        """Frame of two independent blocks; ``other``'s qubits follow ours."""
        s = self.n
        return StabilizerFrame(
            n=self.n + other.n,
            x_checks=self.x_checks + tuple(r << s for r in other.x_checks),
            z_checks=self.z_checks + tuple(r << s for r in other.z_checks),
            labels=self.labels + other.labels,
            x_logicals=self.x_logicals + tuple(r << s for r in other.x_logicals),
            z_logicals=self.z_logicals + tuple(r << s for r in other.z_logicals),
        )

    def basis_operator(self, c: int) -> PauliOperator:
        """Basis operator ``c`` in the order X_1..X_k, Z_1..Z_k."""
        if c < self.k:
            return PauliOperator(self.n, x=self.x_logicals[c])
        return PauliOperator(self.n, z=self.z_logicals[c - self.k])


@dataclass(frozen=True)
class LogicalAction:
    """Clifford action on the logical basis.

    Column ``c`` of ``symplectic_map`` expresses the image of basis operator
    ``c`` (X_1..X_k then Z_1..Z_k) in the same basis; ``phases[c]`` is its
    i-power in X-before-Z form.
    """

    labels: tuple[str, ...]
    symplectic_map: BinaryMatrix
    phases: tuple[int, ...]
    description: str = ""

    @property
    def k(self) -> int:
        return len(self.labels)

    def is_symplectic(self) -> bool:
        k = self.k
        m = self.symplectic_map.array.astype(np.int64)
        omega = np.zeros((2 * k, 2 * k), dtype=np.int64)
        omega[:k, k:] = np.eye(k, dtype=np.int64)
        omega[k:, :k] = np.eye(k, dtype=np.int64)
        return bool(((m.T @ omega @ m) % 2 == omega).all())

    def compare(self, expected: LogicalAction) -> ActionComparison:
        if self.labels != expected.labels:
            return ActionComparison(False, "logical qubit labels differ")
        a, b = self.symplectic_map.array, expected.symplectic_map.array
        if not (a == b).all():
            c = int(np.flatnonzero((a != b).any(axis=0))[0])
            return ActionComparison(False, f"image of {self._op_name(c)} differs", first_difference=c)
        flips = []
        for c, (p, q) in enumerate(zip(self.phases, expected.phases)):
            diff = (p - q) % 4
            if diff == 2:
                flips.append(c)
            elif diff:
                return ActionComparison(
                    False, f"phase of {self._op_name(c)} image is i^{p}, expected i^{q}",
                    first_difference=c,
                )
        return ActionComparison(True, "match", correction=self._correction(flips))

    def _op_name(self, c: int) -> str:
        kind = "X" if c < self.k else "Z"
        return f"{kind}[{self.labels[c % self.k]}]"

    def _correction(self, flips: list[int]) -> dict[str, str]:
        # A logical Pauli applied before the expected gate flips exactly the
        # basis images it anticommutes with.
        letters = {}
        for c in flips:
            q = self.labels[c % self.k]
            add = "Z" if c < self.k else "X"
            prev = letters.get(q, "")
            letters[q] = "Y" if prev and prev != add else add
        return dict(sorted(letters.items()))

    def to_dict(self) -> dict:
        k = self.k
        m = self.symplectic_map.array
        images = []
        for c in range(2 * k):
            col = m[:, c]
            images.append({
                "operator": self._op_name(c),
                "phase": self.phases[c],
                "x": [self.labels[r] for r in range(k) if col[r]],
                "z": [self.labels[r] for r in range(k) if col[k + r]],
            })
        return {
            "labels": list(self.labels),
            "description": self.description,
            "symplectic": self.is_symplectic(),
            "images": images,
        }


@dataclass(frozen=True)
class ActionComparison:
    matches: bool
    message: str
    correction: dict[str, str] = field(default_factory=dict)
    first_difference: int | None = None

    @property
    def exact(self) -> bool:
        return self.matches and not self.correction


@dataclass
class GateVerification:
    passed: bool
    stabilizers_checked: int
    action: LogicalAction
    correction: dict[str, str] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "stabilizersChecked": self.stabilizers_checked,
            "stabilizerPhasesZero": self.passed,
            "pauliCorrection": self.correction,
            "logicalAction": self.action.to_dict(),
        }


def _sign_of_product(x_gens: Sequence[int], x_combo: int, z_gens: Sequence[int], z_combo: int, n: int) -> PauliOperator:
    """Exact product of the chosen X generators followed by the chosen Z generators."""
    acc = PauliOperator(n)
    for gens, combo, is_x in ((x_gens, x_combo, True), (z_gens, z_combo, False)):
        x, z, phase = acc.x, acc.z, acc.phase
        g = 0
        while combo:
            if combo & 1:
                gx, gz = (gens[g], 0) if is_x else (0, gens[g])
                phase += 2 * (z & gx).bit_count()
                x ^= gx
                z ^= gz
            combo >>= 1
            g += 1
        acc = PauliOperator(n, x, z, phase)
    return acc


def verify_frame(frame: StabilizerFrame, circuit: Circuit) -> GateVerification:
    """Check stabilizer preservation (signs included) and extract the logical action."""
    if circuit.n_qubits != frame.n:
        raise ValueError(f"circuit acts on {circuit.n_qubits} qubits, frame has {frame.n}")
    n, k = frame.n, frame.k
    x_stab = SpanSolver(frame.x_checks)
    z_stab = SpanSolver(frame.z_checks)

    generators = [PauliOperator(n, x=r) for r in frame.x_checks]
    generators += [PauliOperator(n, z=r) for r in frame.z_checks]
    for g_index, gen in enumerate(generators):
        image = conjugate(gen, circuit)
        rx, cx = x_stab.reduce(image.x)
        rz, cz = z_stab.reduce(image.z)
        label = _check_label(frame, g_index)
        if rx or rz:
            raise StabilizerNotPreserved(
                f"image of {label} is not in the stabilizer group",
                {"generator": label, "image": image.label()},
            )
        ref = _sign_of_product(frame.x_checks, cx, frame.z_checks, cz, n)
        if ref.x != image.x or ref.z != image.z or ref.phase != image.phase:
            raise StabilizerPhaseError(
                f"image of {label} is the stabilizer element times i^{(image.phase - ref.phase) % 4}",
                {"generator": label, "phase": (image.phase - ref.phase) % 4},
            )

    x_full = SpanSolver(frame.x_logicals + frame.x_checks)
    z_full = SpanSolver(frame.z_logicals + frame.z_checks)
    columns = np.zeros((2 * k, 2 * k), dtype=np.uint8)
    phases = []
    for c in range(2 * k):
        image = conjugate(frame.basis_operator(c), circuit)
        rx, cx = x_full.reduce(image.x)
        rz, cz = z_full.reduce(image.z)
        if rx or rz:
            raise LogicalSpanError(
                f"image of basis operator {c} is outside the logical + stabilizer span",
                {"operator": c, "image": image.label()},
            )
        for r in range(k):
            columns[r, c] = (cx >> r) & 1
            columns[k + r, c] = (cz >> r) & 1
        ref = _sign_of_product(frame.x_logicals + frame.x_checks, cx,
                               frame.z_logicals + frame.z_checks, cz, n)
        phases.append((image.phase - ref.phase) % 4)

    action = LogicalAction(frame.labels, BinaryMatrix(columns), tuple(phases))
    stabs = len(generators)
    return GateVerification(True, stabs, action)


def _check_label(frame: StabilizerFrame, g_index: int) -> str:
    nx = len(frame.x_checks)
    return f"X-check #{g_index + 1}" if g_index < nx else f"Z-check #{g_index - nx + 1}"


def logical_action_of(circuit: Circuit, labels: Sequence[str], description: str = "") -> LogicalAction:
    """Action of an abstract circuit on ``len(labels)`` bare qubits."""
    k = len(labels)
    if circuit.n_qubits != k:
        raise ValueError("circuit width must equal the number of logical qubits")
    columns = np.zeros((2 * k, 2 * k), dtype=np.uint8)
    phases = []
    for c in range(2 * k):
        op = PauliOperator(k, x=1 << c) if c < k else PauliOperator(k, z=1 << (c - k))
        image = conjugate(op, circuit)
        for r in range(k):
            columns[r, c] = (image.x >> r) & 1
            columns[k + r, c] = (image.z >> r) & 1
        phases.append(image.phase)
    return LogicalAction(tuple(labels), BinaryMatrix(columns), tuple(phases), description)


# Physical circuits -----------------------------------------------------------------

def _idx(code: HgpCode, sector: Sector, row: int, col: int) -> int:
    return code.qubit_index(QubitCoord(sector, row, col))


def hadamard_swap_circuit(code: HgpCode, p: QubitPartition) -> Circuit:
    """H on every qubit, then SWAP inside every two-qubit subset of ``p``."""
    if p.kind not in (PartitionKind.DIAGONAL_TWIN, PartitionKind.SIBLING, PartitionKind.SINGLETON):
        raise ValueError(f"Hadamard-SWAP is defined for diagonal-twin or sibling partitions, not {p.kind.value}")
    p.validate(code)
    gates = [gate("H", q) for q in range(1, code.n_qubits + 1)]
    for s in p.subsets:
        if len(s) == 2:
            a, b = sorted(code.qubit_index(c) for c in s)
            gates.append(gate("SWAP", a, b))
        elif len(s) > 2:
            raise ValueError("Hadamard-SWAP needs subsets of size at most 2")
    return Circuit(code.n_qubits, tuple(gates))


def _twin_pairs(code: HgpCode) -> list[tuple[int, int]]:
    pairs = []
    for sector in Sector:
        size = code.grid_shape(sector)[0]
        for i in range(1, size + 1):
            for h in range(i + 1, size + 1):
                pairs.append((_idx(code, sector, i, h), _idx(code, sector, h, i)))
    return pairs


def cz_s_circuit(code: HgpCode) -> Circuit:
    """S on left diagonal qubits, S† on right diagonal qubits, CZ on twin pairs."""
    if not code.is_square:
        raise ValueError("CZ-S needs a square code")
    gates = [gate("S", _idx(code, Sector.L, i, i)) for i in range(1, code.n_a + 1)]
    gates += [gate("Sdag", _idx(code, Sector.R, j, j)) for j in range(1, code.m_a + 1)]
    gates += [gate("CZ", a, b) for a, b in _twin_pairs(code)]
    return Circuit(code.n_qubits, tuple(gates))


def sibling_sign_correction(code: HgpCode) -> tuple[int, ...]:
    """Qubits needing a Z after the sibling CZ layer so every X check keeps sign +1.

    Inside S_x(j,h) the sibling pair at (j,h) is fully covered exactly when
    the seed has ones at (j,j) and (h,h); the CZ there turns XX into YY and
    flips the check's sign. A Z-type Pauli z with Hx z equal to that flip
    pattern restores all signs. Seeds with a zero diagonal need nothing.
    """
    diag = [code.ha.entry(i, i) for i in range(1, code.n_a + 1)]
    flips = 0
    for j in range(1, code.m_a + 1):
        for h in range(1, code.n_b + 1):
            if diag[j - 1] and diag[h - 1]:
                flips |= 1 << ((j - 1) * code.n_b + h - 1)
    if not flips:
        return ()
    residual, combo = SpanSolver(code.hx.col_bits).reduce(flips)
    if residual:
        raise ValueError("no Z-type Pauli restores the X-check signs after sibling CZ")
    return tuple(q + 1 for q in range(code.n_qubits) if (combo >> q) & 1)


def sibling_cz_circuit(code: HgpCode, sign_correction: bool = True) -> Circuit:
    """CZ between every sibling pair (i,h,L)-(i,h,R), then the Z sign correction."""
    if not code.is_symmetric:
        raise ValueError("sibling CZ needs a symmetric code")
    gates = [
        gate("CZ", _idx(code, Sector.L, i, h), _idx(code, Sector.R, i, h))
        for i in range(1, code.n_a + 1)
        for h in range(1, code.n_b + 1)
    ]
    if sign_correction:
        gates += [gate("Z", q) for q in sibling_sign_correction(code)]
    return Circuit(code.n_qubits, tuple(gates))


# Expected logical actions ----------------------------------------------------------

def _lcircuit(basis: CanonicalBasis, ops: list[tuple[str, tuple[LogicalQubitId, ...]]]) -> Circuit:
    return Circuit(basis.k, tuple(GateOp(kind, tuple(basis.position(q) + 1 for q in qs)) for kind, qs in ops))


def _labels(basis: CanonicalBasis) -> tuple[str, ...]:
    return tuple(q.selector() for q in basis.ids)


def _logical_twin_pairs(basis: CanonicalBasis) -> list[tuple[LogicalQubitId, LogicalQubitId]]:
    pairs = []
    for q in basis.ids:
        if q.is_diagonal:
            continue
        t = twin_of(q)
        if t not in basis:
            raise ValueError(f"twin {t} of {q} is not a logical qubit")
        if q < t:
            pairs.append((q, t))
    return pairs


def _logical_sibling_pairs(basis: CanonicalBasis) -> list[tuple[LogicalQubitId, LogicalQubitId]]:
    pairs = []
    for q in basis.sector_ids(Sector.L):
        s = LogicalQubitId(Sector.R, q.row, q.col)
        if s not in basis:
            raise ValueError(f"sibling {s} of {q} is not a logical qubit")
        pairs.append((q, s))
    if len(pairs) * 2 != basis.k:
        raise ValueError("left and right logical pivots do not pair up")
    return pairs


def expected_hadamard_swap(basis: CanonicalBasis, kind: PartitionKind) -> LogicalAction:
    ops = [("H", (q,)) for q in basis.ids]
    if kind is PartitionKind.DIAGONAL_TWIN:
        ops += [("SWAP", pair) for pair in _logical_twin_pairs(basis)]
        text = "H on every logical qubit, then SWAP between twin logical qubits"
    elif kind is PartitionKind.SIBLING:
        ops += [("SWAP", pair) for pair in _logical_sibling_pairs(basis)]
        text = "H on every logical qubit, then SWAP between sibling logical qubits"
    else:
        text = "H on every logical qubit"
    return logical_action_of(_lcircuit(basis, ops), _labels(basis), text)


def expected_cz_s(basis: CanonicalBasis) -> LogicalAction:
    ops = []
    for q in basis.ids:
        if q.is_diagonal:
            ops.append(("S" if q.sector is Sector.L else "Sdag", (q,)))
    ops += [("CZ", pair) for pair in _logical_twin_pairs(basis)]
    text = "S on left diagonal logicals, S† on right diagonal logicals, CZ between twin logicals"
    return logical_action_of(_lcircuit(basis, ops), _labels(basis), text)


def expected_sibling_cz(basis: CanonicalBasis) -> LogicalAction:
    ops = [("CZ", pair) for pair in _logical_sibling_pairs(basis)]
    return logical_action_of(_lcircuit(basis, ops), _labels(basis),
                             "CZ between sibling logical pairs")


def expected_identity(basis: CanonicalBasis) -> LogicalAction:
    return logical_action_of(Circuit(basis.k), _labels(basis), "identity")


def known_actions(basis: CanonicalBasis) -> list[LogicalAction]:
    code = basis.code
    out = [expected_identity(basis)]
    builders = []
    if code.is_square:
        builders += [lambda: expected_hadamard_swap(basis, PartitionKind.DIAGONAL_TWIN),
                     lambda: expected_cz_s(basis)]
    if code.is_symmetric:
        builders += [lambda: expected_hadamard_swap(basis, PartitionKind.SIBLING),
                     lambda: expected_sibling_cz(basis)]
    for build in builders:
        try:
            out.append(build())
        except ValueError:
            # pattern does not apply to this seed (e.g. unmatched sibling pivots)
            continue
    return out


def verify_gate(code: HgpCode, basis: CanonicalBasis, c: Circuit,
                expected: LogicalAction | None = None) -> GateVerification:
    """Verify ``c`` on ``code`` and describe its logical action.

    With ``expected`` given, the action must match it up to a logical Pauli
    correction, otherwise GateVerificationError is raised. Without it, the
    action is named after the first known pattern it matches, if any.
    """
    if basis.code is not code:
        raise ValueError("basis belongs to a different code")
    result = verify_frame(StabilizerFrame.from_basis(basis), c)
    candidates = [expected] if expected is not None else known_actions(basis)
    for cand in candidates:
        cmp = result.action.compare(cand)
        if cmp.matches:
            result.action = LogicalAction(result.action.labels, result.action.symplectic_map,
                                          result.action.phases, cand.description)
            result.correction = cmp.correction
            return result
    if expected is not None:
        cmp = result.action.compare(expected)
        raise GateVerificationError(
            f"logical action differs from the expected one: {cmp.message}",
            {"expected": expected.description},
        )
    return result
