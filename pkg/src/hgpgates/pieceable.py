"""Pieceably fault-tolerant schedules built from sector-transversal tranches.

A logical CZ between a left and a right logical qubit is the product of
physical CZs over the two logical Z supports. The round-robin ordering
splits that product into Δ time steps, each pairing every source qubit with
a distinct target qubit, so every step is a set of disjoint left-right gates
and error correction can run in between. XCX works the same way on the X
supports, and CNOT is assembled from CZ and XCX legs through a third
logical qubit in the opposite sector.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Callable, Sequence

from hgpgates.canonical import CanonicalBasis, LogicalQubitId
from hgpgates.f2linalg import BitVector
from hgpgates.gates import (
    ActionComparison,
    GateVerificationError,
    LogicalAction,
    StabilizerFrame,
    logical_action_of,
    verify_frame,
)
from hgpgates.hgpcode import HgpCode, QubitCoord, Sector
from hgpgates.pauli import Circuit, GateOp, gate


@dataclass(frozen=True)
class Step:
    gates: tuple[GateOp, ...]
    ec: bool = True

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        seen: set[int] = set()
        for g in self.gates:
            if seen.intersection(g.targets):
                raise ValueError(f"step reuses a qubit: {g}")
            seen.update(g.targets)

    @property
    def qubits(self) -> frozenset[int]:
        return frozenset(q for g in self.gates for q in g.targets)


@dataclass(frozen=True)
class TimeCost:
    steps: int
    tau_units: int

    def to_dict(self) -> dict:
        return {"steps": self.steps, "tauUnits": self.tau_units}


@dataclass(frozen=True)
class Schedule:
    kind: str
    n_qubits: int
    steps: tuple[Step, ...]
    target_pairs: tuple[tuple[str, str], ...]
    delta: int
    n_code_qubits: int | None = None  # qubits above this index belong to an ancilla code

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))

    def flatten(self) -> Circuit:
        """All gates in step order; EC markers are dropped."""
        return Circuit(self.n_qubits, tuple(g for s in self.steps for g in s.gates))

    def gate_count(self) -> int:
        return sum(len(s.gates) for s in self.steps)

    def gates(self) -> list[GateOp]:
        return [g for s in self.steps for g in s.gates]

    @property
    def support(self) -> frozenset[int]:
        out: frozenset[int] = frozenset()
        for s in self.steps:
            out |= s.qubits
        return out

    @property
    def time_cost(self) -> TimeCost:
        return TimeCost(len(self.steps), sum(1 for s in self.steps if s.ec))

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "delta": self.delta,
            "targetPairs": [list(p) for p in self.target_pairs],
            "steps": [{"gates": [g.to_dict() for g in s.gates], "ec": s.ec} for s in self.steps],
            "timeCostTau": self.time_cost.tau_units,
        }


def round_robin_pairs(src: Sequence[int], dst: Sequence[int]) -> list[list[tuple[int, int]]]:
    """Round-robin pairing of ``src`` against ``dst``.

    At step t the ν-th source element (1-based) meets the μ-th target element
    with μ = ((ν - 1 + t) mod Δ) + 1, kept only when μ ≤ len(dst).
    Over t = 0..Δ-1 every (source, target) pair appears exactly once.
    """
    if not src or not dst:
        raise ValueError("round robin needs non-empty supports")
    delta = max(len(src), len(dst))
    steps = []
    for t in range(delta):
        pairs = []
        for nu, eta in enumerate(src, start=1):
            mu = (nu - 1 + t) % delta + 1
            if mu <= len(dst):
                pairs.append((eta, dst[mu - 1]))
        steps.append(pairs)
    return steps


def _check_pair(code: HgpCode, basis: CanonicalBasis, q_l: LogicalQubitId, q_r: LogicalQubitId) -> None:
    if not code.is_symmetric:
        raise ValueError("round-robin schedules are defined here for symmetric codes")
    if basis.code is not code:
        raise ValueError("basis belongs to a different code")
    if q_l.sector is not Sector.L or q_r.sector is not Sector.R:
        raise ValueError(f"expected a left then a right logical qubit, got {q_l} and {q_r}")
    for q in (q_l, q_r):
        if q not in basis:
            raise KeyError(f"{q} is not a logical qubit of this code")


def _schedule(kind: str, code: HgpCode, src, dst, make: Callable[[int, int], GateOp],
              pairs: tuple[tuple[str, str], ...]) -> Schedule:
    rounds = round_robin_pairs(src, dst)
    steps = tuple(Step(tuple(make(a, b) for a, b in r)) for r in rounds)
    return Schedule(kind, code.n_qubits, steps, pairs, len(rounds))


def round_robin_cz(code: HgpCode, basis: CanonicalBasis, q_l: LogicalQubitId,
                   q_r: LogicalQubitId) -> Schedule:
    """CZ(q_l, q_r) as Δ disjoint left-right CZ tranches over the two Z supports."""
    _check_pair(code, basis, q_l, q_r)
    i, h = q_l.row, q_l.col
    j, ell = q_r.row, q_r.col
    src = basis.ker_a.vector(i).support()
    dst = basis.ker_b_t.vector(ell).support()

    def make(eta: int, gamma: int) -> GateOp:
        return gate("CZ", code.qubit_index(QubitCoord(Sector.L, eta, h)),
                    code.qubit_index(QubitCoord(Sector.R, j, gamma)))

    return _schedule("cz", code, src, dst, make, ((q_l.selector(), q_r.selector()),))


def round_robin_xcx(code: HgpCode, basis: CanonicalBasis, q_l: LogicalQubitId,
                    q_r: LogicalQubitId) -> Schedule:
    """XCX(q_l, q_r) over the two X supports, same tranche structure as CZ."""
    _check_pair(code, basis, q_l, q_r)
    i, h = q_l.row, q_l.col
    j, ell = q_r.row, q_r.col
    src = basis.ker_b.vector(h).support()
    dst = basis.ker_a_t.vector(j).support()

    def make(eta: int, gamma: int) -> GateOp:
        return gate("XCX", code.qubit_index(QubitCoord(Sector.L, i, eta)),
                    code.qubit_index(QubitCoord(Sector.R, gamma, ell)))

    return _schedule("xcx", code, src, dst, make, ((q_l.selector(), q_r.selector()),))


def _ordered(a: LogicalQubitId, b: LogicalQubitId) -> tuple[LogicalQubitId, LogicalQubitId]:
    return (a, b) if a.sector is Sector.L else (b, a)


def choose_intermediary(basis: CanonicalBasis, control: LogicalQubitId,
                        target: LogicalQubitId) -> LogicalQubitId:
    """Smallest opposite-sector logical qubit whose legs avoid the operands' supports."""
    operands = (basis.x_ops[control].support | basis.z_ops[control].support
                | basis.x_ops[target].support | basis.z_ops[target].support)
    for m in basis.sector_ids(control.sector.flip()):
        if not (basis.x_ops[m].support | basis.z_ops[m].support) & operands:
            return m
    raise ValueError(f"no opposite-sector logical qubit available to route CNOT {control} -> {target}")


def cnot_composite(code: HgpCode, basis: CanonicalBasis, control: LogicalQubitId,
                   target: LogicalQubitId, intermediary: LogicalQubitId | None = None) -> Schedule:
    """CNOT(control -> target) for two logical qubits in the same sector.

    Uses CNOT(c,t) = XCX(m,t) · CZ(c,m) · XCX(m,t) · CZ(c,m) (CZ applied
    first), which holds exactly for any state of the intermediary m.
    Each of the four legs is a round-robin schedule.
    """
    if control.sector is not target.sector:
        raise ValueError("control and target must share a sector; use the CZ/XCX schedules across sectors")
    if control == target:
        raise ValueError("control and target must differ")
    for q in (control, target):
        if q not in basis:
            raise KeyError(f"{q} is not a logical qubit of this code")
    m = intermediary or choose_intermediary(basis, control, target)
    if m.sector is control.sector:
        raise ValueError("the intermediary must sit in the opposite sector")
    cz_leg = round_robin_cz(code, basis, *_ordered(control, m))
    xcx_leg = round_robin_xcx(code, basis, *_ordered(m, target))
    legs = (cz_leg, xcx_leg, cz_leg, xcx_leg)
    steps = tuple(s for leg in legs for s in leg.steps)
    pairs = tuple(p for leg in legs for p in leg.target_pairs)
    return Schedule("cnot", code.n_qubits, steps, pairs, max(cz_leg.delta, xcx_leg.delta))


def injection_cz(code: HgpCode, basis: CanonicalBasis, q: LogicalQubitId, ancilla_z: BitVector) -> Schedule:
    """CZ between logical ``q`` and an ancilla-code logical with Z support ``ancilla_z``.

    Ancilla qubit ι is addressed as ``code.n_qubits + ι``.
    """
    if ancilla_z.weight == 0:
        raise ValueError("ancilla logical Z support is empty")
    if q not in basis:
        raise KeyError(f"{q} is not a logical qubit of this code")
    src = [i + 1 for i in range(code.n_qubits) if (basis.z_ops[q].z >> i) & 1]
    dst = [code.n_qubits + t for t in ancilla_z.support()]
    rounds = round_robin_pairs(src, dst)
    steps = tuple(Step(tuple(gate("CZ", a, b) for a, b in r)) for r in rounds)
    return Schedule("inject", code.n_qubits + ancilla_z.length, steps,
                    ((q.selector(), "ancilla"),), len(rounds), n_code_qubits=code.n_qubits)


class GadgetKind(str, enum.Enum):
    H = "H"
    S = "S"
    T = "T"


_GADGET_STATES = {GadgetKind.H: "|+>", GadgetKind.S: "|-i>", GadgetKind.T: "|T>"}
# U X U† for the diagonal U that prepares each ancilla from |+>
_GADGET_CORRECTIONS = {GadgetKind.H: "X", GadgetKind.S: "Y", GadgetKind.T: "S·X"}
_GADGET_OUTPUT = {GadgetKind.H: "H", GadgetKind.S: "S†·H", GadgetKind.T: "T·H"}


@dataclass(frozen=True)
class Gadget:
    kind: GadgetKind
    qubit: LogicalQubitId
    ancilla_state: str
    steps: tuple[dict, ...]
    verified: bool
    note: str

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "qubit": self.qubit.selector(),
            "ancillaState": self.ancilla_state,
            "steps": list(self.steps),
            "verified": self.verified,
            "note": self.note,
        }


def gadget_circuit(kind: GadgetKind | str, q: LogicalQubitId) -> Gadget:
    """Structural description of a CZ-based injection gadget (nothing is simulated).

    The ancilla starts in U|+> with U diagonal; after the injection CZ and an
    X measurement of the data block (outcome m) the ancilla block holds
    (U X U†)^m · U·H applied to the input, so the correction is U X U† when m = 1.
    """
    kind = GadgetKind(kind)
    steps = (
        {"op": "prepareAncilla", "state": _GADGET_STATES[kind]},
        {"op": "injectionCz", "data": q.selector(), "schedule": "slot"},
        {"op": "measureX", "target": q.selector(), "transversal": True},
        {"op": "classicalCorrection", "on": "ancilla", "ifOutcome": 1,
         "gate": _GADGET_CORRECTIONS[kind]},
    )
    clifford = kind is not GadgetKind.T
    note = f"output {_GADGET_OUTPUT[kind]} on the ancilla block"
    if not clifford:
        note += "; non-Clifford, not verified"
    return Gadget(kind, q, _GADGET_STATES[kind], steps, False, note)


@dataclass(frozen=True)
class ParallelPlan:
    groups: tuple[tuple[int, ...], ...]
    merged: tuple[Schedule, ...]
    d_up: int
    n_gates: int

    @property
    def tau_units(self) -> int:
        return sum(s.time_cost.tau_units for s in self.merged)

    @property
    def parallel_width(self) -> int:
        return max((len(g) for g in self.groups), default=0)

    def estimated_tau(self) -> float:
        """τ·d↑·m/n_p with m gates and n_p gates per parallel batch."""
        if not self.parallel_width:
            return 0.0
        return self.d_up * self.n_gates / self.parallel_width

    def to_dict(self) -> dict:
        return {
            "groups": [list(g) for g in self.groups],
            "mergedSteps": [len(s.steps) for s in self.merged],
            "tauUnits": self.tau_units,
            "estimate": {"dUp": self.d_up, "m": self.n_gates, "nP": self.parallel_width,
                         "tau": self.estimated_tau()},
        }


def parallel_groups(schedules: Sequence[Schedule], d_up: int | None = None) -> ParallelPlan:
    """Greedy first-fit batching of schedules with pairwise disjoint physical supports."""
    if len({s.n_qubits for s in schedules}) > 1:
        raise ValueError("schedules act on different qubit counts")
    groups: list[list[int]] = []
    used: list[frozenset[int]] = []
    for pos, s in enumerate(schedules):
        sup = s.support
        for g, taken in enumerate(used):
            if not sup & taken:
                groups[g].append(pos)
                used[g] = taken | sup
                break
        else:
            groups.append([pos])
            used.append(sup)
    merged = []
    for g in groups:
        members = [schedules[p] for p in g]
        depth = max(len(s.steps) for s in members)
        steps = []
        for t in range(depth):
            gates = tuple(gt for s in members if t < len(s.steps) for gt in s.steps[t].gates)
            steps.append(Step(gates, any(t < len(s.steps) and s.steps[t].ec for s in members)))
        merged.append(Schedule(
            "parallel", members[0].n_qubits, tuple(steps),
            tuple(p for s in members for p in s.target_pairs), max(s.delta for s in members),
        ))
    if d_up is None:
        d_up = max((s.delta for s in schedules), default=0)
    return ParallelPlan(tuple(tuple(g) for g in groups), tuple(merged), d_up, len(schedules))


# Expected actions and verification --------------------------------------------------

def expected_two_qubit(basis: CanonicalBasis, kind: str, a: LogicalQubitId, b: LogicalQubitId) -> LogicalAction:
    labels = tuple(q.selector() for q in basis.ids)
    op = GateOp(kind, (basis.position(a) + 1, basis.position(b) + 1))
    return logical_action_of(Circuit(basis.k, (op,)), labels, f"{kind} {a.selector()} {b.selector()}")


def expected_for(basis: CanonicalBasis, s: Schedule) -> LogicalAction:
    """Target action of a same-code round-robin schedule."""
    kinds = {"cz": "CZ", "xcx": "XCX", "cnot": "CNOT"}
    if s.kind not in kinds:
        raise ValueError(f"no default expected action for {s.kind} schedules")
    if s.kind == "cnot":
        # legs are (c,m), (m,t), ... in sector order; recover control and target
        first, second = s.target_pairs[0], s.target_pairs[1]
        m = (set(first) & set(second)).pop()
        control = next(x for x in first if x != m)
        target = next(x for x in second if x != m)
        a, b = LogicalQubitId.parse(control), LogicalQubitId.parse(target)
    else:
        a, b = (LogicalQubitId.parse(x) for x in s.target_pairs[0])
    return expected_two_qubit(basis, kinds[s.kind], a, b)


@dataclass
class ScheduleReport:
    passed: bool
    message: str
    correction: dict[str, str] = field(default_factory=dict)
    first_difference: str | None = None

    def to_dict(self) -> dict:
        return {"verified": self.passed, "message": self.message,
                "pauliCorrection": self.correction, "firstDifference": self.first_difference}


def verify_schedule(code: HgpCode, basis: CanonicalBasis, s: Schedule,
                    expected: LogicalAction | None = None,
                    frame: StabilizerFrame | None = None) -> ScheduleReport:
    """Flatten ``s`` and check its logical action against ``expected``.

    ``frame`` overrides the code's own frame, e.g. for injection schedules
    that also act on an ancilla code.
    """
    if frame is None:
        frame = StabilizerFrame.from_basis(basis)
    if expected is None:
        expected = expected_for(basis, s)
    try:
        result = verify_frame(frame, s.flatten())
    except GateVerificationError as exc:
        return ScheduleReport(False, str(exc))
    cmp: ActionComparison = result.action.compare(expected)
    if not cmp.matches:
        first = None
        if cmp.first_difference is not None:
            first = result.action._op_name(cmp.first_difference)
        return ScheduleReport(False, cmp.message, first_difference=first)
    return ScheduleReport(True, "logical action matches " + expected.description, cmp.correction)


# Text rendering -------------------------------------------------------------------------

_MARKS = "abcdefghijklmnopqrstuvwxyz"


def render_text(code: HgpCode, s: Schedule) -> str:
    """Per-step grids: gate partners share a letter, '.' marks idle qubits."""
    out = []
    for t, step in enumerate(s.steps):
        marks: dict[int, str] = {}
        for pos, g in enumerate(step.gates):
            for q in g.targets:
                marks[q] = _MARKS[pos % len(_MARKS)]
        out.append(f"t={t} ({len(step.gates)} gates{', EC' if step.ec else ''})")
        grids = []
        for sector in Sector:
            rows, cols = code.grid_shape(sector)
            lines = [f"{sector.value}:".ljust(2 * cols)]
            for r in range(1, rows + 1):
                cells = [marks.get(code.qubit_index(QubitCoord(sector, r, c)), ".") for c in range(1, cols + 1)]
                lines.append(" ".join(cells))
            grids.append(lines)
        width = max(len(x) for x in grids[0])
        for left, right in itertools.zip_longest(*grids, fillvalue=""):
            out.append(f"{left.ljust(width)}   {right}")
        extra = sorted(q for q in marks if q > code.n_qubits)
        if extra:
            out.append("ancilla: " + " ".join(f"{q - code.n_qubits}{marks[q]}" for q in extra))
        out.append("")
    return "\n".join(out).rstrip() + "\n"
