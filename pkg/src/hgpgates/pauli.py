"""Phase-exact Pauli algebra and Clifford conjugation.

A Pauli operator on n qubits is stored as ``i**phase * X^x Z^z`` with all X
factors written before all Z factors; ``x`` and ``z`` are int bitmasks (bit
q-1 for qubit q). In this convention ``Y = i X Z``.

Circuits use 1-based qubit targets and act left to right: conjugating by
``[g1, g2]`` computes ``g2 g1 P g1† g2†``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

# Conjugation truth tables, derived from the dense unitaries and frozen.
# Key: a t-qubit gate's local code ``x_bits | z_bits << t`` (target order as
# given); value: (image code, phase increment mod 4).
_TABLES: dict[str, tuple[tuple[int, int], ...]] = {
    "H": ((0, 0), (2, 0), (1, 0), (3, 2)),
    "S": ((0, 0), (3, 1), (2, 0), (1, 1)),
    "Sdag": ((0, 0), (3, 3), (2, 0), (1, 3)),
    "X": ((0, 0), (1, 0), (2, 2), (3, 2)),
    "Y": ((0, 0), (1, 2), (2, 2), (3, 0)),
    "Z": ((0, 0), (1, 2), (2, 0), (3, 2)),
    "CZ": (
        (0, 0), (9, 0), (6, 0), (15, 2), (4, 0), (13, 0), (2, 0), (11, 2),
        (8, 0), (1, 0), (14, 0), (7, 2), (12, 0), (5, 0), (10, 0), (3, 2),
    ),
    "CNOT": (
        (0, 0), (3, 0), (2, 0), (1, 0), (4, 0), (7, 0), (6, 0), (5, 0),
        (12, 0), (15, 0), (14, 0), (13, 0), (8, 0), (11, 0), (10, 0), (9, 0),
    ),
    "SWAP": (
        (0, 0), (2, 0), (1, 0), (3, 0), (8, 0), (10, 0), (9, 0), (11, 0),
        (4, 0), (6, 0), (5, 0), (7, 0), (12, 0), (14, 0), (13, 0), (15, 0),
    ),
    "XCX": (
        (0, 0), (1, 0), (2, 0), (3, 0), (6, 0), (7, 0), (4, 0), (5, 0),
        (9, 0), (8, 0), (11, 0), (10, 0), (15, 2), (14, 2), (13, 2), (12, 2),
    ),
}

ONE_QUBIT_GATES = ("H", "S", "Sdag", "X", "Y", "Z")
TWO_QUBIT_GATES = ("CZ", "CNOT", "SWAP", "XCX")
_INVERSE = {"S": "Sdag", "Sdag": "S"}
_LETTERS = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}


@dataclass(frozen=True)
class PauliOperator:
    """``i**phase * X^x Z^z`` on ``n`` qubits."""

    n: int
    x: int = 0
    z: int = 0
    phase: int = 0

    def __post_init__(self):
        if self.x < 0 or self.z < 0 or (self.x | self.z) >> self.n:
            raise ValueError("support outside the qubit range")
        object.__setattr__(self, "phase", self.phase % 4)

    @classmethod
    def identity(cls, n: int) -> PauliOperator:
        return cls(n)

    @classmethod
    def from_supports(cls, n: int, x: Iterable[int] = (), z: Iterable[int] = (),
                      phase: int = 0) -> PauliOperator:
        """Build from 1-based X- and Z-support indices."""
        return cls(n, _mask(x), _mask(z), phase)

    @classmethod
    def from_label(cls, label: str) -> PauliOperator:
        """Parse ``"i^φ XYZI..."`` (the prefix is optional).

        Letters are read literally, so each ``Y`` contributes ``i`` to the
        internal X-before-Z phase.
        """
        label = label.strip()
        phase = 0
        if label.startswith("i^"):
            head, _, label = label.partition(" ")
            phase = int(head[2:])
        x = z = 0
        for q, ch in enumerate(label):
            if ch in "XY":
                x |= 1 << q
            if ch in "ZY":
                z |= 1 << q
            if ch == "Y":
                phase += 1
            if ch not in "IXYZ":
                raise ValueError(f"bad Pauli letter {ch!r}")
        return cls(len(label), x, z, phase)

    def label(self) -> str:
        """``"i^φ "`` plus letters, with φ the phase relative to the letters."""
        letters = []
        ys = 0
        for q in range(self.n):
            key = ((self.x >> q) & 1, (self.z >> q) & 1)
            letters.append(_LETTERS[key])
            ys += key == (1, 1)
        return f"i^{(self.phase - ys) % 4} " + "".join(letters)

    def __str__(self) -> str:
        return self.label()

    @property
    def support(self) -> int:
        return self.x | self.z

    @property
    def weight(self) -> int:
        return self.support.bit_count()

    def x_support(self) -> tuple[int, ...]:
        return _indices(self.x)

    def z_support(self) -> tuple[int, ...]:
        return _indices(self.z)

    def is_x_type(self) -> bool:
        return self.z == 0

    def is_z_type(self) -> bool:
        return self.x == 0

    def commutes_with(self, other: PauliOperator) -> bool:
        return ((self.x & other.z).bit_count() + (self.z & other.x).bit_count()) % 2 == 0

    def __mul__(self, other: PauliOperator) -> PauliOperator:
        return multiply(self, other)

    def equal_up_to_phase(self, other: PauliOperator) -> bool:
        return self.n == other.n and self.x == other.x and self.z == other.z


def multiply(p: PauliOperator, q: PauliOperator) -> PauliOperator:
    """Exact product ``p·q``; reordering Z^z_p past X^x_q costs (-1)^|z_p ∧ x_q|."""
    if p.n != q.n:
        raise ValueError(f"length mismatch: {p.n} vs {q.n}")
    phase = p.phase + q.phase + 2 * (p.z & q.x).bit_count()
    return PauliOperator(p.n, p.x ^ q.x, p.z ^ q.z, phase)


def product(ops: Iterable[PauliOperator], n: int) -> PauliOperator:
    out = PauliOperator(n)
    for op in ops:
        out = multiply(out, op)
    return out


@dataclass(frozen=True)
class GateOp:
    kind: str
    targets: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(int(t) for t in self.targets))
        if self.kind in ONE_QUBIT_GATES:
            arity = 1
        elif self.kind in TWO_QUBIT_GATES:
            arity = 2
        else:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if len(self.targets) != arity:
            raise ValueError(f"{self.kind} takes {arity} target(s), got {self.targets}")
        if len(set(self.targets)) != arity:
            raise ValueError(f"{self.kind} targets must be distinct: {self.targets}")
        if min(self.targets) < 1:
            raise ValueError("targets are 1-based")

    def inverse(self) -> GateOp:
        return GateOp(_INVERSE.get(self.kind, self.kind), self.targets)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "targets": list(self.targets)}


@dataclass(frozen=True)
class Circuit:
    """Ordered gates over a fixed qubit count; targets are 1-based."""

    n_qubits: int
    gates: tuple[GateOp, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            if max(g.targets) > self.n_qubits:
                raise ValueError(f"{g} addresses a qubit beyond {self.n_qubits}")

    def __len__(self) -> int:
        return len(self.gates)

    def __add__(self, other: Circuit) -> Circuit:
        if other.n_qubits != self.n_qubits:
            raise ValueError("qubit count mismatch")
        return Circuit(self.n_qubits, self.gates + other.gates)

    def inverse(self) -> Circuit:
        return Circuit(self.n_qubits, tuple(g.inverse() for g in reversed(self.gates)))

    def count(self, kind: str) -> int:
        return sum(g.kind == kind for g in self.gates)

    def to_json(self) -> str:
        return json.dumps([g.to_dict() for g in self.gates])

    @classmethod
    def from_json(cls, n_qubits: int, text: str) -> Circuit:
        return cls(n_qubits, tuple(GateOp(d["kind"], tuple(d["targets"])) for d in json.loads(text)))


def gate(kind: str, *targets: int) -> GateOp:
    return GateOp(kind, targets)


def conjugate_gate(p: PauliOperator, g: GateOp) -> PauliOperator:
    table = _TABLES[g.kind]
    t = len(g.targets)
    code = 0
    for pos, q in enumerate(g.targets):
        b = q - 1
        code |= ((p.x >> b) & 1) << pos
        code |= ((p.z >> b) & 1) << (t + pos)
    if code == 0:
        return p
    image, dphase = table[code]
    x, z = p.x, p.z
    for pos, q in enumerate(g.targets):
        b = 1 << (q - 1)
        x = (x | b) if (image >> pos) & 1 else (x & ~b)
        z = (z | b) if (image >> (t + pos)) & 1 else (z & ~b)
    return PauliOperator(p.n, x, z, p.phase + dphase)


def conjugate(p: PauliOperator, c: Circuit | Sequence[GateOp]) -> PauliOperator:
    """``U p U†`` for the unitary ``U`` of circuit ``c``, phase included."""
    gates = c.gates if isinstance(c, Circuit) else c
    if isinstance(c, Circuit) and c.n_qubits != p.n:
        raise ValueError(f"circuit on {c.n_qubits} qubits, Pauli on {p.n}")
    for g in gates:
        p = conjugate_gate(p, g)
    return p


def xcx_expansion(a: int, b: int) -> list[GateOp]:
    """XCX(a, b) written as H⊗H · CZ · H⊗H."""
    return [gate("H", a), gate("H", b), gate("CZ", a, b), gate("H", a), gate("H", b)]


def expand_xcx(c: Circuit) -> Circuit:
    out: list[GateOp] = []
    for g in c.gates:
        out.extend(xcx_expansion(*g.targets) if g.kind == "XCX" else [g])
    return Circuit(c.n_qubits, tuple(out))


def _mask(indices: Iterable[int]) -> int:
    bits = 0
    for i in indices:
        if i < 1:
            raise ValueError("qubit indices are 1-based")
        bits |= 1 << (i - 1)
    return bits


def _indices(bits: int) -> tuple[int, ...]:
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length())
        bits ^= low
    return tuple(out)
