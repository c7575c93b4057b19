"""Hypergraph product codes: canonical logical bases, transversal Clifford gates
and round-robin schedules, with a Clifford/Pauli verification engine."""

from hgpgates._backend import BACKEND
from hgpgates.canonical import CanonicalBasis, LogicalQubitId, canonical_basis, verify_symplectic
from hgpgates.f2linalg import BinaryMatrix, BitVector, parse_matrix, read_matrix
from hgpgates.hgpcode import HgpCode, QubitCoord, Sector, build_hgp, code_params, symmetric_square
from hgpgates.pauli import Circuit, GateOp, PauliOperator

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BinaryMatrix",
    "BitVector",
    "CanonicalBasis",
    "Circuit",
    "GateOp",
    "HgpCode",
    "LogicalQubitId",
    "PauliOperator",
    "QubitCoord",
    "Sector",
    "build_hgp",
    "canonical_basis",
    "code_params",
    "parse_matrix",
    "read_matrix",
    "symmetric_square",
    "verify_symplectic",
]
