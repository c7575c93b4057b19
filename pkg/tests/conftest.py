from __future__ import annotations

from importlib.resources import files
from pathlib import Path

import pytest

from hgpgates.canonical import canonical_basis
from hgpgates.f2linalg import read_matrix
from hgpgates.hgpcode import build_hgp, symmetric_square

SEEDS = Path(str(files("hgpgates") / "data" / "seeds"))
TABLE_DIR = Path(str(files("hgpgates") / "data" / "table2"))

ACCEPTANCE_LINES: dict[int, str] = {}


def seed(name: str):
    return read_matrix(SEEDS / f"{name}.txt")


@pytest.fixture(scope="session")
def h_tilde():
    return seed("hamming_tilde")


@pytest.fixture(scope="session")
def h_hamming():
    return seed("hamming")


@pytest.fixture(scope="session")
def tilde_code(h_tilde):
    return build_hgp(h_tilde, h_tilde)


@pytest.fixture(scope="session")
def tilde_basis(tilde_code):
    return canonical_basis(tilde_code)


@pytest.fixture(scope="session")
def sym_hamming(h_hamming):
    return symmetric_square(h_hamming)


@pytest.fixture(scope="session")
def sym_hamming_basis(sym_hamming):
    return canonical_basis(sym_hamming)


@pytest.fixture(scope="session")
def sym_toric():
    return symmetric_square(seed("toric"))


@pytest.fixture(scope="session")
def sym_toric_basis(sym_toric):
    return canonical_basis(sym_toric)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
