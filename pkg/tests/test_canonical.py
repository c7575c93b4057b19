from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from hgpgates.canonical import (
    LogicalQubitId,
    QubitClass,
    canonical_basis,
    sibling_of,
    twin_of,
    verify_symplectic,
)
from hgpgates.f2linalg import BinaryMatrix
from hgpgates.hgpcode import Sector, build_hgp, code_params

seeds = st.tuples(st.integers(1, 6), st.integers(2, 8)).flatmap(
    lambda s: hnp.arrays(np.uint8, s, elements=st.integers(0, 1))
)


def test_tilde_basis_layout(tilde_basis):
    b = tilde_basis
    left = b.sector_ids(Sector.L)
    right = b.sector_ids(Sector.R)
    assert b.k == 17
    assert len(left) == 16 and sum(q.is_diagonal for q in left) == 4
    assert [q.selector() for q in right] == ["R:4,4"]
    assert b.seed_pivots["ker_a"] == (3, 5, 6, 7)
    assert b.seed_pivots["ker_a_t"] == (4,)
    assert b.ids == tuple(sorted(b.ids))


@pytest.mark.parametrize("fixture", ["tilde", "sym_hamming", "sym_toric"])
def test_named_codes_pass_all_checks(fixture, request):
    code = request.getfixturevalue("tilde_code" if fixture == "tilde" else fixture)
    basis = canonical_basis(code)
    report = verify_symplectic(code, basis)
    assert report.passed, report.first_violation
    assert basis.k == code_params(code).k


def test_canonical_z_line_matches_kernel_vector(tilde_code, tilde_basis):
    q = LogicalQubitId(Sector.L, 3, 5)
    zs = set(tilde_code.support_coords(tilde_basis.z_ops[q].z))
    assert {c.col for c in zs} == {5}
    assert tuple(sorted(c.row for c in zs)) == tilde_basis.ker_a.vector(3).support()
    xs = set(tilde_code.support_coords(tilde_basis.x_ops[q].x))
    assert {c.row for c in xs} == {3}


@settings(max_examples=50, deadline=None)
@given(seeds, seeds)
def test_random_seed_pairs(a, b):
    code = build_hgp(BinaryMatrix(a), BinaryMatrix(b))
    basis = canonical_basis(code)
    report = verify_symplectic(code, basis)
    assert report.passed, report.first_violation


def test_report_flags_a_broken_basis(tilde_code, tilde_basis):
    q0, q1 = tilde_basis.ids[:2]
    x_ops = dict(tilde_basis.x_ops)
    x_ops[q0], x_ops[q1] = x_ops[q1], x_ops[q0]
    broken = type(tilde_basis)(tilde_code, tilde_basis.ids, x_ops, tilde_basis.z_ops,
                               tilde_basis.ker_a, tilde_basis.ker_a_t, tilde_basis.ker_b,
                               tilde_basis.ker_b_t)
    report = verify_symplectic(tilde_code, broken)
    assert not report.passed
    assert report.first_violation.startswith("overlap")


def test_ids_and_partners(sym_hamming_basis):
    q = LogicalQubitId.parse("l:6,5")
    assert q == LogicalQubitId(Sector.L, 6, 5)
    assert q.qubit_class is QubitClass.MIRROR
    assert twin_of(q) == LogicalQubitId(Sector.L, 5, 6)
    assert sibling_of(q, sym_hamming_basis) == LogicalQubitId(Sector.R, 6, 5)
    with pytest.raises(ValueError):
        twin_of(LogicalQubitId(Sector.L, 4, 4))
    with pytest.raises(ValueError):
        LogicalQubitId.parse("L3,3")


def test_sibling_requires_symmetric_code(tilde_basis):
    with pytest.raises(ValueError):
        sibling_of(LogicalQubitId(Sector.L, 3, 5), tilde_basis)


def test_symmetric_codes_pair_pivots(sym_hamming_basis, sym_toric_basis):
    for b in (sym_hamming_basis, sym_toric_basis):
        left = {(q.row, q.col) for q in b.sector_ids(Sector.L)}
        right = {(q.row, q.col) for q in b.sector_ids(Sector.R)}
        assert left == right
