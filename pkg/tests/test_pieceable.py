from __future__ import annotations

import itertools
from collections import Counter

import pytest

from hgpgates.canonical import LogicalQubitId, canonical_basis
from hgpgates.f2linalg import BitVector
from hgpgates.gates import StabilizerFrame, logical_action_of
from hgpgates.hgpcode import QubitCoord, Sector, symmetric_square
from hgpgates.pauli import Circuit, gate
from hgpgates.pieceable import (
    Schedule,
    Step,
    cnot_composite,
    expected_two_qubit,
    gadget_circuit,
    injection_cz,
    parallel_groups,
    render_text,
    round_robin_cz,
    round_robin_pairs,
    round_robin_xcx,
    verify_schedule,
)

from conftest import seed

Q = LogicalQubitId.parse


def _sector_transversal(code, step):
    for g in step.gates:
        sectors = {code.coord(t).sector for t in g.targets}
        if sectors != {Sector.L, Sector.R}:
            return False
    return True


@pytest.mark.parametrize("ns, nd", [(3, 4), (4, 3), (1, 1), (2, 2), (1, 5)])
def test_round_robin_union_law(ns, nd):
    src = list(range(ns))
    dst = list(range(100, 100 + nd))
    steps = round_robin_pairs(src, dst)
    assert len(steps) == max(ns, nd)
    pairs = [p for s in steps for p in s]
    assert Counter(pairs) == Counter(itertools.product(src, dst))
    for s in steps:
        assert len({a for a, _ in s}) == len(s) == len({b for _, b in s})


def test_cz_schedule_structure(sym_hamming, sym_hamming_basis):
    b = sym_hamming_basis
    ql, qr = Q("L:4,5"), Q("R:6,7")
    s = round_robin_cz(sym_hamming, b, ql, qr)
    za = b.z_ops[ql].z_support()
    zb = b.z_ops[qr].z_support()
    assert s.delta == max(len(za), len(zb))
    assert s.gate_count() == len(za) * len(zb)
    assert all(st.ec for st in s.steps)
    assert all(_sector_transversal(sym_hamming, st) for st in s.steps)
    # left ends walk the Z line of qL(4,5); right ends walk row 6 at the columns of qR's Z line
    right_cols = {sym_hamming.coord(t).col for t in zb}
    want = {frozenset((a, sym_hamming.qubit_index(QubitCoord(Sector.R, 6, c))))
            for a in za for c in right_cols}
    assert {frozenset(g.targets) for g in s.gates()} == want
    assert verify_schedule(sym_hamming, b, s).passed


def test_time_cost_on_symmetric_hamming(sym_hamming, sym_hamming_basis):
    b = sym_hamming_basis
    d_up = max(op.weight for op in b.z_ops.values())
    assert d_up == 4
    for ql, qr in itertools.product(b.sector_ids(Sector.L)[:4], b.sector_ids(Sector.R)[:4]):
        s = round_robin_cz(sym_hamming, b, ql, qr)
        assert s.time_cost.tau_units == s.delta <= d_up
    assert max(round_robin_xcx(sym_hamming, b, ql, qr).delta
               for ql in b.sector_ids(Sector.L) for qr in b.sector_ids(Sector.R)) == 4


def test_xcx_schedule_verifies(sym_hamming, sym_hamming_basis):
    s = round_robin_xcx(sym_hamming, sym_hamming_basis, Q("L:7,5"), Q("R:4,6"))
    assert all(g.kind == "XCX" for g in s.gates())
    assert all(_sector_transversal(sym_hamming, st) for st in s.steps)
    assert verify_schedule(sym_hamming, sym_hamming_basis, s).passed


def test_dropping_a_gate_breaks_verification(sym_hamming, sym_hamming_basis):
    s = round_robin_cz(sym_hamming, sym_hamming_basis, Q("L:4,4"), Q("R:5,5"))
    first = s.steps[0]
    mutated = Schedule(s.kind, s.n_qubits, (Step(first.gates[1:]),) + s.steps[1:], s.target_pairs, s.delta)
    report = verify_schedule(sym_hamming, sym_hamming_basis, mutated)
    assert not report.passed


def test_wrong_expected_action_is_reported(sym_hamming, sym_hamming_basis):
    b = sym_hamming_basis
    s = round_robin_cz(sym_hamming, b, Q("L:4,4"), Q("R:5,5"))
    report = verify_schedule(sym_hamming, b, s, expected_two_qubit(b, "XCX", Q("L:4,4"), Q("R:5,5")))
    assert not report.passed and report.first_difference is not None


def test_schedule_preconditions(tilde_code, tilde_basis, sym_hamming, sym_hamming_basis):
    with pytest.raises(ValueError):
        round_robin_cz(tilde_code, tilde_basis, Q("L:3,3"), Q("R:4,4"))
    with pytest.raises(ValueError):
        round_robin_cz(sym_hamming, sym_hamming_basis, Q("R:4,4"), Q("L:4,4"))
    with pytest.raises(KeyError):
        round_robin_cz(sym_hamming, sym_hamming_basis, Q("L:3,3"), Q("R:6,5"))
    with pytest.raises(ValueError):
        cnot_composite(sym_hamming, sym_hamming_basis, Q("L:4,4"), Q("R:4,4"))
    with pytest.raises(ValueError):
        Step((gate("CZ", 1, 2), gate("CZ", 2, 3)))


def test_cnot_identity_on_three_bare_qubits():
    legs = Circuit(3, (gate("CZ", 1, 2), gate("XCX", 2, 3), gate("CZ", 1, 2), gate("XCX", 2, 3)))
    got = logical_action_of(legs, ["c", "m", "t"])
    want = logical_action_of(Circuit(3, (gate("CNOT", 1, 3),)), ["c", "m", "t"])
    assert got.compare(want).exact


@pytest.mark.parametrize("control, target", [("L:4,4", "L:5,7"), ("R:7,6", "R:4,4"), ("L:6,6", "L:4,5")])
def test_cnot_composite_verifies(sym_hamming, sym_hamming_basis, control, target):
    s = cnot_composite(sym_hamming, sym_hamming_basis, Q(control), Q(target))
    assert len(s.target_pairs) == 4
    assert all(_sector_transversal(sym_hamming, st) for st in s.steps)
    report = verify_schedule(sym_hamming, sym_hamming_basis, s)
    assert report.passed and report.correction == {}


def test_injection_with_steane_ancilla(sym_hamming, sym_hamming_basis, h_hamming):
    b = sym_hamming_basis
    zeta = BitVector.from_support(7, [1, 5, 6])
    s = injection_cz(sym_hamming, b, Q("L:5,4"), zeta)
    za = b.z_ops[Q("L:5,4")].z_support()
    assert s.delta == max(len(za), 3)
    assert s.gate_count() == len(za) * 3
    assert {frozenset(g.targets) for g in s.gates()} == {
        frozenset((a, 98 + t)) for a in za for t in (1, 5, 6)
    }
    anc = StabilizerFrame.css(h_hamming, h_hamming, [0b1111111], [zeta.bits], ["anc"])
    frame = StabilizerFrame.from_basis(b).direct_sum(anc)
    pos = b.position(Q("L:5,4")) + 1
    want = logical_action_of(Circuit(frame.k, (gate("CZ", pos, frame.k),)), frame.labels)
    assert verify_schedule(sym_hamming, b, s, want, frame).passed


def test_injection_degenerate_ancilla(sym_hamming, sym_hamming_basis):
    b = sym_hamming_basis
    s = injection_cz(sym_hamming, b, Q("L:4,4"), BitVector.from_support(1, [1]))
    assert s.delta == len(b.z_ops[Q("L:4,4")].z_support())
    assert all(len(st.gates) == 1 for st in s.steps)
    with pytest.raises(ValueError):
        injection_cz(sym_hamming, b, Q("L:4,4"), BitVector(3, 0))


def test_gadgets():
    q = Q("L:4,4")
    assert gadget_circuit("S", q).ancilla_state == "|-i>"
    h = gadget_circuit("H", q).to_dict()
    assert h["ancillaState"] == "|+>"
    assert [s["op"] for s in h["steps"]] == ["prepareAncilla", "injectionCz", "measureX", "classicalCorrection"]
    t = gadget_circuit("T", q)
    assert not t.verified and "not verified" in t.note


def test_parallel_grouping(sym_hamming, sym_hamming_basis):
    b = sym_hamming_basis
    disjoint = [round_robin_cz(sym_hamming, b, Q(a), Q(c)) for a, c in
                [("L:4,4", "R:4,4"), ("L:5,5", "R:5,5"), ("L:6,6", "R:6,6"), ("L:7,7", "R:7,7")]]
    plan = parallel_groups(disjoint)
    assert plan.groups == ((0, 1, 2, 3),)
    merged = plan.merged[0]
    assert merged.gate_count() == sum(s.gate_count() for s in disjoint)
    shared = [round_robin_cz(sym_hamming, b, Q("L:4,4"), Q("R:4,4")),
              round_robin_cz(sym_hamming, b, Q("L:5,4"), Q("R:5,5"))]
    assert parallel_groups(shared).groups == ((0,), (1,))


def test_render_text(sym_hamming, sym_hamming_basis):
    s = round_robin_cz(sym_hamming, sym_hamming_basis, Q("L:4,4"), Q("R:5,5"))
    text = render_text(sym_hamming, s)
    assert text.count("t=") == s.delta
    assert "L:" in text and "R:" in text


def test_tilde_symmetric_square_reproduces_four_tranches(h_tilde):
    # qL(3,3) and qR(6,5) exist here, unlike on the Hamming symmetric square
    code = symmetric_square(h_tilde)
    basis = canonical_basis(code)
    s = round_robin_cz(code, basis, Q("L:3,3"), Q("R:6,5"))
    assert s.delta == 4
    assert all(_sector_transversal(code, st) for st in s.steps)
    assert verify_schedule(code, basis, s).passed


def test_toric_round_robin():
    code = symmetric_square(seed("toric"))
    basis = canonical_basis(code)
    ql, qr = basis.sector_ids(Sector.L)[0], basis.sector_ids(Sector.R)[0]
    for make in (round_robin_cz, round_robin_xcx):
        assert verify_schedule(code, basis, make(code, basis, ql, qr)).passed
