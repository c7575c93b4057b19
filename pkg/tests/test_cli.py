from __future__ import annotations

import json
import shutil

import pytest

from hgpgates.cli import main

from conftest import SEEDS, TABLE_DIR


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_params_symmetric_hamming(capsys):
    code, out, _ = run(capsys, "params", "hamming", "--symmetric-square", "--distance")
    assert code == 0
    doc = json.loads(out)
    assert doc["schemaVersion"] == 1
    assert doc["params"] == {"n": 98, "k": 32, "d": 3, "rate": 0.33, "maxStabWeight": 8}


def test_params_row9_seed(capsys):
    code, out, _ = run(capsys, "params", str(TABLE_DIR / "row9.txt"), "--symmetric-square", "--distance")
    assert code == 0
    p = json.loads(out)["params"]
    assert (p["n"], p["k"], p["d"], p["maxStabWeight"], p["rate"]) == (722, 32, 9, 16, 0.04)


def test_table_all_rows_match(capsys):
    code, out, _ = run(capsys, "table")
    doc = json.loads(out)
    assert code == 0
    assert doc["matched"] == doc["total"] == 9


def test_table_detects_a_flipped_bit(tmp_path, capsys):
    for p in TABLE_DIR.iterdir():
        shutil.copy(p, tmp_path / p.name)
    target = tmp_path / "row1.txt"
    lines = target.read_text().splitlines()
    first = lines[1].split()
    first[0] = "1" if first[0] == "0" else "0"
    lines[1] = " ".join(first)
    target.write_text("\n".join(lines) + "\n")
    code, out, _ = run(capsys, "table", str(tmp_path))
    doc = json.loads(out)
    assert code == 1
    bad = [r for r in doc["rows"] if not r["match"]]
    assert [r["file"] for r in bad] == ["row1.txt"]
    assert bad[0]["mismatches"]


def test_table_empty_directory_is_a_usage_error(tmp_path, capsys):
    code, _, err = run(capsys, "table", str(tmp_path))
    assert code == 2
    assert "no seed matrices" in err


def test_basis_tilde(capsys):
    code, out, _ = run(capsys, "basis", "--code", "hamming-tilde")
    doc = json.loads(out)
    assert code == 0 and doc["k"] == 17
    assert doc["counts"] == {"left": 16, "leftDiagonal": 4, "right": 1, "rightDiagonal": 1}
    assert doc["seedPivots"]["ker_a"] == [3, 5, 6, 7]
    assert doc["check"]["passed"]


@pytest.mark.parametrize("argv", [
    ("--code", "hamming-tilde", "--gate", "czs"),
    ("--code", "hamming-tilde", "--gate", "hswap"),
    ("--code", "hamming", "--symmetric-square", "--gate", "hswap", "--partition", "sibling"),
    ("--code", "hamming", "--symmetric-square", "--gate", "siblingcz"),
])
def test_verify_gate_passes(capsys, argv):
    code, out, _ = run(capsys, "verify-gate", *argv)
    assert code == 0
    assert json.loads(out)["passed"]


def test_verify_gate_precondition_failure(capsys):
    code, _, err = run(capsys, "verify-gate", "--code", "hamming-tilde", "--gate", "siblingcz")
    assert code == 2 and "symmetric" in err


def test_schedule_json_and_text(capsys):
    code, out, _ = run(capsys, "schedule", "--code", "hamming-tilde", "--symmetric-square",
                       "--gate", "cz", "--qubits", "L:3,3", "R:6,5")
    doc = json.loads(out)
    assert code == 0 and doc["verified"] and doc["delta"] == 4 and len(doc["steps"]) == 4
    assert doc["timeCostTau"] == 4
    code, out, _ = run(capsys, "schedule", "--code", "hamming-tilde", "--symmetric-square",
                       "--gate", "cz", "--qubits", "L:3,3", "R:6,5", "--render", "text")
    assert code == 0 and out.count("t=") == 4


def test_schedule_missing_qubit_is_a_usage_error(capsys):
    code, _, err = run(capsys, "schedule", "--code", "hamming", "--symmetric-square",
                       "--gate", "cz", "--qubits", "L:3,3", "R:6,5")
    assert code == 2 and "not a logical qubit" in err


def test_schedule_inject_and_cnot(capsys):
    code, out, _ = run(capsys, "schedule", "--code", "hamming", "--symmetric-square", "--gate", "inject",
                       "--qubits", "L:4,4", "--ancilla-z", "1,5,6", "--ancilla-checks", "hamming")
    assert code == 0 and json.loads(out)["verified"]
    code, out, _ = run(capsys, "schedule", "--code", "hamming", "--symmetric-square", "--gate", "cnot",
                       "--qubits", "L:4,4", "L:5,7")
    assert code == 0 and json.loads(out)["verified"]


def test_partition_command(capsys):
    code, out, _ = run(capsys, "partition", "--code", "toric", "--symmetric-square", "--kind", "sibling",
                       "--max-subsets", "3")
    doc = json.loads(out)
    assert code == 0 and doc["partitionDistance"]["value"] == 3 and doc["sectorTransversal"]


def test_output_is_deterministic_and_out_file(tmp_path, capsys):
    argv = ["basis", "--code", str(SEEDS / "toric.txt"), "--symmetric-square"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    target = tmp_path / "basis.json"
    assert main(["--out", str(target), *argv]) == 0
    assert target.read_text() == first


def test_bad_matrix_file(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("2 2\n1 0\n")
    code, _, err = run(capsys, "params", str(bad))
    assert code == 1 and "rows" in err
    code, _, err = run(capsys, "params", "no-such-seed")
    assert code == 2
