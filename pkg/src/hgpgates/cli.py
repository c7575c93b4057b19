"""Command-line interface: ``hgpgates <command> ...``; JSON goes to stdout or ``--out``."""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from importlib.resources import files
from pathlib import Path

from hgpgates.canonical import LogicalQubitId, canonical_basis, pivot_qubit, verify_symplectic
from hgpgates.f2linalg import BinaryMatrix, BitVector, MatrixFormatError, nullspace, read_matrix
from hgpgates.gates import (
    GateVerificationError,
    StabilizerFrame,
    cz_s_circuit,
    expected_cz_s,
    expected_hadamard_swap,
    expected_sibling_cz,
    hadamard_swap_circuit,
    logical_action_of,
    sibling_cz_circuit,
    verify_gate,
)
from hgpgates.hgpcode import DistanceGuardError, HgpCode, build_hgp, code_params, symmetric_square
from hgpgates.partition import (
    PartitionKind,
    diagonal_twin_partition,
    is_sector_transversal,
    partition_distance_search,
    sibling_partition,
    singleton_partition,
)
from hgpgates.pauli import Circuit, gate
from hgpgates.pieceable import (
    cnot_composite,
    injection_cz,
    render_text,
    round_robin_cz,
    round_robin_xcx,
    verify_schedule,
)

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

log = logging.getLogger("hgpgates")


class UsageError(Exception):
    pass


def _data_dir(name: str) -> Path:
    return Path(str(files("hgpgates") / "data" / name))


def builtin_seeds() -> dict[str, Path]:
    return {p.stem.replace("_", "-"): p for p in sorted(_data_dir("seeds").glob("*.txt"))}


def load_matrix(spec: str) -> BinaryMatrix:
    """Read a matrix file, or a shipped seed by name (e.g. ``hamming-tilde``)."""
    path = Path(spec)
    if path.is_file():
        return read_matrix(path)
    seeds = builtin_seeds()
    if spec in seeds:
        return read_matrix(seeds[spec])
    raise UsageError(f"no such matrix file or built-in seed: {spec!r} (built-ins: {', '.join(seeds)})")


def load_code(args) -> HgpCode:
    h = load_matrix(args.code)
    if args.symmetric_square:
        return symmetric_square(h)
    hb = load_matrix(args.hb) if args.hb else h
    return build_hgp(h, hb)


def _rate_matches(k: int, n: int, printed: str) -> bool:
    # printed rates are two-decimal truncations or roundings of k/n
    scaled = 100 * k / n
    return float(printed) in (math.floor(scaled) / 100, math.ceil(scaled) / 100, round(k / n, 2))


def cmd_params(args) -> tuple[dict, int]:
    code = load_code(args)
    params = code_params(code, compute_distance=args.distance)
    return {"params": params.to_dict()}, EXIT_OK


def cmd_table(args) -> tuple[dict, int]:
    directory = Path(args.directory) if args.directory else _data_dir("table2")
    if not directory.is_dir():
        raise UsageError(f"{directory} is not a directory")
    seeds = sorted(p for p in directory.glob("*.txt"))
    if not seeds:
        raise UsageError(f"no seed matrices (*.txt) in {directory}")
    expected_path = directory / "expected.json"
    if not expected_path.is_file():
        expected_path = _data_dir("table2") / "expected.json"
    expected = json.loads(expected_path.read_text(encoding="utf-8"))["rows"]

    rows, failures = [], 0
    for seed in seeds:
        code = symmetric_square(read_matrix(seed))
        p = code_params(code, compute_distance=True)
        got = {"n": p.n, "k": p.k, "d": p.to_dict()["d"], "w": p.max_stab_weight, "rate": round(p.rate, 2)}
        want = expected.get(seed.name)
        if want is None:
            rows.append({"file": seed.name, "computed": got, "match": None})
            continue
        mismatches = [key for key in ("n", "k", "d", "w") if got[key] != want[key]]
        if not _rate_matches(p.k, p.n, want["rate"]):
            mismatches.append("rate")
        failures += bool(mismatches)
        rows.append({"file": seed.name, "computed": got, "expected": want,
                     "match": not mismatches, "mismatches": mismatches})
    matched = sum(1 for r in rows if r["match"])
    return {"rows": rows, "matched": matched, "total": len(rows)}, EXIT_FAIL if failures else EXIT_OK


def cmd_basis(args) -> tuple[dict, int]:
    code = load_code(args)
    basis = canonical_basis(code)
    report = verify_symplectic(code, basis)
    logicals = []
    for q in basis.ids:
        logicals.append({
            "id": q.selector(),
            "class": q.qubit_class.value,
            "pivotQubit": code.qubit_index(pivot_qubit(q)),
            "x": list(basis.x_ops[q].x_support()),
            "z": list(basis.z_ops[q].z_support()),
        })
    counts = {
        "left": len(basis.sector_ids("L")),
        "right": len(basis.sector_ids("R")),
        "leftDiagonal": sum(q.is_diagonal for q in basis.sector_ids("L")),
        "rightDiagonal": sum(q.is_diagonal for q in basis.sector_ids("R")),
    }
    out = {
        "k": basis.k,
        "counts": counts,
        "seedPivots": {key: list(v) for key, v in basis.seed_pivots.items()},
        "logicals": logicals,
        "check": report.to_dict(),
    }
    return out, EXIT_OK if report.passed else EXIT_FAIL


def cmd_verify_gate(args) -> tuple[dict, int]:
    code = load_code(args)
    basis = canonical_basis(code)
    try:
        if args.gate == "hswap":
            kind = PartitionKind(args.partition)
            p = diagonal_twin_partition(code) if kind is PartitionKind.DIAGONAL_TWIN else sibling_partition(code)
            circuit = hadamard_swap_circuit(code, p)
            expected = expected_hadamard_swap(basis, kind)
        elif args.gate == "czs":
            circuit = cz_s_circuit(code)
            expected = expected_cz_s(basis)
        else:
            circuit = sibling_cz_circuit(code)
            expected = expected_sibling_cz(basis)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = {"gate": args.gate, "gateCounts": _gate_counts(circuit)}
    try:
        result = verify_gate(code, basis, circuit, expected)
    except GateVerificationError as exc:
        out.update({"passed": False, "error": str(exc), "details": exc.details})
        return out, EXIT_FAIL
    out.update(result.to_dict())
    return out, EXIT_OK


def _gate_counts(c: Circuit) -> dict[str, int]:
    counts: dict[str, int] = {}
    for g in c.gates:
        counts[g.kind] = counts.get(g.kind, 0) + 1
    return dict(sorted(counts.items()))


def _ancilla_frame(args, zeta: BitVector) -> StabilizerFrame | None:
    if args.ancilla_checks:
        h = load_matrix(args.ancilla_checks)
        if h.cols != zeta.length:
            raise UsageError("ancilla check matrix width differs from --ancilla-length")
        # self-dual CSS ancilla: pick an X logical anticommuting with ζ
        x_logical = next((v for v in nullspace(h) if v.dot(zeta)), None)
        if x_logical is None:
            raise UsageError("ancilla Z support has no anticommuting X logical in the check kernel")
        return StabilizerFrame.css(h, h, [x_logical.bits], [zeta.bits], ["ancilla"])
    if zeta.length == 1:
        return StabilizerFrame(1, (), (), ("ancilla",), (1,), (1,))
    return None


def cmd_schedule(args) -> tuple[dict | str, int]:
    code = load_code(args)
    basis = canonical_basis(code)
    try:
        qubits = [LogicalQubitId.parse(s) for s in args.qubits]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    want = 1 if args.gate == "inject" else 2
    if len(qubits) != want:
        raise UsageError(f"--gate {args.gate} takes {want} logical qubit(s)")
    try:
        if args.gate == "cz":
            s = round_robin_cz(code, basis, *qubits)
        elif args.gate == "xcx":
            s = round_robin_xcx(code, basis, *qubits)
        elif args.gate == "cnot":
            s = cnot_composite(code, basis, *qubits)
        else:
            if not args.ancilla_z:
                raise UsageError("--gate inject needs --ancilla-z")
            support = [int(t) for t in args.ancilla_z.split(",")]
            length = args.ancilla_length
            if not length and args.ancilla_checks:
                length = load_matrix(args.ancilla_checks).cols
            length = length or max(support)
            zeta = BitVector.from_support(length, support)
            s = injection_cz(code, basis, qubits[0], zeta)
    except (ValueError, KeyError) as exc:
        raise UsageError(str(exc).strip("'\"")) from None

    if args.render == "text":
        return render_text(code, s), EXIT_OK

    out = s.to_dict()
    if args.gate == "inject":
        frame = _ancilla_frame(args, zeta)
        if frame is None:
            out["verified"] = None
            out["message"] = "no ancilla checks given; schedule emitted without verification"
            return out, EXIT_OK
        full = StabilizerFrame.from_basis(basis).direct_sum(frame)
        pos = basis.position(qubits[0]) + 1
        expected = logical_action_of(Circuit(full.k, (gate("CZ", pos, full.k),)), full.labels,
                                     f"CZ {qubits[0].selector()} ancilla")
        report = verify_schedule(code, basis, s, expected, full)
    else:
        report = verify_schedule(code, basis, s)
    out.update(report.to_dict())
    return out, EXIT_OK if report.passed else EXIT_FAIL


def cmd_partition(args) -> tuple[dict, int]:
    code = load_code(args)
    kind = PartitionKind(args.kind)
    try:
        if kind is PartitionKind.DIAGONAL_TWIN:
            p = diagonal_twin_partition(code)
        elif kind is PartitionKind.SIBLING:
            p = sibling_partition(code)
        elif kind is PartitionKind.SINGLETON:
            p = singleton_partition(code)
        else:
            raise UsageError("custom partitions are available from the Python API only")
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = {
        "kind": kind.value,
        "subsets": len(p.subsets),
        "locality": p.locality,
        "sectorTransversal": is_sector_transversal(p),
        "valid": True,
    }
    if args.max_subsets:
        out["partitionDistance"] = partition_distance_search(code, p, args.max_subsets).to_dict()
    return out, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hgpgates", description=__doc__)
    parser.add_argument("--out", help="write JSON here instead of stdout")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def code_args(p, symmetric_help="build HGP_sy(HᵀH) from the matrix instead of HGP(H, H)"):
        p.add_argument("--code", required=True, help="matrix file or built-in seed name")
        p.add_argument("--hb", help="second seed for HGP(ha, hb); defaults to --code")
        p.add_argument("--symmetric-square", action="store_true", help=symmetric_help)

    p = sub.add_parser("params", help="code parameters [[n, k, d]], rate and max check weight")
    p.add_argument("seed", nargs="?", help="matrix file or built-in seed (same as --code)")
    p.add_argument("--code", help=argparse.SUPPRESS)
    p.add_argument("--hb")
    p.add_argument("--symmetric-square", action="store_true")
    p.add_argument("--distance", action="store_true", help="also compute d by enumeration")
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("table", help="recompute the shipped symmetric-code parameter table")
    p.add_argument("directory", nargs="?", help="directory of seed matrices (default: shipped fixtures)")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("basis", help="canonical logical basis and its checks")
    code_args(p)
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("verify-gate", help="verify a transversal gate and report its logical action")
    code_args(p)
    p.add_argument("--gate", required=True, choices=["hswap", "czs", "siblingcz"])
    p.add_argument("--partition", default="diagonalTwin", choices=["diagonalTwin", "sibling"],
                   help="partition for hswap")
    p.set_defaults(func=cmd_verify_gate)

    p = sub.add_parser("schedule", help="round-robin schedule for a two-qubit logical gate")
    code_args(p)
    p.add_argument("--gate", required=True, choices=["cz", "xcx", "cnot", "inject"])
    p.add_argument("--qubits", nargs="+", required=True, help="logical qubits such as L:4,4 R:5,6")
    p.add_argument("--ancilla-z", help="1-based ancilla logical Z support, e.g. 1,5,6")
    p.add_argument("--ancilla-length", type=int, help="ancilla block length")
    p.add_argument("--ancilla-checks", help="ancilla check matrix, used for both X and Z checks")
    p.add_argument("--render", choices=["json", "text"], default="json")
    p.set_defaults(func=cmd_schedule)

    p = sub.add_parser("partition", help="partition validity, locality and partition distance")
    code_args(p)
    p.add_argument("--kind", default="diagonalTwin", choices=["diagonalTwin", "sibling", "singleton"])
    p.add_argument("--max-subsets", type=int, default=0, help="search unions of up to this many subsets")
    p.set_defaults(func=cmd_partition)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    if args.command == "params":
        args.code = args.code or args.seed
        if not args.code:
            parser.error("params needs a seed matrix")
    try:
        payload, status = args.func(args)
    except UsageError as exc:
        print(f"hgpgates {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MatrixFormatError, DistanceGuardError, OSError) as exc:
        print(f"hgpgates {args.command}: {exc}", file=sys.stderr)
        return EXIT_FAIL

    if isinstance(payload, str):
        text = payload
    else:
        doc = {"schemaVersion": SCHEMA_VERSION, "command": args.command, **payload}
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if status:
        log.warning("%s reported a failure", args.command)
    return status


if __name__ == "__main__":
    sys.exit(main())
