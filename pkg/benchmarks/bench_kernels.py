"""Time the compiled and pure-Python GF(2) kernels on the same inputs.

    python3 benchmarks/bench_kernels.py --repeat 5
"""
from __future__ import annotations

import argparse
import random
import statistics
import time
from importlib.resources import files

from hgpgates import _backend
from hgpgates.f2linalg import read_matrix
from hgpgates.hgpcode import symmetric_square


def _time(fn, repeat: int) -> float:
    samples = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples)


def cases(rng: random.Random):
    row9 = read_matrix(files("hgpgates") / "data" / "table2" / "row9.txt")
    code = symmetric_square(row9)
    yield f"rank Hx of row-9 code ({code.hx.rows}x{code.hx.cols})", "rank", code.hx.row_bits, code.hx.cols
    for rows, cols in ((200, 200), (500, 1000)):
        gens = [rng.getrandbits(cols) for _ in range(rows)]
        yield f"rank random {rows}x{cols}", "rank", gens, cols
    for dim, cols in ((14, 64), (18, 200)):
        gens = [rng.getrandbits(cols) for _ in range(dim)]
        yield f"min weight, span of {dim} vectors in F2^{cols}", "minweight", gens, cols


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args(argv)

    if _backend.BACKEND != "cython":
        print("compiled kernels not built; only the Python backend is available")
    backends = ["python"] + (["cython"] if _backend.BACKEND == "cython" else [])
    funcs = {"rank": _backend.rank_bits, "minweight": _backend.min_weight_span}

    print(f"{'case':48} " + " ".join(f"{b:>10}" for b in backends) + "   speedup")
    for label, kind, rows, cols in cases(random.Random(args.seed)):
        results = {b: funcs[kind](rows, cols, backend=b) for b in backends}
        if len(set(results.values())) != 1:
            raise SystemExit(f"backends disagree on {label}: {results}")
        times = {b: _time(lambda b=b: funcs[kind](rows, cols, backend=b), args.repeat) for b in backends}
        speed = f"{times['python'] / times['cython']:8.1f}x" if "cython" in times else ""
        print(f"{label:48} " + " ".join(f"{times[b] * 1e3:8.2f}ms" for b in backends) + f"  {speed}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
