"""Compare the compiled kernels with the pure-Python fallback.

Each backend runs in its own interpreter (``CARDZKP_PURE_PYTHON`` picks the
fallback), so module-level selection is exercised exactly as in normal use.

    python benchmarks/bench_kernels.py [--repeat 5]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, timeit
import numpy as np
from pathlib import Path

from cardzkp import kernels
from cardzkp.numberlink import parse_filling, parse_puzzle, generate_puzzle
from cardzkp.oracle import brute_force_numberlink
from cardzkp.protocol import Variant, run_numberlink
from cardzkp.rng import PermutationSource

repeat = int(sys.argv[1])
data = Path(sys.argv[2])
rng = np.random.default_rng(0)
a, b = 6, 8
grid = rng.permutation((a + 1) * (b + 1)).astype(np.int32).reshape(a + 1, b + 1)
up = np.zeros(grid.size, dtype=np.uint8)
kind = rng.integers(0, 3, grid.size).astype(np.int8)
p, q = rng.permutation(a - 1).tolist(), rng.permutation(b).tolist()

def matrix_ops():
    kernels.permute_lines(grid, p, q)
    kernels.set_orientation(grid, up, 1, a + 1, 1, b + 1, 1)
    kernels.count_face_up(grid, up)
    kernels.heart_positions(grid, kind, 1, a + 1, 1, b + 1)
    kernels.set_orientation(grid, up, 1, a + 1, 1, b + 1, 0)

four_pairs = parse_puzzle((data / "four_pairs.puzzle").read_text())
four_pairs_fill = parse_filling((data / "four_pairs.filling").read_text())
seeds = iter(range(10**9))

def protocol_run():
    run_numberlink(four_pairs, four_pairs_fill, Variant.GENERAL, PermutationSource(next(seeds)), keep_sealed=False)

puzzle, _ = generate_puzzle(5, 5, 2, PermutationSource("bench"))

def solve():
    brute_force_numberlink(puzzle, override=True)

cases = {"matrix ops x1000": (matrix_ops, 1000), "5x5 general run x20": (protocol_run, 20),
         "5x5 brute force x5": (solve, 5)}
out = {"backend": kernels.BACKEND}
for name, (fn, number) in cases.items():
    out[name] = min(timeit.repeat(fn, number=number, repeat=repeat))
print(json.dumps(out))
"""


def measure(pure: bool, repeat: int) -> dict:
    env = dict(os.environ)
    env.pop("CARDZKP_PURE_PYTHON", None)
    if pure:
        env["CARDZKP_PURE_PYTHON"] = "1"
    data = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "tests", "data")
    res = subprocess.run([sys.executable, "-c", WORKER, str(repeat), data], env=env,
                         capture_output=True, text=True)
    if res.returncode:
        raise SystemExit(res.stderr)
    return json.loads(res.stdout)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    compiled = measure(False, args.repeat)
    pure = measure(True, args.repeat)
    if compiled["backend"] != "cython":
        print("compiled extension not available; both rows use the fallback")
    print(f"{'benchmark':<24}{compiled['backend']:>12}{'python':>12}{'speedup':>10}")
    for key in compiled:
        if key == "backend":
            continue
        c, p = compiled[key], pure[key]
        print(f"{key:<24}{c * 1e3:>10.1f}ms{p * 1e3:>10.1f}ms{p / c:>9.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
