"""Compare the compiled and pure-Python scanning kernels.

Usage: python benchmarks/bench_kernels.py [--half-width N] [--repeat R]
"""

import argparse
import time

from wildram import _kernels_py
from wildram.efg import ROWS, encode_rows


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--half-width", type=int, default=200_000, help="scan c in [-N, N]")
    ap.add_argument("--bits", type=int, default=20, help="bitmap modulus 2**bits")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    try:
        from wildram import _speedups
    except ImportError:
        _speedups = None
        print("compiled extension not built; only the pure-Python kernels are timed")

    clauses = encode_rows()
    n = args.half_width
    cases = {
        f"scan_row_matches [-{n}, {n}]": lambda impl: impl.scan_row_matches(-n, n, clauses, len(ROWS)),
        f"odd_square_bitmap 2^{args.bits}": lambda impl: bytes(impl.odd_square_bitmap(args.bits)),
    }
    print(f"{'kernel':<34}{'python s':>10}{'cython s':>10}{'speedup':>9}")
    for name, call in cases.items():
        t_py, r_py = _best(lambda: call(_kernels_py), args.repeat)
        if _speedups is None:
            print(f"{name:<34}{t_py:>10.3f}{'-':>10}{'-':>9}")
            continue
        t_cy, r_cy = _best(lambda: call(_speedups), args.repeat)
        if r_cy != r_py:
            raise SystemExit(f"{name}: backends disagree")
        print(f"{name:<34}{t_py:>10.3f}{t_cy:>10.3f}{t_py / t_cy:>8.1f}x")


if __name__ == "__main__":
    main()
