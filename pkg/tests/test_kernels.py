import pytest

from wildram import _kernels_py, kernels
from wildram.efg import ROWS, encode_rows


def test_backend_reported():
    assert kernels.BACKEND in ("cython", "python")


@pytest.mark.parametrize("bits", [3, 8, 12])
def test_bitmap_matches_squares(bits):
    table = kernels.odd_square_bitmap(bits)
    expected = {(w * w) % (1 << bits) for w in range(1, 1 << bits, 2)}
    assert {x for x in range(1 << bits) if table[x]} == expected


def test_backends_agree():
    pytest.importorskip("wildram._speedups")
    from wildram import _speedups

    clauses = encode_rows()
    for lo, hi in [(-5000, 5000), (10**9, 10**9 + 3000), (-(10**9) - 3000, -(10**9))]:
        assert _speedups.scan_row_matches(lo, hi, clauses, len(ROWS)) == _kernels_py.scan_row_matches(lo, hi, clauses, len(ROWS))
    assert bytes(_speedups.odd_square_bitmap(14)) == bytes(_kernels_py.odd_square_bitmap(14))


def test_fallback_for_huge_ranges():
    hits, anomalies, n = kernels.scan_row_matches(2**70, 2**70 + 50, encode_rows(), len(ROWS))
    assert n == 0 and sum(hits) == 51
