"""Hot loops, compiled when possible.

The Cython extension ``_speedups`` is preferred.  The pure-Python versions in
``_kernels_py`` are used when the extension is missing or when the
environment variable ``WILDRAM_PURE_PYTHON`` is set to a non-empty value.
"""

from __future__ import annotations

import os
from functools import lru_cache

from . import _kernels_py

__all__ = ["BACKEND", "odd_square_bitmap", "scan_row_matches"]

_impl = _kernels_py
BACKEND = "python"
if not os.environ.get("WILDRAM_PURE_PYTHON"):
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        pass


@lru_cache(maxsize=8)
def odd_square_bitmap(bits: int) -> bytes:
    return bytes(_impl.odd_square_bitmap(bits))


def scan_row_matches(lo: int, hi: int, clauses, n_rows: int):
    """See :func:`wildram._kernels_py.scan_row_matches`."""
    if lo < -(1 << 62) or hi > (1 << 62) - 2:
        # the compiled kernel works on 64-bit integers
        return _kernels_py.scan_row_matches(lo, hi, clauses, n_rows)
    return _impl.scan_row_matches(lo, hi, clauses, n_rows)
