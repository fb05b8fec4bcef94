"""Pure-Python versions of the scanning kernels.

These mirror ``_speedups.pyx`` line for line and are used when the compiled
extension is unavailable or ``WILDRAM_PURE_PYTHON`` is set.
"""

from __future__ import annotations

from math import isqrt

MAX_ANOMALIES = 1000


def odd_square_bitmap(bits: int) -> bytearray:
    """``table[x] == 1`` iff ``x`` is an odd square modulo ``2**bits``."""
    mask = (1 << bits) - 1
    table = bytearray(1 << bits)
    for w in range(1, 1 << bits, 2):
        table[(w * w) & mask] = 1
    return table


def _group_and_parameter(c: int) -> tuple[int, int]:
    if c == 0:
        return 4, 0
    if c == -1:
        return 3, -1
    if c < 0:
        b = isqrt(-c)
        if b * b == -c:
            return 1, b
        b = isqrt(-c - 1)
        if b * b == -c - 1:
            return 2, b
    return 0, c


def _clause_accepts(cl, p: int) -> bool:
    _, _, kind, sign, offset, modulus, residue, vmin, vstep = cl
    x = sign * p - offset
    if kind == 0:
        return x == residue
    if kind == 1:
        return x & (modulus - 1) == residue
    if x == 0:
        return False
    v = (x & -x).bit_length() - 1
    if v < vmin:
        return False
    if vstep:
        if (v - vmin) % vstep:
            return False
    elif v != vmin:
        return False
    return (x >> v) & (modulus - 1) == residue


def scan_row_matches(lo: int, hi: int, clauses, n_rows: int):
    """Count matching rows for every ``c`` in ``[lo, hi]``.

    Returns ``(hits, anomalies, n_anomalies)`` where ``hits[i]`` counts the
    parameters accepted by row ``i`` and ``anomalies`` lists up to
    ``MAX_ANOMALIES`` pairs ``(c, number_of_matching_rows)`` whose count is
    not exactly one.
    """
    by_group: dict[int, list] = {}
    for cl in clauses:
        by_group.setdefault(cl[1], []).append(cl)
    hits = [0] * n_rows
    anomalies = []
    n_anom = 0
    for c in range(lo, hi + 1):
        group, p = _group_and_parameter(c)
        matched = 0
        last_row = -1
        for cl in by_group.get(group, ()):
            row = cl[0]
            if row == last_row:
                continue
            if _clause_accepts(cl, p):
                hits[row] += 1
                matched += 1
                last_row = row
        if matched != 1:
            n_anom += 1
            if len(anomalies) < MAX_ANOMALIES:
                anomalies.append((c, matched))
    return hits, anomalies, n_anom
