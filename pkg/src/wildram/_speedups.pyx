# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled scanning kernels; see ``_kernels_py`` for the reference versions."""

import array

from libc.math cimport sqrt

MAX_ANOMALIES = 1000


def odd_square_bitmap(int bits):
    cdef unsigned long long mask = (1ULL << bits) - 1
    cdef unsigned long long w, n = 1ULL << bits
    table = bytearray(n)
    cdef unsigned char[:] t = table
    w = 1
    while w < n:
        t[(w * w) & mask] = 1
        w += 2
    return table


cdef inline long long _isqrt(long long n):
    cdef long long r = <long long>sqrt(<double>n)
    while r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r


cdef inline int _val2(long long x):
    cdef int v = 0
    while not (x & 1):
        x >>= 1
        v += 1
    return v


def scan_row_matches(long long lo, long long hi, clauses, int n_rows):
    cdef Py_ssize_t n_cl = len(clauses)
    flat = array.array("q", [v for cl in clauses for v in cl] or [0])
    cdef long long[:] t = flat

    hits_arr = array.array("q", [0] * n_rows)
    cdef long long[:] hits = hits_arr
    anomalies = []
    cdef long long n_anom = 0
    cdef long long c, p, b, x, cof
    cdef int group, matched, last_row, row, kind, v
    cdef Py_ssize_t i
    c = lo
    while c <= hi:
        if c == 0:
            group = 4
            p = 0
        elif c == -1:
            group = 3
            p = -1
        else:
            group = 0
            p = c
            if c < 0:
                b = _isqrt(-c)
                if b * b == -c:
                    group = 1
                    p = b
                else:
                    b = _isqrt(-c - 1)
                    if b * b == -c - 1:
                        group = 2
                        p = b
        matched = 0
        last_row = -1
        for i in range(n_cl):
            if t[9 * i + 1] != group:
                continue
            row = <int>t[9 * i + 0]
            if row == last_row:
                continue
            kind = <int>t[9 * i + 2]
            x = t[9 * i + 3] * p - t[9 * i + 4]
            if kind == 0:
                if x != t[9 * i + 6]:
                    continue
            elif kind == 1:
                if (x & (t[9 * i + 5] - 1)) != t[9 * i + 6]:
                    continue
            else:
                if x == 0:
                    continue
                v = _val2(x)
                if v < t[9 * i + 7]:
                    continue
                if t[9 * i + 8]:
                    if (v - t[9 * i + 7]) % t[9 * i + 8]:
                        continue
                elif v != t[9 * i + 7]:
                    continue
                cof = x >> v
                if (cof & (t[9 * i + 5] - 1)) != t[9 * i + 6]:
                    continue
            hits[row] += 1
            matched += 1
            last_row = row
        if matched != 1:
            n_anom += 1
            if len(anomalies) < MAX_ANOMALIES:
                anomalies.append((c, matched))
        c += 1
    return list(hits_arr), anomalies, n_anom
