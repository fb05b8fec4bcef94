"""Acceptance suite.

Each test carries a ``criterion`` marker; ``conftest.py`` prints one
PASS/FAIL line per criterion at the end of the run.  The module can also be
run directly with ``python tests/test_acceptance.py``.
"""

import os
import random
import sys
from fractions import Fraction

import pytest

from wildram.dyadic import DyadicPolynomial, newton_polygon
from wildram.efg import ROWS, encode_rows, matching_rows
from wildram.filtration import filtration_profile, verify_structure_constants
from wildram.kernels import scan_row_matches
from wildram.quadratic import brute_force_quadratic, classify_quadratic
from wildram.scan import ScanConfig, run_scan

SCAN_RANGE = (-20000, 20000)
JOBS = os.cpu_count() or 1


def _detail(request, text):
    request.node.user_properties.append(("detail", text))
    print(text)


@pytest.fixture(scope="module")
def big_scan():
    return run_scan(ScanConfig(*SCAN_RANGE, jobs=JOBS, filtration=False))


@pytest.mark.criterion(1, "classifier agrees with oracle on [-20000, 20000]")
def test_classifier_matches_oracle_on_range(big_scan, request):
    s = big_scan.summary()
    _detail(request, f"{s['agree']}/{s['count']} agree, discrepancies {s['discrepancies'][:10]}, errors {s['errors'][:10]}")
    assert s["count"] == SCAN_RANGE[1] - SCAN_RANGE[0] + 1
    assert big_scan.ok


@pytest.mark.criterion(2, "exactly one row matches every c in [-10^6, 10^6]")
def test_exactly_one_row_matches(request):
    hits, anomalies, n_anom = scan_row_matches(-(10**6), 10**6, encode_rows(), len(ROWS))
    unmatched = [c for c, k in anomalies if k == 0]
    multi = [c for c, k in anomalies if k > 1]
    same_triple = True
    for c in multi:
        same_triple &= len({r.target for r in matching_rows(c)}) == 1
    _detail(
        request,
        f"{n_anom} anomalies: {len(unmatched)} unmatched, {len(multi)} multiply matched "
        f"(all with one common triple: {same_triple}), first {multi[:5]}",
    )
    assert n_anom == 0


@pytest.mark.criterion(3, "oracle e >= 2 for c != 0, e = 1 only at c = 0")
def test_ramification_always_occurs(big_scan, request):
    ones = [r.c for r in big_scan.records if r.oracle_e == 1]
    missing = [r.c for r in big_scan.records if r.oracle_e is None]
    _detail(request, f"e = 1 at {ones}, oracle failures {missing[:10]}")
    assert ones == [0] and not missing


@pytest.mark.criterion(4, "oracle f <= 2 and no residue degree overflow")
def test_residue_degree_bounded(big_scan, request):
    big = [r.c for r in big_scan.records if r.oracle_f is None or r.oracle_f > 2]
    overflow = [r.c for r in big_scan.records if r.error and "ResidueDegreeOverflow" in r.error]
    _detail(request, f"f > 2 or missing at {big[:10]}, overflows {overflow[:10]}")
    assert not big and not overflow


@pytest.mark.criterion(5, "quadratic behavior of 2 matches brute force on [-5000, 5000]")
def test_quadratic_rule_matches_brute_force(request):
    bad, n = [], 0
    for t in range(-5000, 5001):
        r = -t
        if t == 0 or (r >= 0 and int(r**0.5 + 0.5) ** 2 == r):
            continue
        n += 1
        if classify_quadratic(t) is not brute_force_quadratic(t, 20):
            bad.append(t)
    _detail(request, f"{n} values checked, mismatches {bad[:10]}")
    assert not bad


@pytest.mark.criterion(6, "filtration for c = 1 mod 4")
def test_filtration_one_mod_four(request):
    bad = []
    for c in (1, 5, -3, 9, 13, -7, 101):
        p = filtration_profile(c)
        ok = (
            p.sizes == [8, 8, 4, 4, 2, 2, 1]
            and set(p.group(2)) == {"sigma0", "sigma1", "sigma2", "sigma3"}
            and set(p.group(4)) == {"sigma0", "sigma3"}
        )
        if not ok:
            bad.append((c, p.sizes))
    _detail(request, f"failures {bad}")
    assert not bad


@pytest.mark.criterion(7, "filtration for c = 2^(2k+1) m")
def test_filtration_odd_power_of_two(request):
    bad = []
    for c in (8, 24, -8, 32 * 3, 128, 2**7 * 5):
        p = filtration_profile(c)
        ok = p.sizes == [8, 8, 4, 4, 2, 2, 2, 2, 1] and set(p.group(2)) == {"sigma0", "sigma3", "sigma5", "sigma6"}
        if not ok:
            bad.append((c, p.sizes))
    _detail(request, f"failures {bad}")
    assert not bad


@pytest.mark.criterion(8, "valuation constants and displacements for c = 1 mod 4")
def test_structure_constants(request):
    seen = []
    for c in (1, 5, 9, 13):
        rep = verify_structure_constants(c)
        disp = tuple(rep[f"displacement(sigma{i})"] for i in range(1, 8))
        seen.append((c, disp, rep["v_pi(alpha+beta+beta^2)"]))
    _detail(request, f"(c, displacements, v(alpha+beta+beta^2)) = {seen}")
    assert all(d == (4, 4, 6, 2, 2, 2, 2) and v == 7 for _, d, v in seen)


@pytest.mark.criterion(9, "degree-8 polynomial vanishes at pi and is Eisenstein")
def test_minimal_polynomial(request):
    bits = {}
    for c in (1, 5, 9):
        rep = verify_structure_constants(c, minpoly_bits=64)
        assert rep["eisenstein"]
        bits[c] = rep["minpoly_vanishing_bits"]
    _detail(request, f"vanishing bits {bits}")
    assert min(bits.values()) >= 64


@pytest.mark.criterion(10, "Newton polygon shapes on 1000 sampled c")
def test_newton_polygon_spot_checks(request):
    rng = random.Random(20261015)
    bad = []
    for i in range(1000):
        c = 4 * rng.randrange(-(10**9), 10**9) + (3 if i % 2 else 1)
        if c in (0, -1):
            continue
        np = newton_polygon(DyadicPolynomial.from_ints([c * c + c, 0, 2 * c, 0, 1], 128))
        if c % 4 == 3:
            ok = Fraction(-1, 2) in np.slopes
        else:
            ok = np.root_valuations() == [Fraction(1, 4)] * 4
        if not ok:
            bad.append(c)
    _detail(request, f"failures {bad[:10]}")
    assert not bad


@pytest.mark.criterion(11, "scan reports are byte-identical across worker counts")
def test_scan_is_deterministic(request):
    cfg = dict(lo=-400, hi=400, families=[])
    one = run_scan(ScanConfig(**cfg, jobs=1))
    many = run_scan(ScanConfig(**cfg, jobs=3))
    same = one.to_json() == many.to_json() and one.to_csv() == many.to_csv()
    _detail(request, f"{len(one.records)} records, identical: {same}")
    assert same


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v", "-p", "no:cacheprovider"]))
