from fractions import Fraction
import random

import pytest
from hypothesis import given, settings, strategies as st

from wildram.dyadic import (
    INF,
    DyadicNumber,
    DyadicPolynomial,
    arith,
    int_val2,
    is_square_q2,
    newton_polygon,
    sqrt_q2,
    val2,
)
from wildram.errors import NotASquare, PrecisionExhausted
from wildram.kernels import odd_square_bitmap


def D(n, p=64):
    return DyadicNumber.from_int(n, p)


def brute_roots(x, bits):
    mask = (1 << bits) - 1
    return [w for w in range(1 << bits) if (w * w - x) & mask == 0]


def test_val2_examples():
    assert val2(D(12)) == 2
    assert val2(DyadicNumber.zero()) == INF
    assert val2(D(1 * 1 + 1)) == 1


def test_val2_of_zero_to_precision_raises():
    z = D(2, 10) - D(2, 10)
    assert z.is_zero and not z.is_exact_zero
    with pytest.raises(PrecisionExhausted):
        val2(z)


def test_arith_examples():
    s = arith(D(3, 10), D(5, 10), "add")
    assert (s.valuation, s.unit) == (3, 1)
    assert s.precision == 10
    p = arith(D(9, 10), D(9, 10), "mul")
    assert p.lift() == 81
    z = arith(D(2, 10), D(2, 10), "sub")
    assert z.precision == 10 and z.is_zero
    q = arith(D(6, 20), D(3, 20), "div")
    assert q.lift() == 2


def test_arith_precision_rules():
    a = DyadicNumber(2, 3, 10)  # 12 + O(2^10), 8 unit bits
    b = DyadicNumber(0, 5, 6)  # 5 + O(2^6), 6 unit bits
    assert (a * b).precision == 2 + 6
    assert (a + b).precision == 6
    assert (a / b).precision == 2 + 6


def test_negative_embedding_is_twos_complement():
    x = D(-1, 8)
    assert x.unit == 255
    assert x.signed_lift() == -1


def test_division_by_inexact_zero():
    with pytest.raises(PrecisionExhausted):
        D(1) / (D(4, 10) - D(4, 10))


@given(st.integers(-10**30, 10**30).filter(bool), st.integers(-10**30, 10**30).filter(bool))
def test_valuation_is_multiplicative_and_ultrametric(a, b):
    x, y = D(a, 200), D(b, 200)
    assert val2(x * y) == val2(x) + val2(y) == int_val2(a * b)
    if a + b:
        s = val2(x + y)
        assert s >= min(val2(x), val2(y))
        if val2(x) != val2(y):
            assert s == min(val2(x), val2(y))


def test_is_square_examples():
    assert is_square_q2(17)
    assert 17 in {w * w % (1 << 12) for w in range(1 << 12)}
    assert not is_square_q2(2)
    assert not is_square_q2(12)


def test_is_square_needs_three_bits():
    with pytest.raises(PrecisionExhausted):
        is_square_q2(DyadicNumber(0, 1, 2))


def test_is_square_matches_exhaustive_search():
    table = odd_square_bitmap(20)
    for x in range(1, 1 << 14, 2):
        assert is_square_q2(D(x)) == bool(table[x])


def test_sqrt_examples():
    r = sqrt_q2(9, 12)
    assert r.lift() in brute_roots(9, 12)
    assert r.lift() % 4 == 1
    assert r.signed_lift() == -3
    assert sqrt_q2(1).lift() == 1


def test_sqrt_of_nonsquare_raises():
    with pytest.raises(NotASquare):
        sqrt_q2(3)


def test_sqrt_of_33_against_series():
    r = sqrt_q2(D(33, 64))
    series = 1 + 16 - 128
    assert (r.lift() - series) % (1 << 11) == 0


def test_sqrt_random_squares():
    rng = random.Random(5)
    for _ in range(1000):
        w = rng.getrandbits(80) | 1
        k = rng.randrange(0, 20)
        x = D(w * w << (2 * k), 160)
        r = sqrt_q2(x)
        assert (r * r - x).is_zero


@pytest.mark.parametrize("v", [3, 4, 5, 6, 9])
def test_sqrt_expansion(v):
    rng = random.Random(v)
    for _ in range(50):
        x = (rng.getrandbits(30) | 1) << v
        if rng.random() < 0.5:
            x = -x
        r = sqrt_q2(D(1 + x, 200))
        main = Fraction(1) + Fraction(x, 2) - Fraction(x * x, 8)
        diff = r - DyadicNumber.from_fraction(main, 200)
        assert diff.is_zero or val2(diff) >= 3 * v - 4


def test_newton_polygon_examples():
    assert newton_polygon(DyadicPolynomial.from_ints([2, 0, 2, 0, 1], 64)).segments == ((Fraction(-1, 4), 4),)
    np3 = newton_polygon(DyadicPolynomial.from_ints([12, 0, 6, 0, 1], 64))
    assert Fraction(-1, 2) in np3.slopes
    assert newton_polygon(DyadicPolynomial.from_ints([-1, 0, 1], 64)).segments == ((Fraction(0), 2),)


def test_newton_polygon_slopes_increase():
    np = newton_polygon([D(8), D(4), D(1), D(2), D(1)])
    assert np.slopes == sorted(np.slopes)
    assert len(set(np.slopes)) == len(np.slopes)


@pytest.mark.parametrize("c", [c for c in range(-300, 301) if c not in (0, -1)])
def test_root_valuations_sum_to_constant_term(c):
    np = newton_polygon(DyadicPolynomial.from_ints([c * c + c, 0, 2 * c, 0, 1], 64))
    assert sum(np.root_valuations()) == int_val2(c * c + c)
    assert sum(length for _, length in np.segments) == 4


def test_polynomial_rejects_zero_leading_coefficient():
    with pytest.raises(ValueError):
        DyadicPolynomial((D(1), DyadicNumber.zero()))


@settings(max_examples=200)
@given(st.integers(0, 2**64), st.integers(1, 2**64))
def test_fraction_roundtrip(a, b):
    q = Fraction(a, b)
    x = DyadicNumber.from_fraction(q, 80)
    y = x * DyadicNumber.from_int(b, 80)
    diff = y - DyadicNumber.from_int(a, 80)
    assert diff.is_zero
