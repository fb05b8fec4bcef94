"""Truncated 2-adic arithmetic, squares in Q_2 and Newton polygons.

A :class:`DyadicNumber` is ``2**valuation * unit + O(2**precision)`` with an
odd ``unit`` stored reduced modulo ``2**(precision - valuation)``.  Negative
integers enter through two's-complement truncation, so ``-1`` at precision 8
has unit ``255``.

Two kinds of zero exist.  The exact zero (``valuation == precision == inf``)
only comes from an exact integer 0.  Cancellation produces a *zero to
precision* ``O(2**p)`` whose valuation is unknown; asking for it raises
:class:`~wildram.errors.PrecisionExhausted`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NotASquare, PrecisionExhausted

INF = math.inf

__all__ = [
    "INF",
    "DyadicNumber",
    "DyadicPolynomial",
    "NewtonPolygon",
    "arith",
    "int_val2",
    "is_square_q2",
    "newton_polygon",
    "sqrt_q2",
    "val2",
]


def int_val2(n: int):
    """Exponent of 2 in the integer ``n``; ``inf`` for 0."""
    if n == 0:
        return INF
    return (n & -n).bit_length() - 1


class DyadicNumber:
    """An element of Q_2 known modulo ``2**precision``.

    Instances are immutable.  Arithmetic accepts Python ints on either side;
    an int operand is treated as exact.
    """

    __slots__ = ("valuation", "unit", "precision")

    # tower code dispatches on the nesting level of an element
    level = 0

    def __init__(self, valuation, unit: int, precision):
        if valuation == INF:
            if unit != 0:
                raise ValueError("a zero must have unit 0")
        else:
            if precision <= valuation:
                raise PrecisionExhausted(
                    f"precision {precision} leaves no unit bits above valuation {valuation}"
                )
            if not unit & 1:
                raise ValueError("unit must be odd")
            unit &= (1 << (precision - valuation)) - 1
        self.valuation = valuation
        self.unit = unit
        self.precision = precision

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_int(cls, n: int, precision: int) -> DyadicNumber:
        """Embed an integer; 0 becomes the exact zero."""
        if n == 0:
            return EXACT_ZERO
        v = (n & -n).bit_length() - 1
        if v >= precision:
            return _make(INF, 0, precision)
        return _make(v, (n >> v) & ((1 << (precision - v)) - 1), precision)

    @classmethod
    def from_fraction(cls, q, precision: int) -> DyadicNumber:
        q = Fraction(q)
        num = cls.from_int(q.numerator, precision + int_val2(q.denominator))
        return num / q.denominator

    @classmethod
    def zero(cls) -> DyadicNumber:
        return EXACT_ZERO

    @classmethod
    def zero_to(cls, precision: int) -> DyadicNumber:
        """The inexact zero ``O(2**precision)``."""
        return _make(INF, 0, precision)

    # -- inspection ---------------------------------------------------------

    @property
    def is_exact_zero(self) -> bool:
        return self.precision == INF

    @property
    def is_zero(self) -> bool:
        """True for the exact zero and for zeros to precision."""
        return self.valuation == INF

    @property
    def relative_precision(self):
        if self.valuation == INF:
            return 0
        return self.precision - self.valuation

    def lift(self) -> int:
        """Integer representative in ``[0, 2**precision)``.

        Only defined for 2-adic integers (valuation >= 0).
        """
        if self.valuation == INF:
            return 0
        if self.valuation < 0:
            raise ValueError("not a 2-adic integer")
        return self.unit << self.valuation

    def signed_lift(self) -> int:
        """Representative in ``[-2**(precision-1), 2**(precision-1))``."""
        n = self.lift()
        if self.precision != INF and n >= 1 << (self.precision - 1):
            n -= 1 << self.precision
        return n

    def with_precision(self, precision) -> DyadicNumber:
        """Truncate to a lower absolute precision (never raises precision)."""
        if precision >= self.precision:
            return self
        if self.valuation >= precision:
            return _make(INF, 0, precision)
        return _make(
            self.valuation,
            self.unit & ((1 << (precision - self.valuation)) - 1),
            precision,
        )

    def __repr__(self) -> str:
        if self.precision == INF:
            return "DyadicNumber(0)"
        if self.valuation == INF:
            return f"O(2^{self.precision})"
        return f"2^{self.valuation}*{self.unit} + O(2^{self.precision})"

    def __eq__(self, other) -> bool:
        if isinstance(other, DyadicNumber):
            return (
                self.valuation == other.valuation
                and self.unit == other.unit
                and self.precision == other.precision
            )
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.valuation, self.unit, self.precision))

    # -- arithmetic ---------------------------------------------------------

    def __neg__(self) -> DyadicNumber:
        if self.valuation == INF:
            return self
        r = self.precision - self.valuation
        return _make(self.valuation, (-self.unit) & ((1 << r) - 1), self.precision)

    def __add__(self, other) -> DyadicNumber:
        if isinstance(other, int):
            if other == 0:
                return self
            if self.precision == INF:
                raise ValueError("cannot add an int to the exact zero without a precision")
            return _add(self, DyadicNumber.from_int(other, self.precision))
        if isinstance(other, DyadicNumber):
            return _add(self, other)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other) -> DyadicNumber:
        if isinstance(other, int):
            return self.__add__(-other)
        if isinstance(other, DyadicNumber):
            return _add(self, -other)
        return NotImplemented

    def __rsub__(self, other) -> DyadicNumber:
        if isinstance(other, int):
            return (-self).__add__(other)
        return NotImplemented

    def __mul__(self, other) -> DyadicNumber:
        if isinstance(other, DyadicNumber):
            return _mul(self, other)
        if isinstance(other, int):
            return _mul_int(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other) -> DyadicNumber:
        if isinstance(other, DyadicNumber):
            return _div(self, other)
        if isinstance(other, int):
            if other == 0:
                raise ZeroDivisionError("division by exact zero")
            if self.valuation == INF:
                if self.precision == INF:
                    return self
                return _make(INF, 0, self.precision - int_val2(other))
            v = (other & -other).bit_length() - 1
            odd = other >> v
            r = self.precision - self.valuation
            if odd == 1:
                return _make(self.valuation - v, self.unit, self.precision - v)
            m = (1 << r) - 1
            return _make(
                self.valuation - v,
                (self.unit * pow(odd, -1, 1 << r)) & m,
                self.precision - v,
            )
        return NotImplemented

    def __rtruediv__(self, other) -> DyadicNumber:
        if isinstance(other, int):
            if self.valuation == INF:
                if self.precision == INF:
                    raise ZeroDivisionError("division by exact zero")
                raise PrecisionExhausted("division by a zero to precision")
            r = self.precision - self.valuation
            return _div(DyadicNumber.from_int(other, r + int_val2(other) if other else r), self)
        return NotImplemented

    def __pow__(self, n: int) -> DyadicNumber:
        if n < 0:
            return 1 / (self ** (-n))
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else _mul(result, base)
            n >>= 1
            if n:
                base = _mul(base, base)
        if result is None:
            if self.precision == INF:
                raise ValueError("0**0 of the exact zero")
            return DyadicNumber.from_int(1, self.precision - min(self.valuation, 0))
        return result


EXACT_ZERO = object.__new__(DyadicNumber)
EXACT_ZERO.valuation = INF
EXACT_ZERO.unit = 0
EXACT_ZERO.precision = INF


def _make(v, u, p) -> DyadicNumber:
    # unchecked constructor for the hot paths; callers guarantee the invariants
    x = object.__new__(DyadicNumber)
    x.valuation = v
    x.unit = u
    x.precision = p
    return x


def _add(a: DyadicNumber, b: DyadicNumber) -> DyadicNumber:
    va = a.valuation
    vb = b.valuation
    if va == INF:
        if a.precision == INF:
            return b
        return b.with_precision(a.precision)
    if vb == INF:
        if b.precision == INF:
            return a
        return a.with_precision(b.precision)
    p = a.precision if a.precision < b.precision else b.precision
    if va <= vb:
        v = va
        s = a.unit + (b.unit << (vb - va))
    else:
        v = vb
        s = b.unit + (a.unit << (va - vb))
    s &= (1 << (p - v)) - 1
    if not s:
        return _make(INF, 0, p)
    t = (s & -s).bit_length() - 1
    return _make(v + t, s >> t, p)


def _mul(a: DyadicNumber, b: DyadicNumber) -> DyadicNumber:
    va = a.valuation
    vb = b.valuation
    if va == INF or vb == INF:
        if a.precision == INF or b.precision == INF:
            return EXACT_ZERO
        # O(2^p) * x = O(2^(p + v(x))); two inexact zeros multiply their bounds
        lo_a = a.precision if va == INF else va
        lo_b = b.precision if vb == INF else vb
        return _make(INF, 0, lo_a + lo_b)
    ra = a.precision - va
    rb = b.precision - vb
    r = ra if ra < rb else rb
    v = va + vb
    return _make(v, (a.unit * b.unit) & ((1 << r) - 1), v + r)


def _mul_int(a: DyadicNumber, n: int) -> DyadicNumber:
    if n == 0:
        return EXACT_ZERO
    v = (n & -n).bit_length() - 1
    if a.valuation == INF:
        if a.precision == INF:
            return a
        return _make(INF, 0, a.precision + v)
    odd = n >> v
    r = a.precision - a.valuation
    return _make(a.valuation + v, (a.unit * odd) & ((1 << r) - 1), a.precision + v)


def _div(a: DyadicNumber, b: DyadicNumber) -> DyadicNumber:
    vb = b.valuation
    if vb == INF:
        if b.precision == INF:
            raise ZeroDivisionError("division by exact zero")
        raise PrecisionExhausted("division by a zero to precision")
    va = a.valuation
    if va == INF:
        if a.precision == INF:
            return a
        return _make(INF, 0, a.precision - vb)
    ra = a.precision - va
    rb = b.precision - vb
    r = ra if ra < rb else rb
    m = (1 << r) - 1
    inv = 1 if b.unit == 1 else pow(b.unit & m, -1, 1 << r)
    v = va - vb
    return _make(v, (a.unit * inv) & m, v + r)


def val2(x) -> int | float:
    """2-adic valuation of an int or a :class:`DyadicNumber`.

    Returns ``inf`` for an exact zero and raises
    :class:`~wildram.errors.PrecisionExhausted` for a zero to precision.
    """
    if isinstance(x, int):
        return int_val2(x)
    if x.valuation == INF and x.precision != INF:
        raise PrecisionExhausted(f"valuation of {x!r} is unknown")
    return x.valuation


def arith(a: DyadicNumber, b: DyadicNumber, op: str) -> DyadicNumber:
    """Functional form of the four operations; ``op`` in add/sub/mul/div."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def _as_dyadic(x, precision=None) -> DyadicNumber:
    if isinstance(x, DyadicNumber):
        return x
    if precision is None:
        precision = max(64, abs(x).bit_length() + 8)
    return DyadicNumber.from_int(x, precision)


def is_square_q2(x) -> bool:
    """Whether ``x`` lies in ``{0} U 4**n (1 + 8 Z_2)``."""
    x = _as_dyadic(x)
    if x.precision == INF:
        return True
    v = val2(x)
    if x.precision - v < 3:
        raise PrecisionExhausted("need three unit bits to decide squareness in Q_2")
    return v % 2 == 0 and x.unit & 7 == 1


def _sqrt_unit(u: int, bits: int) -> int:
    """Root of an integer ``u = 1 mod 8`` modulo ``2**bits``, congruent to 1 mod 4."""
    # Newton w -> (w + u/w)/2 doubles the number of correct bits (minus one)
    w = 1
    k = 3  # w*w = u mod 2**k
    while k < bits + 1:
        k2 = min(2 * k - 2, bits + 1)
        m = 1 << (k2 + 1)
        w = ((w + u * pow(w, -1, m)) % m) >> 1
        k = k2
    w &= (1 << bits) - 1
    if w & 3 != 1:
        w = (-w) & ((1 << bits) - 1)
    return w


def sqrt_q2(x, target_precision=None) -> DyadicNumber:
    """Square root of a square in Q_2, on the branch whose unit is 1 mod 4.

    ``target_precision`` bounds the absolute precision of the result; by
    default the full precision supported by ``x`` is returned.
    """
    x = _as_dyadic(x)
    if not is_square_q2(x):
        raise NotASquare(f"{x!r} is not a square in Q_2")
    if x.precision == INF:
        return x
    half = x.valuation // 2
    rel = x.precision - x.valuation - 1
    if target_precision is not None:
        if target_precision <= half:
            return DyadicNumber.zero_to(target_precision)
        rel = min(rel, target_precision - half)
    w = _sqrt_unit(x.unit, rel)
    return _make(half, w, half + rel)


@dataclass(frozen=True)
class DyadicPolynomial:
    """Polynomial over Q_2; ``coefficients[i]`` multiplies ``x**i``."""

    coefficients: tuple[DyadicNumber, ...]

    def __post_init__(self):
        coeffs = tuple(self.coefficients)
        if not coeffs or coeffs[-1].is_zero:
            raise ValueError("leading coefficient must be nonzero")
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def from_ints(cls, coeffs: Iterable[int], precision: int) -> DyadicPolynomial:
        return cls(tuple(DyadicNumber.from_int(a, precision) for a in coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1


@dataclass(frozen=True)
class NewtonPolygon:
    """Segments of the lower convex hull, left to right."""

    segments: tuple[tuple[Fraction, int], ...]

    @property
    def slopes(self) -> list[Fraction]:
        return [s for s, _ in self.segments]

    def root_valuations(self) -> list[Fraction]:
        """Valuations of the nonzero roots, with multiplicity."""
        out = []
        for slope, length in self.segments:
            out.extend([-slope] * length)
        return out


def newton_polygon(p: DyadicPolynomial | Sequence) -> NewtonPolygon:
    """Lower convex hull of the points ``(i, v(a_i))``.

    Exact-zero coefficients are skipped; a zero to precision is ambiguous and
    raises :class:`~wildram.errors.PrecisionExhausted`.
    """
    coeffs = p.coefficients if isinstance(p, DyadicPolynomial) else tuple(p)
    points = []
    for i, a in enumerate(coeffs):
        if isinstance(a, int):
            if a:
                points.append((i, int_val2(a)))
            continue
        if a.precision == INF:
            continue
        points.append((i, val2(a)))
    if not points:
        raise ValueError("zero polynomial")

    hull: list[tuple[int, int]] = []
    for pt in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point unless it lies strictly below the chord
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)

    segments = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        segments.append((Fraction(y2 - y1, x2 - x1), x2 - x1))
    return NewtonPolygon(tuple(segments))
