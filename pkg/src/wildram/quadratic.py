"""How 2 behaves in the quadratic fields Q(sqrt(-t))."""

from __future__ import annotations

from enum import Enum
from math import isqrt

from .dyadic import DyadicNumber, INF, int_val2, val2
from .errors import NotAQuadraticField, PrecisionExhausted
from .kernels import odd_square_bitmap

__all__ = [
    "LocalQuadratic",
    "QuadraticBehavior",
    "brute_force_quadratic",
    "classify_quadratic",
    "local_quadratic",
    "strip_fours",
]


class QuadraticBehavior(str, Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"


class LocalQuadratic(str, Enum):
    TRIVIAL = "trivial"
    UNRAMIFIED = "unramified"
    RAMIFIED = "ramified"


_LOCAL_TO_GLOBAL = {
    LocalQuadratic.TRIVIAL: QuadraticBehavior.SPLIT,
    LocalQuadratic.UNRAMIFIED: QuadraticBehavior.INERT,
    LocalQuadratic.RAMIFIED: QuadraticBehavior.RAMIFIED,
}


def to_global(kind: LocalQuadratic) -> QuadraticBehavior:
    """Split, inert, ramified correspond to trivial, unramified, ramified locally."""
    return _LOCAL_TO_GLOBAL[kind]


def strip_fours(t: int) -> tuple[int, int]:
    """Write ``t = 4**n * s`` with ``4`` not dividing ``s``; returns ``(n, s)``."""
    if t == 0:
        raise ValueError("0 has no such decomposition")
    n = int_val2(t) // 2
    return n, t >> (2 * n)


def _check_quadratic(t: int) -> None:
    if t == 0:
        raise NotAQuadraticField("t = 0")
    if t < 0 and isqrt(-t) ** 2 == -t:
        raise NotAQuadraticField(f"-t = {-t} is a perfect square")


def classify_quadratic(t: int) -> QuadraticBehavior:
    """Behavior of 2 in Q(sqrt(-t)) from the residue of ``s`` mod 8.

    Args:
        t: Nonzero integer with ``-t`` not a perfect square.

    Returns:
        SPLIT when ``s = 7 mod 8``, INERT when ``s = 3 mod 8`` and RAMIFIED
        otherwise, where ``t = 4**n * s`` with ``4`` not dividing ``s``.
    """
    _check_quadratic(t)
    _, s = strip_fours(t)
    r = s % 8
    if r == 7:
        return QuadraticBehavior.SPLIT
    if r == 3:
        return QuadraticBehavior.INERT
    return QuadraticBehavior.RAMIFIED


def local_quadratic(t) -> LocalQuadratic:
    """Kind of the extension Q_2(sqrt(-t)) / Q_2.

    ``t`` may be an int or a :class:`DyadicNumber` with at least three known
    unit bits.
    """
    if isinstance(t, int):
        if t == 0:
            raise ValueError("t must be nonzero")
        t = DyadicNumber.from_int(t, max(64, t.bit_length() + 8))
    if t.precision == INF:
        raise ValueError("t must be nonzero")
    u = -t
    v = val2(u)
    if u.precision - v < 3:
        raise PrecisionExhausted("need three unit bits of t")
    if v % 2:
        return LocalQuadratic.RAMIFIED
    r = u.unit & 7
    if r == 1:
        return LocalQuadratic.TRIVIAL
    if r == 5:
        return LocalQuadratic.UNRAMIFIED
    return LocalQuadratic.RAMIFIED


def brute_force_quadratic(t: int, bits: int) -> QuadraticBehavior:
    """Behavior of 2 in Q(sqrt(-t)) by exhaustive square search mod ``2**bits``.

    After removing ``4**n`` from ``t`` (which does not change the field), an
    odd cofactor ``s`` is compared against the table of odd squares: ``-s`` a
    square means the local extension is trivial, ``-5s`` a square means it is
    the unramified one (5 is the discriminant of ``x**2 - x - 1``, which is
    irreducible mod 2), and anything else ramifies.  An even cofactor gives a
    radicand of odd valuation, hence a ramified extension.
    """
    _check_quadratic(t)
    if bits < int_val2(t) + 6:
        raise ValueError(f"bits must be at least val2(t) + 6 = {int_val2(t) + 6}")
    _, s = strip_fours(t)
    if s % 2 == 0:
        return QuadraticBehavior.RAMIFIED
    table = odd_square_bitmap(bits)
    mask = (1 << bits) - 1
    if table[-s & mask]:
        return QuadraticBehavior.SPLIT
    if table[-5 * s & mask]:
        return QuadraticBehavior.INERT
    return QuadraticBehavior.RAMIFIED
