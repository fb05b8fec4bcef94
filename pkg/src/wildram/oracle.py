"""Constructive (e, f, g) for 2 in the splitting field, from 2-adic towers.

Nothing here consults the congruence tables.  The local splitting field is
built as a tower of quadratic extensions of Q_2, and e and f are read off the
step kinds; g follows from the global degree because the extension is Galois.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .dyadic import DyadicNumber, int_val2
from .errors import PrecisionExhausted, WrongGaloisClass
from .galois import GaloisKind, galois_class, subfield_lattice
from .quadratic import QuadraticBehavior, classify_quadratic
from .tower import StepKind, TowerField, _div, _mul
from .triple import EfgTriple

__all__ = [
    "EfgTriple",
    "LocalSplitting",
    "MAX_PRECISION",
    "build_splitting_tower",
    "default_precision",
    "inertia_fixed_class",
    "oracle_efg",
    "with_escalation",
]

MAX_PRECISION = 1 << 16


def default_precision(c: int) -> int:
    """Starting absolute precision in bits for the computations attached to ``c``."""
    env = os.environ.get("WILDRAM_PRECISION")
    base = int(env) if env else 64
    v0 = int_val2(c) if c else 0
    v1 = int_val2(c + 1) if c != -1 else 0
    return max(base, 8 * (v0 + v1) + 48)


def with_escalation(fn, c: int, precision: int | None = None):
    """Call ``fn(c, precision)``, doubling the precision on PrecisionExhausted.

    Returns ``(result, precision_used)``.
    """
    prec = precision or default_precision(c)
    while True:
        try:
            return fn(c, prec), prec
        except PrecisionExhausted:
            if prec >= MAX_PRECISION:
                raise
            prec = min(2 * prec, MAX_PRECISION)


@dataclass
class LocalSplitting:
    """The local splitting field with concrete roots.

    ``s`` is a square root of ``-c``, ``t`` of ``-(c+1)``; ``alpha`` and
    ``beta`` are roots of the quartic with ``alpha**2 = -c + s`` and
    ``beta**2 = -c - s``.  ``kinds`` lists the step kinds in tower order.
    """

    c: int
    field: TowerField
    s: object
    alpha: object
    t: object
    beta: object
    kinds: tuple[StepKind, ...]


def build_splitting_tower(c: int, precision: int) -> LocalSplitting:
    """Build Q_2(sqrt(-c), alpha, sqrt(-(c+1))) for ``c`` outside {-1, 0}."""
    if c in (-1, 0):
        raise ValueError("the quartic degenerates for c in {-1, 0}")
    F = TowerField.base(precision)
    kinds = []
    F, k, s = F.extend_by_sqrt(-c)
    kinds.append(k)
    F, k, alpha = F.extend_by_sqrt(_add_int(s, -c, precision))
    kinds.append(k)
    F, k, t = F.extend_by_sqrt(-(c + 1))
    kinds.append(k)
    # alpha*beta = s*t, and v(alpha) is finite since alpha**2 = -c + s != 0
    beta = _div(_mul(s, t), alpha)
    return LocalSplitting(c, F, s, alpha, t, beta, tuple(kinds))


def _add_int(x, n: int, precision: int):
    return x + DyadicNumber.from_int(n, precision) if n else x


def _oracle_at(c: int, precision: int) -> tuple[int, int]:
    gc = galois_class(c)
    if gc.kind is GaloisKind.DEGENERATE_ZERO:
        return 1, 1
    if gc.kind is GaloisKind.DEGENERATE_MINUS_ONE:
        F, _, _ = TowerField.base(precision).extend_by_sqrt(2)
        return F.e, F.f
    if gc.kind is GaloisKind.V4:
        b = _isqrt_exact(-c)
        F = TowerField.base(precision)
        F, _, _ = F.extend_by_sqrt(b * b - b)
        F, _, _ = F.extend_by_sqrt(b * b + b)
        return F.e, F.f
    loc = build_splitting_tower(c, precision)
    return loc.field.e, loc.field.f


def _isqrt_exact(n: int) -> int:
    from math import isqrt

    r = isqrt(n)
    if r * r != n:
        raise ValueError(f"{n} is not a perfect square")
    return r


def oracle_efg(c: int, precision: int | None = None) -> EfgTriple:
    """(e, f, g) for 2 in the splitting field of ``(x**2 + c)**2 + c``."""
    triple, _ = oracle_efg_with_precision(c, precision)
    return triple


def oracle_efg_with_precision(c: int, precision: int | None = None) -> tuple[EfgTriple, int]:
    """Like :func:`oracle_efg` but also reports the final precision used."""
    (e, f), prec = with_escalation(_oracle_at, c, precision)
    degree = galois_class(c).degree
    return EfgTriple(e, f, degree // (e * f)), prec


def inertia_fixed_class(c: int, precision: int | None = None, triple: EfgTriple | None = None) -> dict:
    """Inertia and decomposition fields of a prime above 2, as lattice node ids.

    The decision uses the oracle triple together with the behavior of 2 in
    the three quadratic subfields: the inertia field is the largest
    subfield in which 2 is unramified, the decomposition field the largest
    one in which some prime above 2 has e = f = 1.  When the inertia field is
    a non-normal quartic, the label names one member of the conjugate pair
    (it depends on the chosen prime above 2).

    Args:
        c: Parameter with dihedral Galois group.
        precision: Starting precision for the oracle.
        triple: A precomputed oracle triple, to avoid rebuilding the tower.
    """
    gc = galois_class(c)
    if gc.kind is not GaloisKind.D4:
        raise WrongGaloisClass(f"inertia classes are tabulated for the dihedral case, not {gc.kind.value}")
    if triple is None:
        triple = oracle_efg(c, precision)
    lattice = subfield_lattice(c)
    # behavior of 2 in Q(sqrt(-c)), Q(sqrt(-(c+1))), Q(sqrt(c**2 + c))
    quad = {
        "Q(sqrt(-c))": classify_quadratic(c),
        "Q(sqrt(-(c+1)))": classify_quadratic(c + 1),
        "Q(sqrt(c^2+c))": classify_quadratic(-(c * c + c)),
    }
    unram = [n for n, q in quad.items() if q is not QuadraticBehavior.RAMIFIED]
    split = [n for n, q in quad.items() if q is QuadraticBehavior.SPLIT]
    e, f, g = triple.as_tuple()

    if e == 8:
        inertia = decomposition = "Q"
    elif e == 4:
        # inertia field has degree 2 and is the unramified quadratic
        (inertia,) = unram
        decomposition = "Q" if f == 2 else inertia
    elif e == 2:
        inertia = _quartic_containing(unram)
        if f == 1:
            decomposition = inertia
        else:
            (decomposition,) = split
    else:
        raise AssertionError(f"e = {e} is impossible in the dihedral case")
    if inertia not in lattice.labels or decomposition not in lattice.labels:
        raise AssertionError("inertia data outside the lattice")
    return {
        "c": c,
        "triple": triple.as_tuple(),
        "inertia_field": inertia,
        "decomposition_field": decomposition,
        "quadratic_behavior": {k: v.value for k, v in quad.items()},
    }


def _quartic_containing(unram: list[str]) -> str:
    """The quartic node whose quadratic subfields include every unramified one."""
    if len(unram) == 3:
        return "Q(sqrt(-c),sqrt(-(c+1)))"
    if unram == ["Q(sqrt(-c))"]:
        return "Q(alpha)"
    if unram == ["Q(sqrt(c^2+c))"]:
        return "Q(alpha+beta)"
    raise AssertionError(f"no quartic node fits the unramified set {unram}")
