"""Galois group and subfield lattice of the splitting field of (x^2 + c)^2 + c."""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from math import isqrt

from .errors import DegenerateC, WrongGaloisClass

__all__ = [
    "GaloisClass",
    "GaloisKind",
    "Irreducible",
    "Resolvent",
    "SubfieldLattice",
    "SubfieldNode",
    "TwoQuadratics",
    "galois_class",
    "is_square_int",
    "iterate_coefficients",
    "quartic_factorization",
    "resolvent",
    "subfield_lattice",
]


def is_square_int(n: int) -> bool:
    """Exact test for ``n`` being the square of an integer."""
    return n >= 0 and isqrt(n) ** 2 == n


def iterate_coefficients(c: int) -> tuple[int, int, int, int, int]:
    """Coefficients of ``x**4 + 2c x**2 + c**2 + c``, constant term first."""
    return (c * c + c, 0, 2 * c, 0, 1)


def _poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return tuple(out)


class GaloisKind(str, Enum):
    D4 = "D4"
    C4 = "C4"
    V4 = "V4"
    DEGENERATE_MINUS_ONE = "degenerate(-1)"
    DEGENERATE_ZERO = "degenerate(0)"


_DEGREES = {
    GaloisKind.D4: 8,
    GaloisKind.C4: 4,
    GaloisKind.V4: 4,
    GaloisKind.DEGENERATE_MINUS_ONE: 2,
    GaloisKind.DEGENERATE_ZERO: 1,
}


@dataclass(frozen=True)
class GaloisClass:
    kind: GaloisKind
    degree: int

    def __post_init__(self):
        if _DEGREES[self.kind] != self.degree:
            raise ValueError(f"{self.kind.value} has degree {_DEGREES[self.kind]}, not {self.degree}")


@dataclass(frozen=True)
class Irreducible:
    c: int


@dataclass(frozen=True)
class TwoQuadratics:
    """``(x**2 - (b**2 - b)) (x**2 - (b**2 + b))`` for ``c = -b**2``."""

    b: int

    @property
    def factors(self) -> tuple[tuple[int, int, int], tuple[int, int, int]]:
        b = self.b
        return (-(b * b - b), 0, 1), (-(b * b + b), 0, 1)

    def expand(self) -> tuple[int, ...]:
        return _poly_mul(*self.factors)


def quartic_factorization(c: int) -> Irreducible | TwoQuadratics:
    """Factorization of the second iterate over Q.

    Raises:
        DegenerateC: for ``c`` in ``{-1, 0}``.
    """
    if c in (-1, 0):
        raise DegenerateC(f"c = {c}")
    if not is_square_int(-c):
        return Irreducible(c)
    fac = TwoQuadratics(isqrt(-c))
    # neither factor has a rational root: b**2 +- b is a square only for b in {0, 1}
    b = fac.b
    if is_square_int(b * b - b) or is_square_int(b * b + b):
        raise AssertionError(f"quadratic factor splits for b = {b}")
    if fac.expand() != iterate_coefficients(c):
        raise AssertionError("factorization does not multiply out")
    return fac


@dataclass(frozen=True)
class Resolvent:
    """The resolvent cubic and its rational factorization, constant term first."""

    cubic: tuple[int, int, int, int]
    linear: tuple[int, int]
    quadratic: tuple[int, int, int]


def resolvent(c: int) -> Resolvent:
    cubic = (8 * c**3 + 8 * c**2, -(4 * c * c + 4 * c), -2 * c, 1)
    linear = (-2 * c, 1)
    quadratic = (-(4 * c * c + 4 * c), 0, 1)
    if _poly_mul(linear, quadratic) != cubic:
        raise AssertionError(f"resolvent identity fails for c = {c}")
    return Resolvent(cubic, linear, quadratic)


def galois_class(c: int) -> GaloisClass:
    if c == 0:
        kind = GaloisKind.DEGENERATE_ZERO
    elif c == -1:
        kind = GaloisKind.DEGENERATE_MINUS_ONE
    elif is_square_int(-c):
        kind = GaloisKind.V4
    elif is_square_int(-(c + 1)):
        kind = GaloisKind.C4
    else:
        kind = GaloisKind.D4
    return GaloisClass(kind, _DEGREES[kind])


@dataclass(frozen=True)
class SubfieldNode:
    """A subfield described by its generators; ``radicand`` is set for quadratics."""

    label: str
    degree: int
    generators: tuple[str, ...]
    radicand: int | None = None


@dataclass(frozen=True)
class SubfieldLattice:
    c: int
    nodes: tuple[SubfieldNode, ...]
    edges: tuple[tuple[str, str], ...]
    conjugacy: tuple[tuple[str, str], ...]

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(n.label for n in self.nodes)

    def node(self, label: str) -> SubfieldNode:
        for n in self.nodes:
            if n.label == label:
                return n
        raise KeyError(label)

    def quadratic_radicands(self) -> dict[str, int]:
        return {n.label: n.radicand for n in self.nodes if n.degree == 2}

    def contains(self, big: str, small: str) -> bool:
        """Whether ``small`` is a subfield of ``big`` (reflexive, transitive)."""
        if big == small:
            return True
        return any(s == small and self.contains(big, b) for s, b in self.edges)

    def to_dict(self) -> dict:
        return {
            "c": self.c,
            "nodes": [
                {"label": n.label, "degree": n.degree, "generators": list(n.generators), "radicand": n.radicand}
                for n in self.nodes
            ],
            "edges": [list(e) for e in self.edges],
            "conjugacy": [list(p) for p in self.conjugacy],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def subfield_lattice(c: int) -> SubfieldLattice:
    """The ten subfields of the dihedral splitting field and their containments.

    Edges are pairs ``(smaller, larger)`` of the Hasse diagram.

    Raises:
        WrongGaloisClass: unless the Galois group is dihedral of order 8.
    """
    gc = galois_class(c)
    if gc.kind is not GaloisKind.D4:
        raise WrongGaloisClass(f"c = {c} has Galois class {gc.kind.value}")
    q1, q2, q3 = "Q(sqrt(-c))", "Q(sqrt(-(c+1)))", "Q(sqrt(c^2+c))"
    qa, qb, bq, qp, qm = "Q(alpha)", "Q(beta)", "Q(sqrt(-c),sqrt(-(c+1)))", "Q(alpha+beta)", "Q(alpha-beta)"
    nodes = (
        SubfieldNode("Q", 1, ()),
        SubfieldNode(q1, 2, ("sqrt(-c)",), -c),
        SubfieldNode(q2, 2, ("sqrt(-(c+1))",), -(c + 1)),
        SubfieldNode(q3, 2, ("sqrt(c^2+c)",), c * c + c),
        SubfieldNode(qa, 4, ("alpha",)),
        SubfieldNode(qb, 4, ("beta",)),
        SubfieldNode(bq, 4, ("sqrt(-c)", "sqrt(-(c+1))")),
        SubfieldNode(qp, 4, ("alpha+beta",)),
        SubfieldNode(qm, 4, ("alpha-beta",)),
        SubfieldNode("L", 8, ("alpha", "beta")),
    )
    edges = (
        ("Q", q1), ("Q", q2), ("Q", q3),
        (q1, qa), (q1, qb), (q1, bq),
        (q2, bq),
        (q3, bq), (q3, qp), (q3, qm),
        (qa, "L"), (qb, "L"), (bq, "L"), (qp, "L"), (qm, "L"),
    )
    conjugacy = ((qa, qb), (qp, qm))
    return SubfieldLattice(c, nodes, edges, conjugacy)
