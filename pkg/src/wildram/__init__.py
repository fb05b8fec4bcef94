"""Splitting of 2 in the splitting field of the second iterate of x^2 + c."""

from .dyadic import DyadicNumber, DyadicPolynomial, NewtonPolygon, arith, is_square_q2, newton_polygon, sqrt_q2, val2
from .efg import CongruenceFamily, classify_efg, matching_rows
from .errors import (
    DegenerateC,
    NoRowMatched,
    NotAQuadraticField,
    NotASquare,
    NotTotallyRamified,
    PrecisionExhausted,
    ResidueDegreeOverflow,
    StructureConstantMismatch,
    WildramError,
    WrongGaloisClass,
)
from .galois import GaloisClass, GaloisKind, galois_class, quartic_factorization, resolvent, subfield_lattice
from .oracle import inertia_fixed_class, oracle_efg
from .quadratic import QuadraticBehavior, brute_force_quadratic, classify_quadratic, local_quadratic
from .triple import EfgTriple

__version__ = "0.1.0"
