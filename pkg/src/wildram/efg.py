"""Closed-form (e, f, g) classification from congruence conditions on c.

The rows live in a single table.  Each row is a :class:`CongruenceFamily`
with a matcher that is either a plain congruence or a power form such as
``c = -1 + 4**k * (8r + 3)`` with a range on ``k``.  Matching a power form
never searches over ``k`` or ``r``: the exact power of 2 is stripped and a
single residue of the cofactor is tested.

Rows are evaluated on ``c`` itself in the dihedral case, and on ``b`` with
``c = -b**2`` (Klein) or ``c = -(b**2 + 1)`` (cyclic), with ``b >= 1``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import isqrt

from .dyadic import int_val2
from .errors import NoRowMatched, WildramError
from .galois import GaloisKind, galois_class
from .triple import EfgTriple

__all__ = [
    "Clause",
    "Congruence",
    "CongruenceFamily",
    "EfgTriple",
    "ExactValue",
    "PowerForm",
    "ROWS",
    "AmbiguousRows",
    "classify_efg",
    "dump_rows",
    "encode_rows",
    "family_parameter",
    "is_totally_ramified",
    "matching_rows",
    "row_by_id",
]


class AmbiguousRows(WildramError):
    """Rows with different triples accepted the same parameter."""


@dataclass(frozen=True)
class Clause:
    """One flattened test on ``x = sign * p - offset`` (``p`` is c or b).

    ``kind`` is ``"exact"`` (``x == residue``), ``"congruence"``
    (``x mod modulus == residue``) or ``"power"`` (``v2(x) >= vmin``,
    ``v2(x) - vmin`` divisible by ``vstep`` or equal to 0 when ``vstep`` is 0,
    and the odd cofactor ``== residue mod modulus``).  All moduli are powers
    of 2.
    """

    kind: str
    sign: int
    offset: int
    modulus: int
    residue: int
    vmin: int = 0
    vstep: int = 0

    def accepts(self, p: int) -> bool:
        x = self.sign * p - self.offset
        if self.kind == "exact":
            return x == self.residue
        if self.kind == "congruence":
            return x % self.modulus == self.residue
        if x == 0:
            return False
        v = int_val2(x)
        if v < self.vmin:
            return False
        if self.vstep:
            if (v - self.vmin) % self.vstep:
                return False
        elif v != self.vmin:
            return False
        return (x >> v) % self.modulus == self.residue


@dataclass(frozen=True)
class ExactValue:
    value: int

    def clauses(self) -> tuple[Clause, ...]:
        return (Clause("exact", 1, 0, 0, self.value),)

    def describe(self, var: str) -> str:
        return f"{var} = {self.value}"


@dataclass(frozen=True)
class Congruence:
    """``var = r mod modulus`` for some ``r`` in ``residues``; ``signed`` adds ``-var``."""

    modulus: int
    residues: tuple[int, ...]
    signed: bool = False

    def clauses(self) -> tuple[Clause, ...]:
        signs = (1, -1) if self.signed else (1,)
        return tuple(
            Clause("congruence", s, 0, self.modulus, r % self.modulus)
            for s in signs for r in self.residues
        )

    def describe(self, var: str) -> str:
        pm = "±" if self.signed else ""
        res = ", ".join(f"{pm}{r}" for r in self.residues)
        return f"{var} ≡ {res} mod {self.modulus}"


@dataclass(frozen=True)
class PowerForm:
    """``var = offset + base**(ka*k + kb) * (modulus*r + residue)`` for ``k >= kmin``.

    ``signed`` accepts ``-var`` as well, written ``±(...)``.
    """

    base: int
    ka: int
    kb: int
    kmin: int
    modulus: int
    residues: tuple[int, ...]
    offset: int = 0
    signed: bool = False

    def clauses(self) -> tuple[Clause, ...]:
        log_base = self.base.bit_length() - 1
        if 1 << log_base != self.base:
            raise ValueError("base must be a power of 2")
        signs = (1, -1) if self.signed else (1,)
        out = []
        for r in self.residues:
            r %= self.modulus
            w = int_val2(r)
            if w >= int_val2(self.modulus):
                raise ValueError(f"residue {r} does not pin the valuation mod {self.modulus}")
            for s in signs:
                out.append(Clause(
                    "power", s, self.offset,
                    self.modulus >> w, r >> w,
                    vmin=log_base * (self.ka * self.kmin + self.kb) + w,
                    vstep=log_base * self.ka,
                ))
        return tuple(out)

    def describe(self, var: str) -> str:
        exp = _linear("k", self.ka, self.kb)
        inner = " or ".join(_linear("r", self.modulus, r) for r in self.residues)
        body = f"{self.base}^({exp})*({inner})"
        if self.offset:
            body = f"{self.offset} + {body}"
        if self.signed:
            body = f"±({body})"
        return f"{var} = {body}, k ≥ {self.kmin}"


def _linear(sym: str, a: int, b: int) -> str:
    head = sym if a == 1 else f"{a}{sym}"
    if b == 0:
        return head
    return f"{head} {'+' if b > 0 else '-'} {abs(b)}"


@dataclass(frozen=True)
class CongruenceFamily:
    """One classification row: a matcher on the group's parameter and its triple."""

    row_id: str
    group: GaloisKind
    target: EfgTriple
    matcher: object
    provenance: str

    @property
    def variable(self) -> str:
        return "c" if self.group in (GaloisKind.D4, GaloisKind.DEGENERATE_MINUS_ONE, GaloisKind.DEGENERATE_ZERO) else "b"

    @property
    def description(self) -> str:
        return self.matcher.describe(self.variable)

    def accepts(self, p: int) -> bool:
        return any(cl.accepts(p) for cl in self.clauses)

    @property
    def clauses(self) -> tuple[Clause, ...]:
        return self.matcher.clauses()

    def to_dict(self) -> dict:
        return {
            "row_id": self.row_id,
            "group": self.group.value,
            "variable": self.variable,
            "condition": self.description,
            "triple": list(self.target.as_tuple()),
            "provenance": self.provenance,
        }


_D4 = "dihedral case, classification of c with -c, -(c+1) non-squares"
_V4 = "Klein case c = -b^2, classification on b"
_C4 = "cyclic case c = -(b^2+1), classification on b"
_DEG = "degenerate parameter"


def _rows() -> tuple[CongruenceFamily, ...]:
    T = EfgTriple
    D4, V4, C4 = GaloisKind.D4, GaloisKind.V4, GaloisKind.C4
    table = [
        # dihedral case
        (D4, T(8, 1, 1), [
            Congruence(4, (1,)),
            PowerForm(2, 2, 1, 1, 2, (1,)),
        ]),
        (D4, T(4, 2, 1), [
            Congruence(8, (2,)),
            Congruence(16, (3,)),
            Congruence(32, (4, 12)),
            PowerForm(4, 1, 0, 2, 8, (3, -3)),
        ]),
        (D4, T(4, 1, 2), [
            Congruence(8, (6,)),
            Congruence(32, (23, 28)),
            Congruence(128, (16,)),
            PowerForm(4, 2, 0, 2, 8, (1,)),
            PowerForm(4, 2, -1, 2, 8, (7,)),
            PowerForm(2, 1, 0, 4, 4, (1,), offset=-1),
        ]),
        (D4, T(2, 2, 2), [
            Congruence(16, (11,)),
            Congruence(64, (39, 52)),
            Congruence(256, (240,)),
            PowerForm(4, 1, 0, 1, 64, (24,), offset=-1),
            PowerForm(4, 1, 0, 2, 8, (3,), offset=-1),
            PowerForm(4, 2, -1, 2, 16, (9,)),
            PowerForm(4, 2, 0, 2, 16, (7,)),
        ]),
        (D4, T(2, 1, 4), [
            Congruence(64, (7, 20)),
            Congruence(256, (112,)),
            PowerForm(4, 1, 0, 1, 64, (-8,), offset=-1),
            PowerForm(4, 1, 0, 2, 8, (7,), offset=-1),
            PowerForm(4, 2, -1, 2, 16, (1,)),
            PowerForm(4, 2, 0, 2, 16, (15,)),
        ]),
        # Klein case, on b with c = -b^2
        (V4, T(4, 1, 1), [
            Congruence(32, (3, 7, 13), signed=True),
            Congruence(64, (15,), signed=True),
            PowerForm(4, 1, 0, 0, 4, (2,), signed=True),
            PowerForm(4, 1, 0, 2, 4, (3,), offset=1, signed=True),
            PowerForm(4, 1, 0, 2, 8, (6,), offset=1, signed=True),
        ]),
        (V4, T(2, 2, 1), [
            Congruence(32, (4, 5), signed=True),
            Congruence(64, (9,), signed=True),
            PowerForm(4, 1, 0, 2, 8, (3,), signed=True),
            PowerForm(4, 1, 0, 2, 8, (5,), offset=1, signed=True),
            PowerForm(4, 1, 0, 2, 16, (10,), offset=1, signed=True),
        ]),
        (V4, T(2, 1, 2), [
            Congruence(32, (11, 12), signed=True),
            Congruence(64, (23,), signed=True),
            PowerForm(4, 1, 0, 2, 8, (1,), signed=True),
            PowerForm(4, 1, 0, 2, 8, (1,), offset=1, signed=True),
            PowerForm(4, 1, 0, 2, 16, (2,), offset=1, signed=True),
        ]),
        # cyclic case, on b with c = -(b^2 + 1)
        (C4, T(4, 1, 1), [Congruence(2, (1,))]),
        (C4, T(2, 2, 1), [Congruence(4, (2,))]),
        (C4, T(2, 1, 2), [Congruence(4, (0,))]),
        (GaloisKind.DEGENERATE_MINUS_ONE, T(2, 1, 1), [ExactValue(-1)]),
        (GaloisKind.DEGENERATE_ZERO, T(1, 1, 1), [ExactValue(0)]),
    ]
    prov = {D4: _D4, V4: _V4, C4: _C4}
    out = []
    for group, target, matchers in table:
        for i, m in enumerate(matchers, 1):
            rid = f"{group.name}/{target.e}{target.f}{target.g}/{i}"
            out.append(CongruenceFamily(rid, group, target, m, prov.get(group, _DEG)))
    return tuple(out)


ROWS: tuple[CongruenceFamily, ...] = _rows()
_BY_ID = {r.row_id: r for r in ROWS}
_BY_GROUP: dict[GaloisKind, tuple[CongruenceFamily, ...]] = {
    g: tuple(r for r in ROWS if r.group is g) for g in GaloisKind
}


def row_by_id(row_id: str) -> CongruenceFamily:
    return _BY_ID[row_id]


def family_parameter(c: int) -> tuple[GaloisKind, int]:
    """The Galois kind of ``c`` and the parameter its rows are evaluated on."""
    kind = galois_class(c).kind
    if kind is GaloisKind.V4:
        return kind, isqrt(-c)
    if kind is GaloisKind.C4:
        return kind, isqrt(-c - 1)
    return kind, c


def matching_rows(c: int) -> list[CongruenceFamily]:
    """Every row of the applicable group that accepts ``c``."""
    kind, p = family_parameter(c)
    return [r for r in _BY_GROUP[kind] if r.accepts(p)]


def classify_efg(c: int) -> tuple[EfgTriple, CongruenceFamily]:
    """The triple for ``c`` and the first row that produced it.

    Raises:
        NoRowMatched: if no row applies (an internal inconsistency).
        AmbiguousRows: if matching rows disagree on the triple.
    """
    rows = matching_rows(c)
    if not rows:
        raise NoRowMatched(f"no classification row accepts c = {c}")
    targets = {r.target for r in rows}
    if len(targets) > 1:
        raise AmbiguousRows(f"c = {c} matches rows {[r.row_id for r in rows]} with different triples")
    return rows[0].target, rows[0]


def is_totally_ramified(c: int) -> bool:
    """``c = 1 mod 4`` or ``c = 2**(2k+1) m`` with ``k >= 1`` and ``m`` odd."""
    if c % 4 == 1:
        return True
    if c == 0:
        return False
    v = int_val2(c)
    return v >= 3 and v % 2 == 1


_GROUP_CODES = {
    GaloisKind.D4: 0,
    GaloisKind.V4: 1,
    GaloisKind.C4: 2,
    GaloisKind.DEGENERATE_MINUS_ONE: 3,
    GaloisKind.DEGENERATE_ZERO: 4,
}
_KIND_CODES = {"exact": 0, "congruence": 1, "power": 2}

#: column order of :func:`encode_rows`
CLAUSE_FIELDS = ("row", "group", "kind", "sign", "offset", "modulus", "residue", "vmin", "vstep")


def encode_rows(rows=ROWS) -> list[tuple[int, ...]]:
    """Flatten the table into integer clauses for the scanning kernels.

    Clauses of one row are contiguous, and rows of one group are contiguous.
    """
    out = []
    for i, row in enumerate(rows):
        for cl in row.clauses:
            out.append((
                i, _GROUP_CODES[row.group], _KIND_CODES[cl.kind], cl.sign, cl.offset,
                cl.modulus, cl.residue, cl.vmin, cl.vstep,
            ))
    return out


def dump_rows(fmt: str = "json") -> str:
    """Render the whole table as JSON or as a markdown table."""
    if fmt == "json":
        groups: dict[str, dict[str, list]] = {}
        for r in ROWS:
            g = groups.setdefault(r.group.value, {})
            g.setdefault(str(r.target), []).append(r.to_dict())
        return json.dumps({"groups": groups, "row_count": len(ROWS)}, indent=2, ensure_ascii=False)
    if fmt == "markdown":
        lines = [
            "| row | group | (e,f,g) | condition | provenance |",
            "|---|---|---|---|---|",
        ]
        for r in ROWS:
            lines.append(f"| {r.row_id} | {r.group.value} | {r.target} | {r.description} | {r.provenance} |")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")
