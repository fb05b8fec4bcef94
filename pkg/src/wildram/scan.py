"""Batch cross-validation of the congruence classifier against the tower oracle."""

from __future__ import annotations

import csv
import io
import json
import re
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from .efg import classify_efg, matching_rows
from .errors import WildramError
from .filtration import filtration_profile
from .galois import GaloisKind, galois_class
from .oracle import inertia_fixed_class, oracle_efg_with_precision

__all__ = [
    "CSV_COLUMNS",
    "FamilySpec",
    "ScanConfig",
    "ScanRecord",
    "ScanReport",
    "parse_family",
    "run_scan",
    "scan_record",
]

CSV_COLUMNS = (
    "c", "galois", "e", "f", "g", "row_id", "oracle_e", "oracle_f", "oracle_g",
    "agree", "inertia_class", "filtration",
)

_FAMILY_RE = re.compile(
    r"^\s*(?:(?P<offset>[+-]?\d+)\s*\+\s*)?"
    r"(?P<base>\d+)\s*\^\s*\(\s*(?P<ka>\d*)\s*k\s*(?P<kb>[+-]\s*\d+)?\s*\)\s*"
    r"\*\s*\(\s*(?P<mr>\d*)\s*r\s*(?P<rr>[+-]\s*\d+)?\s*\)\s*$"
)
_RANGE_RE = re.compile(r"^\s*(?P<var>[kr])\s*=\s*(?P<lo>[+-]?\d+)\s*\.\.\s*(?P<hi>[+-]?\d+)\s*$")


@dataclass(frozen=True)
class FamilySpec:
    """``offset + base**(ka*k + kb) * (mr*r + rr)`` over inclusive ranges of k and r."""

    text: str
    offset: int
    base: int
    ka: int
    kb: int
    mr: int
    rr: int
    k_range: tuple[int, int]
    r_range: tuple[int, int]

    def values(self) -> list[int]:
        out = []
        for k in range(self.k_range[0], self.k_range[1] + 1):
            exp = self.ka * k + self.kb
            if exp < 0:
                raise ValueError(f"negative exponent for k = {k} in {self.text!r}")
            scale = self.base**exp
            for r in range(self.r_range[0], self.r_range[1] + 1):
                out.append(self.offset + scale * (self.mr * r + self.rr))
        return out


def _int(s: str | None, default: int) -> int:
    if s is None or s == "":
        return default
    return int(s.replace(" ", ""))


def parse_family(text: str) -> FamilySpec:
    """Parse ``[OFFSET+]BASE^(AK+B)*(MR+R);k=LO..HI;r=LO..HI``.

    Example: ``2^(2k+1)*(2r+1);k=1..6;r=-50..49`` enumerates
    ``2**(2k+1) * m`` for odd ``m`` in ``[-99, 99]``.
    """
    parts = text.split(";")
    m = _FAMILY_RE.match(parts[0])
    if not m:
        raise ValueError(f"cannot parse family form {parts[0]!r}")
    ranges = {}
    for p in parts[1:]:
        rm = _RANGE_RE.match(p)
        if not rm:
            raise ValueError(f"cannot parse range {p!r}")
        ranges[rm["var"]] = (int(rm["lo"]), int(rm["hi"]))
    if set(ranges) != {"k", "r"}:
        raise ValueError("a family needs both a k range and an r range")
    return FamilySpec(
        text=text,
        offset=_int(m["offset"], 0),
        base=int(m["base"]),
        ka=_int(m["ka"], 1),
        kb=_int(m["kb"], 0),
        mr=_int(m["mr"], 1),
        rr=_int(m["rr"], 0),
        k_range=ranges["k"],
        r_range=ranges["r"],
    )


@dataclass
class ScanConfig:
    lo: int
    hi: int
    families: list[FamilySpec] = field(default_factory=list)
    precision: int | None = None
    jobs: int = 1
    filtration: bool = True

    def values(self) -> list[int]:
        vals = set(range(self.lo, self.hi + 1))
        for fam in self.families:
            vals.update(fam.values())
        return sorted(vals)


@dataclass
class ScanRecord:
    c: int
    galois: str
    e: int | None = None
    f: int | None = None
    g: int | None = None
    row_id: str | None = None
    rows_matched: int = 0
    oracle_e: int | None = None
    oracle_f: int | None = None
    oracle_g: int | None = None
    precision: int | None = None
    agree: bool = False
    inertia_field: str | None = None
    decomposition_field: str | None = None
    filtration: list[int] | None = None
    error: str | None = None

    @property
    def inertia_class(self) -> str:
        if self.inertia_field is None:
            return ""
        return f"{self.inertia_field}|{self.decomposition_field}"

    def csv_row(self) -> list:
        def blank(x):
            return "" if x is None else x

        return [
            self.c, self.galois, blank(self.e), blank(self.f), blank(self.g), blank(self.row_id),
            blank(self.oracle_e), blank(self.oracle_f), blank(self.oracle_g),
            "true" if self.agree else "false", self.inertia_class,
            ";".join(map(str, self.filtration)) if self.filtration else "",
        ]


def scan_record(c: int, precision: int | None = None, filtration: bool = True) -> ScanRecord:
    """Run both engines on ``c``; errors are captured in the record."""
    gc = galois_class(c)
    rec = ScanRecord(c=c, galois=gc.kind.value)
    errors = []
    try:
        triple, row = classify_efg(c)
        rec.e, rec.f, rec.g = triple.as_tuple()
        rec.row_id = row.row_id
        rec.rows_matched = len(matching_rows(c))
    except WildramError as exc:
        errors.append(f"classifier: {type(exc).__name__}: {exc}")
        triple = None
    try:
        oracle, rec.precision = oracle_efg_with_precision(c, precision)
        rec.oracle_e, rec.oracle_f, rec.oracle_g = oracle.as_tuple()
    except WildramError as exc:
        errors.append(f"oracle: {type(exc).__name__}: {exc}")
        oracle = None
    rec.agree = triple is not None and triple == oracle
    if oracle is not None and gc.kind is GaloisKind.D4:
        try:
            info = inertia_fixed_class(c, precision, triple=oracle)
            rec.inertia_field = info["inertia_field"]
            rec.decomposition_field = info["decomposition_field"]
        except (WildramError, AssertionError, ValueError) as exc:
            errors.append(f"inertia: {type(exc).__name__}: {exc}")
    if filtration and oracle is not None and oracle.e == 8:
        try:
            rec.filtration = filtration_profile(c, precision).sizes
        except WildramError as exc:
            errors.append(f"filtration: {type(exc).__name__}: {exc}")
    if errors:
        rec.error = "; ".join(errors)
    return rec


def _scan_chunk(args) -> list[ScanRecord]:
    values, precision, filtration = args
    return [scan_record(c, precision, filtration) for c in values]


@dataclass
class ScanReport:
    records: list[ScanRecord]

    @property
    def discrepancies(self) -> list[int]:
        return [r.c for r in self.records if not r.agree]

    @property
    def errors(self) -> list[int]:
        return [r.c for r in self.records if r.error]

    @property
    def ok(self) -> bool:
        return not self.discrepancies and not self.errors

    def summary(self) -> dict:
        rows = Counter(r.row_id for r in self.records if r.row_id)
        return {
            "count": len(self.records),
            "agree": sum(r.agree for r in self.records),
            "row_counts": dict(sorted(rows.items())),
            "discrepancies": self.discrepancies,
            "errors": self.errors,
            "multi_row_matches": [r.c for r in self.records if r.rows_matched > 1],
        }

    def to_json(self) -> str:
        doc = {
            "records": [asdict(r) for r in self.records],
            "summary": self.summary(),
        }
        return json.dumps(doc, indent=1, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in self.records:
            w.writerow(r.csv_row())
        return buf.getvalue()


def run_scan(config: ScanConfig) -> ScanReport:
    """Classify every value of the configuration, in parallel when ``jobs > 1``.

    Records come back sorted by ``c`` regardless of the worker count.
    """
    values = config.values()
    if config.jobs <= 1 or len(values) < 2:
        records = _scan_chunk((values, config.precision, config.filtration))
    else:
        n_chunks = config.jobs * 8
        size = max(1, -(-len(values) // n_chunks))
        chunks = [(values[i:i + size], config.precision, config.filtration) for i in range(0, len(values), size)]
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            records = [r for part in pool.map(_scan_chunk, chunks) for r in part]
    records.sort(key=lambda r: r.c)
    return ScanReport(records)
