"""Command-line interface: ``classify``, ``scan`` and ``dump-rows``."""

from __future__ import annotations

import argparse
import json
import os
import sys

from .efg import classify_efg, dump_rows, matching_rows
from .errors import WildramError
from .galois import GaloisKind, galois_class, subfield_lattice
from .oracle import inertia_fixed_class, oracle_efg_with_precision
from .scan import ScanConfig, parse_family, run_scan


def _env_precision() -> int | None:
    env = os.environ.get("WILDRAM_PRECISION")
    return int(env) if env else None


def cmd_classify(args) -> int:
    from .filtration import filtration_profile

    c = args.c
    precision = args.precision or _env_precision()
    gc = galois_class(c)
    out = {"c": c, "galois": gc.kind.value, "degree": gc.degree}
    triple, row = classify_efg(c)
    out["classifier"] = {"triple": list(triple.as_tuple()), "row_id": row.row_id, "condition": row.description}
    out["rows_matched"] = [r.row_id for r in matching_rows(c)]
    oracle, prec = oracle_efg_with_precision(c, precision)
    out["oracle"] = {"triple": list(oracle.as_tuple()), "precision": prec}
    out["agree"] = oracle == triple
    if gc.kind is GaloisKind.D4:
        info = inertia_fixed_class(c, precision, triple=oracle)
        out["inertia_field"] = info["inertia_field"]
        out["decomposition_field"] = info["decomposition_field"]
    if args.lattice:
        out["lattice"] = subfield_lattice(c).to_dict()
    if args.filtration:
        out["filtration"] = filtration_profile(c, precision).to_dict()

    if args.json:
        print(json.dumps(out, indent=2, sort_keys=True))
    else:
        print(f"c = {c}")
        print(f"galois group: {gc.kind.value} (degree {gc.degree})")
        print(f"classifier (e,f,g) = {triple}  row {row.row_id}: {row.description}")
        print(f"oracle     (e,f,g) = {oracle}  precision {prec}")
        print(f"agree: {out['agree']}")
        if "inertia_field" in out:
            print(f"inertia field: {out['inertia_field']}  decomposition field: {out['decomposition_field']}")
        if args.lattice:
            print("lattice:")
            print(subfield_lattice(c).to_json())
        if args.filtration:
            prof = out["filtration"]
            print(f"filtration sizes: {prof['sizes']}")
            for i, g in enumerate(prof["groups"]):
                print(f"  G_{i} = {{{', '.join(g)}}}")
    return 0 if out["agree"] else 1


def cmd_scan(args) -> int:
    config = ScanConfig(
        lo=args.lo,
        hi=args.hi,
        families=[parse_family(f) for f in args.family],
        precision=args.precision or _env_precision(),
        jobs=args.jobs,
        filtration=not args.no_filtration,
    )
    report = run_scan(config)
    text = report.to_json() if args.format == "json" else report.to_csv()
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    s = report.summary()
    print(
        f"scanned {s['count']} values: {s['agree']} agree, "
        f"{len(s['discrepancies'])} discrepancies, {len(s['errors'])} errors",
        file=sys.stderr,
    )
    return 0 if report.ok else 1


def cmd_dump_rows(args) -> int:
    sys.stdout.write(dump_rows(args.format))
    if args.format == "json":
        sys.stdout.write("\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wildram",
        description="Factorization of 2 in the splitting field of (x^2 + c)^2 + c.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify a single c")
    p.add_argument("c", type=int)
    p.add_argument("--lattice", action="store_true", help="print the subfield lattice (dihedral case)")
    p.add_argument("--filtration", action="store_true", help="ramification groups (totally ramified c)")
    p.add_argument("--precision", type=int, default=None, help="starting precision in bits")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("scan", help="cross-validate classifier and oracle over a range")
    p.add_argument("--from", dest="lo", type=int, required=True)
    p.add_argument("--to", dest="hi", type=int, required=True)
    p.add_argument("--family", action="append", default=[], metavar="SPEC",
                   help="extra values, e.g. '2^(2k+1)*(2r+1);k=1..6;r=-50..49'")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--precision", type=int, default=None)
    p.add_argument("--no-filtration", action="store_true", help="skip filtration profiles")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("dump-rows", help="print the classification table")
    p.add_argument("--format", choices=("json", "markdown"), default="json")
    p.set_defaults(func=cmd_dump_rows)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (WildramError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
